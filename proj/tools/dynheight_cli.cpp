#include "dynheight/enumeration.hpp"
#include "dynheight/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace dynheight;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitPcf = 0;
constexpr int kExitNotPcf = 1;
constexpr int kExitParseError = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitStrictFailure = 4;

mpfr_prec_t default_precision() {
    if (const char* env = std::getenv("DYNHEIGHT_PRECISION")) {
        long v = std::atol(env);
        if (v >= 16) return static_cast<mpfr_prec_t>(v);
    }
    return 128;
}

std::string show(const DyadicInterval& x, bool exact) {
    return exact ? x.to_exact() : x.to_decimal();
}

// FNV-1a over the canonical config text; names the run directory.
std::string config_digest(const std::string& text) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return std::string(buf, 16);
}

std::string canonical_config_text(const EnumerationConfig& c, int degree) {
    std::ostringstream out;
    out << "degree=" << degree << "\nn_arch=" << c.n_arch << "\nn_padic=" << c.n_padic
        << "\nprecision=" << c.precision << "\nprimes=";
    for (size_t i = 0; i < c.primes.size(); ++i)
        out << (i ? "," : "") << c.primes[i];
    out << "\nstrict=" << (c.strict ? 1 : 0) << "\n";
    return out.str();
}

void apply_config_file(const std::string& path, EnumerationConfig& c) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        size_t eq = line.find('=');
        if (eq == std::string::npos || line.empty() || line[0] == '#') continue;
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        auto strip = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        key = strip(key);
        value = strip(value);
        if (key == "n_arch") c.n_arch = std::stoi(value);
        else if (key == "n_padic") c.n_padic = std::stoi(value);
        else if (key == "precision") c.precision = std::stol(value);
        else if (key == "strict") c.strict = (value == "1" || value == "true");
        else if (key == "workers") c.workers = std::stoi(value);
        else if (key == "primes") {
            c.primes.clear();
            std::istringstream ps(value);
            std::string tok;
            while (std::getline(ps, tok, ',')) c.primes.push_back(std::stoul(tok));
        } else {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
}

int run_height(const std::string& poly, const std::string& point, bool verbose, bool exact,
               mpfr_prec_t precision, int max_iter) {
    PolySpec F = parse_polynomial(poly);
    QuadExt z = parse_point(point);
    HeightBudget budget;
    budget.precision = precision;
    budget.max_iterations = max_iter;
    HeightResult h = canonical_height(F, z, budget);
    if (verbose) {
        json places = json::array();
        LocalHeightEstimate arch = local_canonical_height(F, z, Place::inf(), budget);
        places.push_back({{"place", "inf"},
                          {"lo", arch.value.lo_d()},
                          {"hi", arch.value.hi_d()},
                          {"iterations", arch.iterations_used}});
        for (unsigned long p : relevant_primes(F, z)) {
            LocalHeightEstimate est = local_canonical_height(F, z, Place::prime(p), budget);
            places.push_back({{"place", std::to_string(p)},
                              {"lo", est.value.lo_d()},
                              {"hi", est.value.hi_d()},
                              {"iterations", est.iterations_used}});
        }
        json j{{"poly", F.to_string()},
               {"point", z.to_string()},
               {"height", show(h.value, exact)},
               {"decided", h.decided},
               {"places", places}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << show(h.value, exact) << "\n";
    }
    return h.decided ? kExitPcf : kExitUndecided;
}

int verdict_exit(VerdictKind k) {
    switch (k) {
        case VerdictKind::Pcf: return kExitPcf;
        case VerdictKind::NotPcf: return kExitNotPcf;
        default: return kExitUndecided;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact canonical/critical heights and PCF certification for "
                 "polynomials over Q"};
    app.require_subcommand(1);

    mpfr_prec_t precision = default_precision();
    bool exact = false;
    app.add_option("--precision", precision, "Working precision in bits");
    app.add_flag("--exact", exact, "Print dyadic interval endpoints");

    // height
    auto* cmd_height = app.add_subcommand("height", "Canonical height of a point");
    std::string poly_arg, point_arg;
    bool verbose = false;
    int max_iter = 64;
    cmd_height->add_option("poly", poly_arg, "Polynomial, e.g. \"z^3 - 3*z\" or \"1,0,-3,0\"")
        ->required();
    cmd_height->add_option("point", point_arg, "Point, e.g. \"1/2\" or \"1+2*sqrt(-1)\"")
        ->required();
    cmd_height->add_flag("--verbose", verbose, "Per-place breakdown");
    cmd_height->add_option("--max-iterations", max_iter, "Orbit iteration budget");

    // certify
    auto* cmd_certify = app.add_subcommand("certify", "PCF certification");
    std::vector<std::string> cubic_args;
    std::string quadratic_arg, poly_opt;
    cmd_certify->add_option("--cubic", cubic_args, "A B for z^3 + A*z + B")->expected(2);
    cmd_certify->add_option("--quadratic", quadratic_arg, "c for z^2 + c");
    cmd_certify->add_option("--poly", poly_opt, "Arbitrary polynomial spec");

    // enumerate
    auto* cmd_enumerate = app.add_subcommand("enumerate", "PCF enumeration pipelines");
    int degree = 3;
    EnumerationConfig config;
    std::string out_dir = "runs", config_file;
    cmd_enumerate->add_option("--degree", degree, "2 or 3")->check(CLI::IsMember({2, 3}));
    cmd_enumerate->add_option("--n-arch", config.n_arch, "Archimedean sieve depth");
    cmd_enumerate->add_option("--n-padic", config.n_padic, "p-adic sieve depth");
    cmd_enumerate->add_option("--workers", config.workers, "Worker threads (0 = auto)");
    cmd_enumerate->add_option("--out", out_dir, "Output directory root");
    cmd_enumerate->add_option("--config", config_file, "key=value config file");
    cmd_enumerate->add_flag("--strict,!--no-strict", config.strict,
                            "Fail on Undecided survivors");

    // family-scan
    auto* cmd_family = app.add_subcommand("family-scan", "Critical/monic-centred ratios");
    std::string family_name = "unicritical", c_list, family_out;
    int family_degree = 3;
    cmd_family->add_option("--family", family_name,
                           "unicritical | superattracting-zero")
        ->check(CLI::IsMember({"unicritical", "superattracting-zero"}));
    cmd_family->add_option("--degree", family_degree, "Family degree d >= 2");
    cmd_family->add_option("--c-list", c_list, "Comma-separated rational c values");
    cmd_family->add_option("--out", family_out, "CSV output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_height)
            return run_height(poly_arg, point_arg, verbose, exact, precision, max_iter);

        if (*cmd_certify) {
            HeightBudget budget;
            budget.precision = precision;
            PcfVerdict v;
            std::string out;
            if (!cubic_args.empty()) {
                mpq_class A = parse_rational(cubic_args[0]);
                mpq_class B = parse_rational(cubic_args[1]);
                PolySpec F({B, A, mpq_class(0), mpq_class(1)});
                v = certify_pcf(F, budget);
                out = verdict_json(A, B, v);
            } else if (!quadratic_arg.empty()) {
                mpq_class c = parse_rational(quadratic_arg);
                PolySpec F({c, mpq_class(0), mpq_class(1)});
                v = certify_pcf(F, budget);
                out = verdict_json(F, v);
            } else if (!poly_opt.empty()) {
                PolySpec F = parse_polynomial(poly_opt);
                v = certify_pcf(F, budget);
                out = verdict_json(F, v);
            } else {
                std::cerr << "certify: one of --cubic, --quadratic, --poly required\n";
                return kExitParseError;
            }
            std::cout << out << "\n";
            return verdict_exit(v.kind);
        }

        if (*cmd_enumerate) {
            if (!config_file.empty()) apply_config_file(config_file, config);
            config.precision = precision;
            std::string cfg_text = canonical_config_text(config, degree);
            fs::path run_dir = fs::path(out_dir) / ("run-" + config_digest(cfg_text));
            fs::create_directories(run_dir);
            std::ofstream(run_dir / "config.txt") << cfg_text;
            if (degree == 2) {
                auto cs = enumerate_pcf_quadratics();
                json j{{"degree", 2}, {"pcf_c", json::array()}};
                for (const auto& c : cs) j["pcf_c"].push_back(c.get_str());
                std::ofstream(run_dir / "summary.json") << j.dump(2) << "\n";
                std::cout << j.dump(2) << "\n";
                return kExitPcf;
            }
            EnumerationResult res = enumerate_pcf_cubics(config);
            std::ofstream(run_dir / "candidates.csv") << enumeration_csv(res);
            std::string summary = enumeration_summary_json(res);
            std::ofstream(run_dir / "summary.json") << summary << "\n";
            std::cout << summary << "\n";
            std::cerr << "results written to " << run_dir.string() << "\n";
            if (config.strict && res.counts.undecided > 0) return kExitStrictFailure;
            return kExitPcf;
        }

        if (*cmd_family) {
            Family fam = family_name == "unicritical" ? Family::Unicritical
                                                      : Family::SuperattractingZero;
            std::vector<mpq_class> cs;
            if (!c_list.empty()) {
                std::istringstream ss(c_list);
                std::string tok;
                while (std::getline(ss, tok, ',')) cs.push_back(parse_rational(tok));
            }
            HeightBudget budget;
            budget.precision = precision;
            std::string csv = family_csv(family_scan(fam, family_degree, cs, budget));
            if (family_out.empty())
                std::cout << csv;
            else
                std::ofstream(family_out) << csv;
            return kExitPcf;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseError;
    }
    return kExitParseError;
}
