#include "dynheight/enumeration.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

namespace dynheight {

using nlohmann::json;

std::vector<std::pair<long, long>> cubic_candidate_grid() {
    std::vector<std::pair<long, long>> grid;
    grid.reserve(41 * 95);
    for (long a = -20; a <= 20; ++a)
        for (long b = 0; b <= 94; ++b) grid.push_back({a, b});
    return grid;
}

namespace {

CandidateReport examine_candidate(long a, long b, const EnumerationConfig& config) {
    CandidateReport rep;
    rep.a = a;
    rep.b = b;
    rep.A = mpq_class(a, 4);
    rep.A.canonicalize();
    rep.B = mpq_class(b, 8);
    rep.B.canonicalize();

    HeightBudget budget;
    budget.precision = config.precision;

    SieveReport arch = arch_escape_sieve(rep.A, rep.B, config.n_arch, budget);
    if (arch.eliminated_by == SieveStage::ArchEscape) {
        rep.stage = SieveStage::ArchEscape;
        rep.witness_iterate = arch.iterate;
        rep.verdict = VerdictKind::NotPcf;
        return rep;
    }
    for (unsigned long p : config.primes) {
        SieveReport padic = padic_escape_sieve(rep.A, rep.B, p, config.n_padic, budget);
        if (padic.eliminated_by == SieveStage::PadicEscape) {
            rep.stage = SieveStage::PadicEscape;
            rep.witness_p = p;
            rep.witness_iterate = padic.iterate;
            rep.verdict = VerdictKind::NotPcf;
            return rep;
        }
    }
    PolySpec F({rep.B, rep.A, mpq_class(0), mpq_class(1)});
    PcfVerdict v = certify_pcf(F, budget);
    rep.verdict = v.kind;
    if (v.kind == VerdictKind::Pcf) {
        for (const auto& o : v.orbits)
            rep.orbit_length = std::max(rep.orbit_length,
                                        static_cast<int>(o.points.size()));
    } else if (v.kind == VerdictKind::NotPcf && v.witness) {
        rep.witness_p = v.witness->place.archimedean ? 0 : v.witness->place.p;
        rep.witness_iterate = v.witness->iterate;
    }
    return rep;
}

} // namespace

EnumerationResult enumerate_pcf_cubics(const EnumerationConfig& config) {
    EnumerationResult result;
    result.config = config;
    auto grid = cubic_candidate_grid();
    result.reports.resize(grid.size());
    result.counts.grid = static_cast<int>(grid.size());

    unsigned n_workers = config.workers > 0
                             ? static_cast<unsigned>(config.workers)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, grid.size());
    std::vector<std::thread> pool;
    size_t chunk = (grid.size() + n_workers - 1) / n_workers;
    for (unsigned w = 0; w < n_workers; ++w) {
        size_t lo = w * chunk, hi = std::min(grid.size(), lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (size_t i = lo; i < hi; ++i)
                result.reports[i] = examine_candidate(grid[i].first, grid[i].second, config);
        });
    }
    for (auto& t : pool) t.join();

    std::map<unsigned long, int> padic_counts;
    for (const auto& rep : result.reports) {
        switch (rep.stage) {
            case SieveStage::ArchEscape: ++result.counts.arch_eliminated; break;
            case SieveStage::PadicEscape: ++padic_counts[rep.witness_p]; break;
            case SieveStage::Integrality: break;
            case SieveStage::Survived:
                if (rep.verdict == VerdictKind::Pcf) {
                    ++result.counts.certified_pcf;
                    result.pcf_pairs.push_back({rep.A, rep.B});
                    if (rep.b > 0) result.pcf_pairs.push_back({rep.A, mpq_class(-rep.B)});
                } else if (rep.verdict == VerdictKind::NotPcf) {
                    ++result.counts.not_pcf;
                } else {
                    ++result.counts.undecided;
                }
                break;
        }
    }
    result.counts.arch_survivors = result.counts.grid - result.counts.arch_eliminated;
    for (unsigned long p : config.primes)
        result.counts.padic_eliminated.push_back({p, padic_counts[p]});
    std::sort(result.pcf_pairs.begin(), result.pcf_pairs.end());
    return result;
}

std::vector<mpq_class> enumerate_pcf_quadratics() {
    // d = 2 analogue of the cubic bounds: c integral at every prime and
    // |c| <= 2 at the archimedean place, leaving c in {-2, ..., 2}.
    std::vector<mpq_class> out;
    for (long c = -2; c <= 2; ++c) {
        PolySpec F({mpq_class(c), mpq_class(0), mpq_class(1)});
        if (certify_pcf(F).kind == VerdictKind::Pcf) out.push_back(mpq_class(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

PolySpec family_member(Family fam, int d, const mpq_class& c) {
    std::vector<mpq_class> coeffs(static_cast<size_t>(d) + 1, 0);
    coeffs[static_cast<size_t>(d)] = 1;
    if (fam == Family::Unicritical) {
        coeffs[0] = c;
    } else {
        coeffs[static_cast<size_t>(d) - 1] = mpq_class(-d * c) / mpq_class(d - 1);
    }
    return PolySpec(std::move(coeffs));
}

std::vector<FamilyRow> family_scan(Family fam, int d, const std::vector<mpq_class>& cs,
                                   const HeightBudget& budget) {
    std::vector<FamilyRow> rows;
    for (const auto& c : cs) {
        FamilyRow row;
        row.c = c;
        RatioReport rep = theorem1_ratio(family_member(fam, d, c), budget);
        row.h_crit = rep.h_crit;
        row.h_mc = rep.h_mc;
        row.ratio = rep.ratio;
        row.decided = rep.decided;
        row.pcf = rep.pcf_point;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

const char* stage_name(SieveStage s) {
    switch (s) {
        case SieveStage::Survived: return "survived";
        case SieveStage::Integrality: return "integrality";
        case SieveStage::ArchEscape: return "arch";
        case SieveStage::PadicEscape: return "padic";
    }
    return "?";
}

std::string witness_field(const CandidateReport& r) {
    if (r.stage == SieveStage::ArchEscape) return "inf@" + std::to_string(r.witness_iterate);
    if (r.stage == SieveStage::PadicEscape)
        return std::to_string(r.witness_p) + "@" + std::to_string(r.witness_iterate);
    if (r.stage == SieveStage::Survived && r.verdict == VerdictKind::NotPcf)
        return (r.witness_p ? std::to_string(r.witness_p) : std::string("inf")) + "@" +
               std::to_string(r.witness_iterate);
    return "";
}

} // namespace

std::string enumeration_csv(const EnumerationResult& res) {
    std::ostringstream out;
    out << "a,b,A,B,stage,verdict,witness,orbit_len\n";
    for (const auto& r : res.reports) {
        out << r.a << ',' << r.b << ',' << r.A.get_str() << ',' << r.B.get_str() << ','
            << stage_name(r.stage) << ','
            << (r.stage == SieveStage::Survived ? to_string(r.verdict) : "NotPcf") << ','
            << witness_field(r) << ',' << (r.verdict == VerdictKind::Pcf ? r.orbit_length : 0)
            << '\n';
    }
    return out.str();
}

std::string enumeration_summary_json(const EnumerationResult& res) {
    json j;
    j["grid"] = res.counts.grid;
    j["arch_eliminated"] = res.counts.arch_eliminated;
    j["arch_survivors"] = res.counts.arch_survivors;
    json padic = json::object();
    for (const auto& [p, n] : res.counts.padic_eliminated)
        padic[std::to_string(p)] = n;
    j["padic_eliminated"] = padic;
    j["certified_pcf"] = res.counts.certified_pcf;
    j["not_pcf_after_sieves"] = res.counts.not_pcf;
    j["undecided"] = res.counts.undecided;
    json pairs = json::array();
    for (const auto& [A, B] : res.pcf_pairs)
        pairs.push_back(json::array({A.get_str(), B.get_str()}));
    j["pcf_pairs"] = pairs;
    j["config"] = {{"n_arch", res.config.n_arch},
                   {"n_padic", res.config.n_padic},
                   {"precision", static_cast<long>(res.config.precision)},
                   {"primes", res.config.primes},
                   {"strict", res.config.strict}};
    return j.dump(2);
}

std::string family_csv(const std::vector<FamilyRow>& rows) {
    std::ostringstream out;
    out << "c,h_crit,h_mc,ratio,decided\n";
    for (const auto& r : rows) {
        out << r.c.get_str() << ',' << r.h_crit.to_decimal() << ',' << r.h_mc.to_decimal()
            << ',' << (r.pcf ? "0" : r.ratio.to_decimal()) << ','
            << (r.decided ? "yes" : "no") << '\n';
    }
    return out.str();
}

} // namespace dynheight
