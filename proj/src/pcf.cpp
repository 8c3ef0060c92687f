#include "dynheight/pcf.hpp"

#include <json.hpp>

#include <map>
#include <sstream>

namespace dynheight {

using nlohmann::json;

std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Pcf: return "Pcf";
        case VerdictKind::NotPcf: return "NotPcf";
        default: return "Undecided";
    }
}

namespace {

PolySpec cubic_poly(const mpq_class& A, const mpq_class& B) {
    return PolySpec({B, A, mpq_class(0), mpq_class(1)});
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

// ---- archimedean escape detection -------------------------------------------

struct ArchCheck {
    bool escaped = false;
    int iterate = 0;
    bool unknown = false;
};

template <typename State>
ArchCheck run_arch_orbit(const PolySpec& F, State w, const ArchEscapeRadius& radius,
                         int n_max) {
    constexpr bool complex_path = std::is_same_v<State, ComplexBox>;
    ArchCheck out;
    for (int n = 0; n <= n_max; ++n) {
        Cmp c;
        if constexpr (complex_path)
            c = radius.exceeded_by_abs_sq(w.abs_sq());
        else
            c = radius.exceeded_by_abs(w.abs());
        if (c == Cmp::True) {
            out.escaped = true;
            out.iterate = n;
            return out;
        }
        if (c == Cmp::Unknown) out.unknown = true;
        if (n == n_max) break;
        w = F.eval(w);
    }
    out.iterate = n_max;
    return out;
}

// Certified escape search over all embeddings of all critical points,
// refining precision while comparisons stay inconclusive.
ArchCheck arch_escape_check(const PolySpec& F, const std::vector<CriticalPoint>& cps,
                            const ArchEscapeRadius& radius, int n_max,
                            const HeightBudget& budget) {
    mpfr_prec_t prec = budget.precision;
    for (int attempt = 0;; ++attempt) {
        ArchCheck merged;
        for (const auto& cp : cps) {
            QuadEmbedding e = embed(cp.location, prec);
            std::vector<ArchCheck> runs;
            if (e.complex) {
                runs.push_back(run_arch_orbit(F, e.box, radius, n_max));
            } else {
                runs.push_back(run_arch_orbit(F, e.first, radius, n_max));
                if (!cp.location.is_rational())
                    runs.push_back(run_arch_orbit(F, e.second, radius, n_max));
            }
            for (const auto& r : runs) {
                if (r.escaped && (!merged.escaped || r.iterate < merged.iterate)) {
                    merged.escaped = true;
                    merged.iterate = r.iterate;
                }
                merged.unknown = merged.unknown || r.unknown;
            }
        }
        if (merged.escaped || !merged.unknown || attempt >= budget.max_refinements)
            return merged;
        prec *= 2;
    }
}

// ---- p-adic escape detection --------------------------------------------------

struct PadicCheck {
    bool escaped = false;
    int iterate = 0;
};

// Exact orbit of one critical point against the valuation threshold m.
PadicCheck run_padic_orbit(const PolySpec& F, const QuadExt& start,
                           const NonArchEscapeRadius& radius, int n_max,
                           size_t max_bits) {
    unsigned long p = radius.p;
    bool coeffs_integral = true;
    for (const auto& a : F.coeffs())
        if (a != 0 && padic_valuation_exact(a, p) < 0) coeffs_integral = false;

    std::map<QuadExt, int> seen;
    QuadExt w = start;
    for (int n = 0; n <= n_max; ++n) {
        if (!w.is_zero()) {
            auto [u, U] = quad_valuations(w, p);
            if (radius.exceeded_by_valuation(u)) return {true, n};
            if (coeffs_integral && u >= 0) return {false, n};  // integral forever
        } else if (coeffs_integral && radius.m == 0) {
            return {false, n};
        }
        if (seen.count(w)) return {false, n};  // exact repetition: bounded
        seen.emplace(w, n);
        if (n == n_max || w.bit_size() > max_bits) break;
        w = F.eval(w);
    }
    return {false, n_max};
}

} // namespace

SieveReport integrality_sieve(const mpq_class& A, const mpq_class& B) {
    SieveReport r;
    r.A = A;
    r.B = B;
    mpz_class da = A.get_den(), db = B.get_den();
    mpz_class four = 4, eight = 8;
    bool a_ok = mpz_divisible_p(four.get_mpz_t(), da.get_mpz_t());
    bool b_ok = mpz_divisible_p(eight.get_mpz_t(), db.get_mpz_t());
    if (a_ok && b_ok) return r;
    r.eliminated_by = SieveStage::Integrality;
    // report the smallest offending prime
    mpz_class bad = a_ok ? db : da;
    long allowed2 = a_ok ? 3 : 2;
    for (unsigned long p : prime_factors(bad)) {
        long v = padic_valuation_exact(mpq_class(bad), p);
        if (v > (p == 2 ? allowed2 : 0)) {
            r.p = p;
            break;
        }
    }
    return r;
}

SieveReport arch_escape_sieve(const mpq_class& A, const mpq_class& B, int n_max,
                              const HeightBudget& budget) {
    SieveReport r;
    r.A = A;
    r.B = B;
    PolySpec F = cubic_poly(A, B);
    ArchCheck c = arch_escape_check(F, critical_points_cubic(A, B),
                                    cubic_escape_radius_arch(A, B), n_max, budget);
    if (c.escaped) {
        r.eliminated_by = SieveStage::ArchEscape;
        r.iterate = c.iterate;
    }
    return r;
}

SieveReport padic_escape_sieve(const mpq_class& A, const mpq_class& B, unsigned long p,
                               int n_max, const HeightBudget& budget) {
    SieveReport r;
    r.A = A;
    r.B = B;
    PolySpec F = cubic_poly(A, B);
    NonArchEscapeRadius radius = cubic_escape_radius_prime(A, B, p);
    // the sieve's exact orbits may legitimately outgrow the certify budget
    size_t max_bits = std::max<size_t>(budget.max_orbit_bits, size_t(1) << 26);
    for (const auto& cp : critical_points_cubic(A, B)) {
        PadicCheck c = run_padic_orbit(F, cp.location, radius, n_max, max_bits);
        if (c.escaped) {
            r.eliminated_by = SieveStage::PadicEscape;
            r.p = p;
            r.iterate = c.iterate;
            return r;
        }
    }
    return r;
}

bool replay_sieve_witness(const SieveReport& report, const HeightBudget& budget) {
    switch (report.eliminated_by) {
        case SieveStage::Survived:
            return true;
        case SieveStage::Integrality:
            return integrality_sieve(report.A, report.B).eliminated_by ==
                   SieveStage::Integrality;
        case SieveStage::ArchEscape: {
            SieveReport again = arch_escape_sieve(report.A, report.B, report.iterate, budget);
            return again.eliminated_by == SieveStage::ArchEscape &&
                   again.iterate == report.iterate;
        }
        case SieveStage::PadicEscape: {
            SieveReport again =
                padic_escape_sieve(report.A, report.B, report.p, report.iterate, budget);
            return again.eliminated_by == SieveStage::PadicEscape &&
                   again.iterate == report.iterate;
        }
    }
    return false;
}

PcfVerdict certify_pcf(const PolySpec& F, const HeightBudget& budget) {
    PcfVerdict verdict;
    std::vector<CriticalPoint> cps = critical_points(F);
    std::vector<OrbitRecord> records;

    for (const auto& cp : cps) {
        // exact forward orbit until repetition or blow-up
        std::map<QuadExt, int> index;
        std::vector<QuadExt> points;
        QuadExt w = cp.location;
        int repeat_at = -1, first_seen = -1;
        for (int n = 0; n <= budget.max_iterations; ++n) {
            auto it = index.find(w);
            if (it != index.end()) {
                repeat_at = n;
                first_seen = it->second;
                break;
            }
            index.emplace(w, n);
            points.push_back(w);
            if (w.bit_size() > budget.max_orbit_bits) break;
            w = F.eval(w);
        }
        verdict.iterations = std::max(verdict.iterations, static_cast<int>(points.size()));
        if (repeat_at >= 0) {
            OrbitRecord rec;
            rec.critical_point = cp.location;
            rec.multiplicity = cp.multiplicity;
            rec.points = points;
            rec.tail_length = first_seen;
            rec.cycle_length = repeat_at - first_seen;
            records.push_back(std::move(rec));
            continue;
        }

        // no repetition: look for a certified escape
        ArchCheck arch = arch_escape_check(F, {cp}, escape_radius_arch(F),
                                           budget.max_iterations, budget);
        if (arch.escaped) {
            verdict.kind = VerdictKind::NotPcf;
            verdict.witness = EscapeWitness{cp.location, Place::inf(), arch.iterate,
                                            "|f^N(c)| > C_{f,inf}"};
            return verdict;
        }
        for (unsigned long p : relevant_primes(F, cp.location)) {
            NonArchEscapeRadius radius = escape_radius_prime(F, p);
            for (size_t n = 0; n < points.size(); ++n) {
                if (points[n].is_zero()) continue;
                auto [u, U] = quad_valuations(points[n], p);
                if (radius.exceeded_by_valuation(u)) {
                    verdict.kind = VerdictKind::NotPcf;
                    std::ostringstream desc;
                    desc << "v_" << p << "(f^N(c)) = " << u.get_str() << " < m = "
                         << radius.m.get_str();
                    verdict.witness = EscapeWitness{cp.location, Place::prime(p),
                                                    static_cast<int>(n), desc.str()};
                    return verdict;
                }
            }
        }
        verdict.kind = VerdictKind::Undecided;
        return verdict;
    }

    verdict.kind = VerdictKind::Pcf;
    verdict.orbits = std::move(records);
    return verdict;
}

RatioReport theorem1_ratio(const PolySpec& F, const HeightBudget& budget) {
    RatioReport rep;
    HeightResult crit = critical_height(F, budget);
    rep.h_crit = crit.value;
    auto [G, psi] = to_monic_centred(F);
    rep.h_mc = monic_centred_height(G, budget.precision);
    rep.decided = crit.decided;
    if (crit.decided && rep.h_crit.is_point() && rep.h_crit.contains_zero()) {
        rep.pcf_point = true;
        rep.ratio = DyadicInterval::zero(budget.precision);
        return rep;
    }
    if (mpfr_sgn(rep.h_mc.lo()) > 0)
        rep.ratio = rep.h_crit.div_pos(rep.h_mc);
    else
        rep.decided = false;
    return rep;
}

namespace {

json witness_to_json(const EscapeWitness& w) {
    return json{{"critical_point", w.critical_point.to_string()},
                {"place", w.place.label()},
                {"iterate", w.iterate},
                {"threshold", w.threshold}};
}

json orbit_to_json(const OrbitRecord& o) {
    json pts = json::array();
    for (const auto& z : o.points) pts.push_back(z.to_string());
    return json{{"critical_point", o.critical_point.to_string()},
                {"multiplicity", o.multiplicity},
                {"points", pts},
                {"tail_length", o.tail_length},
                {"cycle_length", o.cycle_length}};
}

json verdict_to_json_impl(const PcfVerdict& v) {
    json j;
    j["verdict"] = to_string(v.kind);
    j["iterations"] = v.iterations;
    if (v.witness) j["witness"] = witness_to_json(*v.witness);
    if (v.kind == VerdictKind::Pcf) {
        json orbits = json::array();
        for (const auto& o : v.orbits) orbits.push_back(orbit_to_json(o));
        j["orbit"] = orbits;
    }
    return j;
}

} // namespace

std::string sieve_report_json(const SieveReport& r) {
    json j{{"A", q_str(r.A)}, {"B", q_str(r.B)}};
    switch (r.eliminated_by) {
        case SieveStage::Survived: j["verdict"] = "Survived"; break;
        case SieveStage::Integrality:
            j["verdict"] = "Integrality";
            j["witness"] = json{{"place", std::to_string(r.p)}};
            break;
        case SieveStage::ArchEscape:
            j["verdict"] = "ArchEscape";
            j["witness"] = json{{"place", "inf"}, {"iterate", r.iterate}};
            break;
        case SieveStage::PadicEscape:
            j["verdict"] = "PadicEscape";
            j["witness"] = json{{"place", std::to_string(r.p)}, {"iterate", r.iterate}};
            break;
    }
    return j.dump();
}

std::string verdict_json(const mpq_class& A, const mpq_class& B, const PcfVerdict& v) {
    json j = verdict_to_json_impl(v);
    j["A"] = q_str(A);
    j["B"] = q_str(B);
    return j.dump();
}

std::string verdict_json(const PolySpec& F, const PcfVerdict& v) {
    json j = verdict_to_json_impl(v);
    j["poly"] = F.to_string();
    return j.dump();
}

} // namespace dynheight
