#include "dynheight/local_heights.hpp"

#include <algorithm>
#include <set>
#include <type_traits>

namespace dynheight {

namespace {

mpq_class abs_q(const mpq_class& q) { return q < 0 ? mpq_class(-q) : q; }

mpq_class pow_int_q(long base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return mpq_class(r);
}

// Worst-case interval for the archimedean error term in the escape formula.
DyadicInterval eps_interval(mpfr_prec_t prec) {
    DyadicInterval log2 = DyadicInterval::log_of_mpq(mpq_class(2), prec);
    DyadicInterval log32 = DyadicInterval::log_of_mpq(mpq_class(3, 2), prec);
    return DyadicInterval::hull(-log2, log32);
}

} // namespace

Cmp ArchEscapeRadius::exceeded_by_abs(const DyadicInterval& abs_z) const {
    // |z| > scale * max{1, q^(1/k)}  <=>  t > 1 and t^k > q for all terms,
    // with t = |z| / scale.
    DyadicInterval t = abs_z.mul_q(1 / scale);
    Cmp acc = t.gt(mpq_class(1));
    for (const auto& [q, k] : terms) {
        if (acc == Cmp::False) return Cmp::False;
        Cmp c = t.pow_ui(k).gt(q);
        if (c == Cmp::False) return Cmp::False;
        if (c == Cmp::Unknown) acc = Cmp::Unknown;
    }
    return acc;
}

Cmp ArchEscapeRadius::exceeded_by_abs_sq(const DyadicInterval& abs_sq_z) const {
    DyadicInterval t2 = abs_sq_z.mul_q(1 / (scale * scale));
    Cmp acc = t2.gt(mpq_class(1));
    for (const auto& [q, k] : terms) {
        if (acc == Cmp::False) return Cmp::False;
        Cmp c = t2.pow_ui(k).gt(q * q);
        if (c == Cmp::False) return Cmp::False;
        if (c == Cmp::Unknown) acc = Cmp::Unknown;
    }
    return acc;
}

DyadicInterval ArchEscapeRadius::log_value(mpfr_prec_t prec) const {
    DyadicInterval m = DyadicInterval::zero(prec);
    for (const auto& [q, k] : terms) {
        if (q <= 1) continue;
        m = DyadicInterval::max(m, DyadicInterval::log_of_mpq(q, prec).mul_q(mpq_class(1, k)));
    }
    return m + DyadicInterval::log_of_mpq(scale, prec);
}

ArchEscapeRadius escape_radius_arch(const PolySpec& F) {
    int d = F.degree();
    ArchEscapeRadius r;
    r.scale = mpq_class(2 * d);
    for (int i = 0; i < d; ++i) {
        if (F.coeff(i) == 0) continue;
        r.terms.push_back({abs_q(F.coeff(i) / F.leading()), static_cast<unsigned long>(d - i)});
    }
    r.terms.push_back({abs_q(1 / F.leading()), static_cast<unsigned long>(d - 1)});
    return r;
}

NonArchEscapeRadius escape_radius_prime(const PolySpec& F, unsigned long p) {
    int d = F.degree();
    NonArchEscapeRadius r;
    r.p = p;
    r.m = 0;
    long vad = padic_valuation_exact(F.leading(), p);
    for (int i = 0; i < d; ++i) {
        if (F.coeff(i) == 0) continue;
        mpq_class t(padic_valuation_exact(F.coeff(i), p) - vad, d - i);
        t.canonicalize();
        if (t < r.m) r.m = t;
    }
    mpq_class lead(-vad, d - 1);
    lead.canonicalize();
    if (lead < r.m) r.m = lead;
    return r;
}

ArchEscapeRadius cubic_escape_radius_arch(const mpq_class& A, const mpq_class& B) {
    ArchEscapeRadius r;
    r.scale = 2;
    if (A != 0) r.terms.push_back({abs_q(A), 2});
    if (B != 0) r.terms.push_back({abs_q(B), 3});
    return r;
}

NonArchEscapeRadius cubic_escape_radius_prime(const mpq_class& A, const mpq_class& B,
                                              unsigned long p) {
    NonArchEscapeRadius r;
    r.p = p;
    r.m = 0;
    if (A != 0) {
        mpq_class t(padic_valuation_exact(A, p), 2);
        t.canonicalize();
        if (t < r.m) r.m = t;
    }
    if (B != 0) {
        mpq_class t(padic_valuation_exact(B, p), 3);
        t.canonicalize();
        if (t < r.m) r.m = t;
    }
    return r;
}

namespace {

// ----- archimedean machinery ------------------------------------------------

struct ArchOutcome {
    bool escaped = false;
    bool had_unknown = false;
    DyadicInterval lambda;  // escaped: tight enclosure; else [0, best upper]
    int iterations = 0;
};

// Stop growing the orbit once the exponent is this large; log|f^n| is then
// known to ~2^36 binary digits before the point, plenty for the d^{-n} damping.
constexpr mpfr_exp_t kMaxExponent = mpfr_exp_t(1) << 36;

// Post-escape iterates overflow MPFR's default exponent range (2^30 - 1)
// long before kMaxExponent; widen it once.
void ensure_exponent_range() {
    const mpfr_exp_t want = mpfr_exp_t(1) << 40;
    if (mpfr_get_emax() < want) mpfr_set_emax(want);
    if (mpfr_get_emin() > -want) mpfr_set_emin(-want);
}

// One real or complex interval orbit.  `sq` selects the |.|^2 comparison path.
template <typename State>
ArchOutcome arch_lambda(const PolySpec& F, State w, const ArchEscapeRadius& radius,
                        const HeightBudget& budget, mpfr_prec_t prec) {
    constexpr bool complex_path = std::is_same_v<State, ComplexBox>;
    int d = F.degree();
    DyadicInterval log_ad_term =
        DyadicInterval::log_of_mpq(abs_q(F.leading()), prec).mul_q(mpq_class(1, d - 1));
    // telescoping constants for the non-escaped upper bound
    mpq_class coeff_max = 1;
    for (const auto& a : F.coeffs())
        if (abs_q(a) > coeff_max) coeff_max = abs_q(a);
    DyadicInterval tele_const =
        (DyadicInterval::log_of_mpq(coeff_max, prec) +
         DyadicInterval::log_of_mpq(mpq_class(d + 1), prec))
            .mul_q(mpq_class(1, d - 1));

    ArchOutcome out;
    int esc_n = -1;
    bool have_upper = false;
    DyadicInterval best_upper = DyadicInterval::zero(prec);
    DyadicInterval eps = eps_interval(prec);

    for (int n = 0;; ++n) {
        DyadicInterval measure = [&] {
            if constexpr (complex_path)
                return w.abs_sq();
            else
                return w.abs();
        }();
        // log |f^n(z)|, valid once positive; for the complex path halve log of |.|^2
        auto log_abs = [&]() -> DyadicInterval {
            if constexpr (complex_path)
                return measure.log_pos().div_2exp(1);
            else
                return measure.log_pos();
        };
        if (!out.escaped) {
            Cmp c = complex_path ? radius.exceeded_by_abs_sq(measure)
                                 : radius.exceeded_by_abs(measure);
            if (c == Cmp::True) {
                out.escaped = true;
                esc_n = n;
            } else {
                if (c == Cmp::Unknown) out.had_unknown = true;
                // track the best telescoping upper bound
                DyadicInterval lp = [&] {
                    if constexpr (complex_path)
                        return measure.log_plus().div_2exp(1);
                    else
                        return measure.log_plus();
                }();
                DyadicInterval u = (lp + tele_const).mul_pow(mpq_class(d), -n);
                if (!have_upper || u.hi_d() < best_upper.hi_d()) {
                    best_upper = u;
                    have_upper = true;
                }
            }
        }
        bool last = (n >= budget.max_iterations) ||
                    (out.escaped && (!mpfr_number_p(measure.hi()) ||
                                     mpfr_get_exp(measure.hi()) > kMaxExponent));
        if (last) {
            out.iterations = n;
            if (out.escaped) {
                out.lambda = (log_abs() + log_ad_term + eps).mul_pow(mpq_class(d), -n);
            } else {
                DyadicInterval u = have_upper ? best_upper : tele_const;
                DyadicInterval zero = DyadicInterval::zero(prec);
                out.lambda = DyadicInterval::hull(zero, DyadicInterval::max(zero, u));
            }
            return out;
        }
        w = F.eval(w);
    }
}

// Sum of the lambda values of the two conjugate embeddings, divided by 2.
LocalHeightEstimate arch_estimate(const PolySpec& F, const QuadExt& z,
                                  const HeightBudget& budget) {
    ensure_exponent_range();
    ArchEscapeRadius radius = escape_radius_arch(F);
    mpfr_prec_t prec = budget.precision;
    LocalHeightEstimate est;
    est.place = Place::inf();
    for (int attempt = 0;; ++attempt) {
        QuadEmbedding e = embed(z, prec);
        ArchOutcome o1, o2;
        bool complex_case = e.complex;
        if (complex_case) {
            o1 = arch_lambda(F, e.box, radius, budget, prec);
        } else {
            o1 = arch_lambda(F, e.first, radius, budget, prec);
            o2 = arch_lambda(F, e.second, radius, budget, prec);
        }
        bool unknown = o1.had_unknown || (!complex_case && o2.had_unknown);
        bool resolved = complex_case ? o1.escaped : (o1.escaped && o2.escaped);
        if (resolved || !unknown || attempt >= budget.max_refinements) {
            if (complex_case) {
                est.value = o1.lambda;  // both embeddings share this value
                est.iterations_used = o1.iterations;
                est.certified = o1.escaped;
            } else {
                est.value = (o1.lambda + o2.lambda).div_2exp(1);
                est.iterations_used = std::max(o1.iterations, o2.iterations);
                est.certified = o1.escaped && o2.escaped;
            }
            // a bounded orbit yields the valid (if uncertified) enclosure [0, upper]
            return est;
        }
        prec *= 2;
    }
}

// ----- non-archimedean machinery ---------------------------------------------

struct PairOutcome {
    bool certified = false;
    mpq_class lower = 0;   // bounds on (lambda_w1 + lambda_w2) / log p
    mpq_class upper = 0;
    int iterations = 0;
};

mpq_class dpow_inv(int d, int n) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(n));
    return mpq_class(1) / mpq_class(r);
}

PairOutcome nonarch_pair(const PolySpec& F, const QuadExt& z, unsigned long p,
                         const HeightBudget& budget) {
    int d = F.degree();
    NonArchEscapeRadius radius = escape_radius_prime(F, p);
    mpq_class vad(padic_valuation_exact(F.leading(), p));
    mpq_class vad_term = vad / (d - 1);
    bool coeffs_integral = true;
    mpq_class tele = 0;  // (1/(d-1)) * max_i max(0, -v(a_i))
    for (const auto& a : F.coeffs()) {
        if (a == 0) continue;
        long v = padic_valuation_exact(a, p);
        if (v < 0) {
            coeffs_integral = false;
            mpq_class t(-v, d - 1);
            t.canonicalize();
            if (t > tele) tele = t;
        }
    }

    PairOutcome out;
    bool escaped1 = false;
    mpq_class lambda1 = 0;
    mpq_class predicted = 0;  // valuation of f^n(z) at the escaped place
    QuadExt w = z;
    mpq_class last_u = 0, last_other = 0;
    bool have_vals = false;

    for (int n = 0; n <= budget.max_iterations; ++n) {
        out.iterations = n;
        if (w.is_zero()) {
            if (coeffs_integral && radius.m == 0 && !escaped1) {
                out.certified = true;  // orbit continues inside the integers
                return out;
            }
            have_vals = false;
        } else if (!escaped1) {
            auto [u, U] = quad_valuations(w, p);
            last_u = u;
            last_other = U;
            have_vals = true;
            if (radius.exceeded_by_valuation(u)) {
                escaped1 = true;
                predicted = u;
                lambda1 = dpow_inv(d, n) * (-u - vad_term);
                if (radius.exceeded_by_valuation(U)) {
                    mpq_class lambda2 = dpow_inv(d, n) * (-U - vad_term);
                    out.certified = true;
                    out.lower = out.upper = lambda1 + lambda2;
                    return out;
                }
            } else if (coeffs_integral && u >= 0) {
                // both places integral from here on: bounded, lambda = 0
                out.certified = true;
                return out;
            }
        } else {
            // escaped place follows v(f(w)) = v(a_d) + d v(w) exactly
            auto [u, U] = quad_valuations(w, p);
            mpq_class other = (u + U) - predicted;
            last_other = other;
            have_vals = true;
            if (radius.exceeded_by_valuation(other)) {
                mpq_class lambda2 = dpow_inv(d, n) * (-other - vad_term);
                out.certified = true;
                out.lower = out.upper = lambda1 + lambda2;
                return out;
            }
            if (coeffs_integral && other >= 0) {
                out.certified = true;
                out.lower = out.upper = lambda1;
                return out;
            }
        }
        if (w.bit_size() > budget.max_orbit_bits) break;
        w = F.eval(w);
        if (escaped1) predicted = vad + d * predicted;
    }

    // budget exhausted: report rigorous bounds
    mpq_class damp = dpow_inv(d, out.iterations);
    auto pos = [](const mpq_class& q) { return q < 0 ? mpq_class(-q) : mpq_class(0); };
    if (!escaped1) {
        out.lower = 0;
        mpq_class slack = have_vals ? mpq_class(pos(last_u) + pos(last_other) + 2 * tele)
                                    : mpq_class(2 * tele);
        out.upper = damp * slack;
    } else {
        out.lower = lambda1;
        mpq_class slack = have_vals ? mpq_class(pos(last_other) + tele) : tele;
        out.upper = lambda1 + damp * slack;
    }
    return out;
}

LocalHeightEstimate prime_estimate(const PolySpec& F, const QuadExt& z, unsigned long p,
                                   const HeightBudget& budget) {
    PairOutcome o = nonarch_pair(F, z, p, budget);
    LocalHeightEstimate est;
    est.place = Place::prime(p);
    est.iterations_used = o.iterations;
    est.certified = o.certified;
    DyadicInterval logp = DyadicInterval::log_of_mpz(mpz_class(p), budget.precision);
    if (o.certified && o.lower == 0 && o.upper == 0) {
        est.value = DyadicInterval::zero(budget.precision);
        return est;
    }
    DyadicInterval lo = logp.mul_q(o.lower / 2);
    DyadicInterval hi = logp.mul_q(o.upper / 2);
    est.value = DyadicInterval::hull(lo, hi);
    return est;
}

} // namespace

LocalHeightEstimate local_canonical_height(const PolySpec& F, const QuadExt& z,
                                           const Place& v, const HeightBudget& budget) {
    if (v.archimedean) return arch_estimate(F, z, budget);
    if (!is_prime(v.p)) throw std::invalid_argument("local_canonical_height: p must be prime");
    return prime_estimate(F, z, v.p, budget);
}

std::vector<unsigned long> relevant_primes(const PolySpec& F, const QuadExt& z) {
    std::set<unsigned long> primes;
    for (const auto& a : F.coeffs()) {
        if (a == 0) continue;
        if (a.get_den() != 1)
            for (unsigned long p : prime_factors(a.get_den())) primes.insert(p);
    }
    if (!z.is_zero()) {
        mpq_class n = z.norm(), t = z.trace();
        if (n != 0 && n.get_den() != 1)
            for (unsigned long p : prime_factors(n.get_den())) primes.insert(p);
        if (t != 0 && t.get_den() != 1)
            for (unsigned long p : prime_factors(t.get_den())) primes.insert(p);
    }
    for (unsigned long p = 2; p <= 2 * static_cast<unsigned long>(F.degree()); ++p)
        if (is_prime(p)) primes.insert(p);
    return {primes.begin(), primes.end()};
}

HeightResult canonical_height(const PolySpec& F, const QuadExt& z, const HeightBudget& budget) {
    // exact repetition proves preperiodicity, hence height exactly 0
    {
        std::set<QuadExt> seen;
        QuadExt w = z;
        for (int n = 0; n <= budget.max_iterations; ++n) {
            if (seen.count(w))
                return {DyadicInterval::zero(budget.precision), true, n};
            seen.insert(w);
            if (w.bit_size() > budget.max_orbit_bits) break;
            w = F.eval(w);
        }
    }
    HeightResult r;
    r.value = DyadicInterval::zero(budget.precision);
    LocalHeightEstimate arch = local_canonical_height(F, z, Place::inf(), budget);
    r.value = r.value + arch.value;
    r.decided = arch.certified;
    r.iterations = arch.iterations_used;
    for (unsigned long p : relevant_primes(F, z)) {
        LocalHeightEstimate est = local_canonical_height(F, z, Place::prime(p), budget);
        r.value = r.value + est.value;
        r.decided = r.decided && est.certified;
        r.iterations = std::max(r.iterations, est.iterations_used);
    }
    return r;
}

HeightResult critical_height(const PolySpec& F, const HeightBudget& budget) {
    HeightResult r;
    r.value = DyadicInterval::zero(budget.precision);
    for (const auto& cp : critical_points(F)) {
        HeightResult h = canonical_height(F, cp.location, budget);
        for (int k = 0; k < cp.multiplicity; ++k) r.value = r.value + h.value;
        r.decided = r.decided && h.decided;
        r.iterations = std::max(r.iterations, h.iterations);
    }
    return r;
}

DyadicInterval canonical_height_upper_bound(const PolySpec& F, const QuadExt& z,
                                            mpfr_prec_t precision) {
    int d = F.degree();
    DyadicInterval hz = z.is_rational() ? rational_height(z.x(), precision)
                                        : quad_height(z, precision);
    return hz + (coefficient_height(F, precision) +
                 DyadicInterval::log_of_mpz(mpz_class(d + 1), precision))
                    .mul_q(mpq_class(1, d - 1));
}

} // namespace dynheight
