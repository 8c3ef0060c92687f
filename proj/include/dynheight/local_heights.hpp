#pragma once

#include "dynheight/polyspec.hpp"

#include <string>
#include <vector>

namespace dynheight {

/// A place of Q: the archimedean absolute value or a p-adic one.
struct Place {
    bool archimedean = true;
    unsigned long p = 0;

    static Place inf() { return {true, 0}; }
    static Place prime(unsigned long p) { return {false, p}; }
    bool operator==(const Place& o) const {
        return archimedean == o.archimedean && (archimedean || p == o.p);
    }
    std::string label() const { return archimedean ? "inf" : std::to_string(p); }
};

struct HeightBudget {
    int max_iterations = 64;
    mpfr_prec_t precision = 128;
    int max_refinements = 4;
    size_t max_orbit_bits = 1u << 15;  // cap on exact orbit coordinate size
};

/// Archimedean escape threshold C = scale * max{1, q_j^(1/k_j)}.
/// Kept as exact rational data; comparisons go through k-th powers so no
/// root is ever taken on the threshold side.
struct ArchEscapeRadius {
    mpq_class scale;
    std::vector<std::pair<mpq_class, unsigned long>> terms;  // (q, k): q^(1/k), q >= 0

    Cmp exceeded_by_abs(const DyadicInterval& abs_z) const;
    Cmp exceeded_by_abs_sq(const DyadicInterval& abs_sq_z) const;
    DyadicInterval log_value(mpfr_prec_t precision = 128) const;
};

/// Non-archimedean threshold C = p^(-m) with m <= 0; |z|_v > C iff v(z) < m.
struct NonArchEscapeRadius {
    unsigned long p = 2;
    mpq_class m = 0;

    bool exceeded_by_valuation(const mpq_class& v) const { return v < m; }
};

ArchEscapeRadius escape_radius_arch(const PolySpec& F);
NonArchEscapeRadius escape_radius_prime(const PolySpec& F, unsigned long p);

/// The sharper cubic threshold C* = (2)_v max{1, |A|^(1/2), |B|^(1/3)}
/// for f = z^3 + Az + B.
ArchEscapeRadius cubic_escape_radius_arch(const mpq_class& A, const mpq_class& B);
NonArchEscapeRadius cubic_escape_radius_prime(const mpq_class& A, const mpq_class& B,
                                              unsigned long p);

struct LocalHeightEstimate {
    DyadicInterval value;   // contains the conjugate-averaged local height at v
    int iterations_used = 0;
    Place place;
    bool certified = false;  // exact (non-arch) or width-controlled (arch escape)
};

/// Conjugate-averaged local canonical height at one place: for rational z
/// this is lambda_hat_{f,v}(z); for quadratic z it is the mean of the values
/// at the places of Q(sqrt(D)) over v, i.e. the per-place contribution to
/// the global canonical height.
LocalHeightEstimate local_canonical_height(const PolySpec& F, const QuadExt& z,
                                           const Place& v, const HeightBudget& budget = {});

struct HeightResult {
    DyadicInterval value;
    bool decided = true;    // false when some local estimate exhausted its budget
    int iterations = 0;
};

/// Global canonical height: sum of conjugate-averaged local heights over the
/// finitely many relevant places (computed, not guessed), with an exact-zero
/// shortcut when the orbit is proven preperiodic by exact repetition.
HeightResult canonical_height(const PolySpec& F, const QuadExt& z,
                              const HeightBudget& budget = {});

/// Critical height: sum over critical points with multiplicity e_P - 1.
HeightResult critical_height(const PolySpec& F, const HeightBudget& budget = {});

/// Telescoping upper bound h(z) + h(a_d..a_0)/(d-1) + log(d+1)/(d-1).
DyadicInterval canonical_height_upper_bound(const PolySpec& F, const QuadExt& z,
                                            mpfr_prec_t precision = 128);

/// Primes that can carry a nonzero local contribution for this (F, z),
/// plus all p <= 2d.
std::vector<unsigned long> relevant_primes(const PolySpec& F, const QuadExt& z);

} // namespace dynheight
