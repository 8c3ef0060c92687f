#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace dynheight {

using Rational = mpq_class;

/// A p-adic valuation: an exact rational, or +infinity (valuation of 0).
struct ValOrInf {
    bool infinite = false;
    mpq_class value = 0;

    static ValOrInf inf() { return {true, 0}; }
    static ValOrInf of(const mpq_class& v) { return {false, v}; }

    bool operator==(const ValOrInf& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

bool is_prime(unsigned long p);

/// v_p(q): the exponent of p in q, +infinity for q = 0.
/// Throws std::invalid_argument for non-prime p.
ValOrInf padic_valuation(const mpq_class& q, unsigned long p);

/// Integer-valued valuation for nonzero q (convenience over padic_valuation).
long padic_valuation_exact(const mpq_class& q, unsigned long p);

/// Exact k-th root of a rational, if one exists in Q.
std::optional<mpq_class> rational_kth_root(const mpq_class& q, unsigned long k);

/// Distinct prime factors of |n| (n != 0).
std::vector<unsigned long> prime_factors(const mpz_class& n);

} // namespace dynheight
