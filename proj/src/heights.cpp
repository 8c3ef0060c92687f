#include "dynheight/heights.hpp"

#include <set>

namespace dynheight {

mpz_class tuple_height_integer(const std::vector<mpq_class>& qs) {
    mpz_class lcm_den = 1;
    for (const auto& q : qs)
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
    mpz_class m = lcm_den;
    for (const auto& q : qs) {
        mpz_class cleared = q.get_num() * (lcm_den / q.get_den());
        mpz_class a = abs(cleared);
        if (a > m) m = a;
    }
    return m;
}

DyadicInterval rational_height(const mpq_class& q, mpfr_prec_t precision) {
    return tuple_height({q}, precision);
}

DyadicInterval tuple_height(const std::vector<mpq_class>& qs, mpfr_prec_t precision) {
    mpz_class m = tuple_height_integer(qs);
    if (m == 1) return DyadicInterval::zero(precision);
    return DyadicInterval::log_of_mpz(m, precision);
}

DyadicInterval quad_height(const QuadExt& z, mpfr_prec_t precision) {
    if (z.is_rational()) return rational_height(z.x(), precision);
    // Finite places: log+ can only be positive at primes dividing a
    // denominator of the norm or trace.
    std::set<unsigned long> primes;
    mpq_class n = z.norm(), t = z.trace();
    for (unsigned long p : prime_factors(n.get_den())) primes.insert(p);
    if (t != 0)
        for (unsigned long p : prime_factors(t.get_den())) primes.insert(p);
    DyadicInterval total = DyadicInterval::zero(precision);
    for (unsigned long p : primes) {
        auto [w1, w2] = quad_valuations(z, p);
        mpq_class coef = 0;
        if (w1 < 0) coef += -w1;
        if (w2 < 0) coef += -w2;
        if (coef != 0)
            total = total + DyadicInterval::log_of_mpz(mpz_class(p), precision).mul_q(coef);
    }
    auto [a1, a2] = arch_abs_pair(z, precision);
    total = total + a1.log_plus() + a2.log_plus();
    return total.div_2exp(1);
}

} // namespace dynheight
