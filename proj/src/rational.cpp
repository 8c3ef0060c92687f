#include "dynheight/rational.hpp"

#include <stdexcept>

namespace dynheight {

bool is_prime(unsigned long p) {
    mpz_class z(p);
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

ValOrInf padic_valuation(const mpq_class& q, unsigned long p) {
    if (p < 2 || !is_prime(p))
        throw std::invalid_argument("padic_valuation: p must be prime");
    if (q == 0) return ValOrInf::inf();
    return ValOrInf::of(padic_valuation_exact(q, p));
}

long padic_valuation_exact(const mpq_class& q, unsigned long p) {
    if (q == 0) throw std::invalid_argument("padic_valuation_exact: q must be nonzero");
    mpz_class pz(p), tmp;
    long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_num_mpz_t(), pz.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_den_mpz_t(), pz.get_mpz_t()));
    return vn - vd;
}

std::optional<mpq_class> rational_kth_root(const mpq_class& q, unsigned long k) {
    if (k == 0) throw std::invalid_argument("rational_kth_root: k must be positive");
    if (k == 1) return q;
    if (q == 0) return mpq_class(0);
    bool neg = q < 0;
    if (neg && k % 2 == 0) return std::nullopt;
    mpq_class a = neg ? mpq_class(-q) : q;
    mpz_class rn, rd;
    if (!mpz_root(rn.get_mpz_t(), a.get_num_mpz_t(), k)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), a.get_den_mpz_t(), k)) return std::nullopt;
    mpq_class r = mpq_class(rn) / mpq_class(rd);
    r.canonicalize();
    return neg ? mpq_class(-r) : r;
}

std::vector<unsigned long> prime_factors(const mpz_class& n) {
    if (n == 0) throw std::invalid_argument("prime_factors: n must be nonzero");
    mpz_class m = abs(n);
    std::vector<unsigned long> out;
    for (unsigned long p = 2; mpz_cmp_ui(m.get_mpz_t(), 1) > 0;) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            out.push_back(p);
            do {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
        }
        // once the residual is prime, stop trial division
        if (mpz_cmp_ui(m.get_mpz_t(), 1) > 0 && mpz_probab_prime_p(m.get_mpz_t(), 40)) {
            if (!m.fits_ulong_p())
                throw std::domain_error("prime_factors: prime factor exceeds machine range");
            out.push_back(m.get_ui());
            break;
        }
        p = (p == 2) ? 3 : p + 2;
    }
    return out;
}

} // namespace dynheight
