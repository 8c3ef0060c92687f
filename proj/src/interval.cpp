#include "dynheight/interval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dynheight {

DyadicInterval::DyadicInterval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

DyadicInterval::DyadicInterval(const DyadicInterval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

DyadicInterval::DyadicInterval(DyadicInterval&& o) noexcept : prec_(o.prec_) {
    lo_[0] = o.lo_[0];
    hi_[0] = o.hi_[0];
    // leave o in a destructible state
    mpfr_init2(o.lo_, MPFR_PREC_MIN);
    mpfr_init2(o.hi_, MPFR_PREC_MIN);
}

DyadicInterval& DyadicInterval::operator=(const DyadicInterval& o) {
    if (this == &o) return *this;
    if (prec_ != o.prec_) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
    }
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    return *this;
}

DyadicInterval& DyadicInterval::operator=(DyadicInterval&& o) noexcept {
    std::swap(lo_[0], o.lo_[0]);
    std::swap(hi_[0], o.hi_[0]);
    std::swap(prec_, o.prec_);
    return *this;
}

DyadicInterval::~DyadicInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

DyadicInterval DyadicInterval::zero(mpfr_prec_t prec) { return DyadicInterval(prec); }

DyadicInterval DyadicInterval::from_long(long v, mpfr_prec_t prec) {
    DyadicInterval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::from_rational(const mpq_class& q, mpfr_prec_t prec) {
    DyadicInterval r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::log_of_mpz(const mpz_class& n, mpfr_prec_t prec) {
    if (n <= 0) throw std::domain_error("log_of_mpz: argument must be positive");
    DyadicInterval r(prec);
    mpfr_t t;
    mpfr_init2(t, prec + 32);
    mpfr_set_z(t, n.get_mpz_t(), MPFR_RNDD);
    mpfr_log(r.lo_, t, MPFR_RNDD);
    mpfr_set_z(t, n.get_mpz_t(), MPFR_RNDU);
    mpfr_log(r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

DyadicInterval DyadicInterval::log_of_mpq(const mpq_class& q, mpfr_prec_t prec) {
    if (q <= 0) throw std::domain_error("log_of_mpq: argument must be positive");
    DyadicInterval r(prec);
    mpfr_t t;
    mpfr_init2(t, prec + 32);
    mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDD);
    mpfr_log(r.lo_, t, MPFR_RNDD);
    mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDU);
    mpfr_log(r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

double DyadicInterval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double DyadicInterval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double DyadicInterval::width_d() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

bool DyadicInterval::is_point() const { return mpfr_equal_p(lo_, hi_); }

bool DyadicInterval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool DyadicInterval::contains(const mpq_class& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

DyadicInterval DyadicInterval::operator+(const DyadicInterval& o) const {
    DyadicInterval r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::operator-(const DyadicInterval& o) const {
    DyadicInterval r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::operator*(const DyadicInterval& o) const {
    mpfr_prec_t p = std::max(prec_, o.prec_);
    mpfr_t a, b, c, d;
    mpfr_inits2(p, a, b, c, d, (mpfr_ptr) nullptr);
    DyadicInterval r(p);
    // lower endpoint: min of the four products rounded down
    mpfr_mul(a, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(b, lo_, o.hi_, MPFR_RNDD);
    mpfr_mul(c, hi_, o.lo_, MPFR_RNDD);
    mpfr_mul(d, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, a, b, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, c, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, d, MPFR_RNDD);
    // upper endpoint: max of the four products rounded up
    mpfr_mul(a, lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(b, lo_, o.hi_, MPFR_RNDU);
    mpfr_mul(c, hi_, o.lo_, MPFR_RNDU);
    mpfr_mul(d, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, a, b, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, c, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, d, MPFR_RNDU);
    mpfr_clears(a, b, c, d, (mpfr_ptr) nullptr);
    return r;
}

DyadicInterval DyadicInterval::operator-() const {
    DyadicInterval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::square() const {
    DyadicInterval r(prec_);
    if (contains_zero()) {
        mpfr_set_zero(r.lo_, 1);
        mpfr_t a, b;
        mpfr_inits2(prec_, a, b, (mpfr_ptr) nullptr);
        mpfr_sqr(a, lo_, MPFR_RNDU);
        mpfr_sqr(b, hi_, MPFR_RNDU);
        mpfr_max(r.hi_, a, b, MPFR_RNDU);
        mpfr_clears(a, b, (mpfr_ptr) nullptr);
    } else if (mpfr_sgn(lo_) > 0) {
        mpfr_sqr(r.lo_, lo_, MPFR_RNDD);
        mpfr_sqr(r.hi_, hi_, MPFR_RNDU);
    } else {
        mpfr_sqr(r.lo_, hi_, MPFR_RNDD);
        mpfr_sqr(r.hi_, lo_, MPFR_RNDU);
    }
    return r;
}

DyadicInterval DyadicInterval::pow_ui(unsigned long k) const {
    if (k == 0) return from_long(1, prec_);
    if (k % 2 == 0) return square().pow_ui(k / 2);
    DyadicInterval acc = *this;
    for (unsigned long i = 1; i < k; ++i) acc = acc * *this;
    return acc;
}

DyadicInterval DyadicInterval::abs() const {
    DyadicInterval r(prec_);
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    mpfr_set_zero(r.lo_, 1);
    mpfr_t a;
    mpfr_init2(a, prec_);
    mpfr_neg(a, lo_, MPFR_RNDU);
    mpfr_max(r.hi_, a, hi_, MPFR_RNDU);
    mpfr_clear(a);
    return r;
}

DyadicInterval DyadicInterval::sqrt() const {
    if (mpfr_sgn(hi_) < 0) throw std::domain_error("sqrt of negative interval");
    DyadicInterval r(prec_);
    if (mpfr_sgn(lo_) <= 0) {
        mpfr_set_zero(r.lo_, 1);
    } else {
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    }
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::log_pos() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log of interval not bounded away from 0");
    DyadicInterval r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::log_plus() const {
    DyadicInterval r(prec_);
    if (mpfr_cmp_ui(hi_, 1) <= 0) return r;  // log+ = 0 exactly
    if (mpfr_cmp_ui(lo_, 1) <= 0) {
        mpfr_set_zero(r.lo_, 1);
        mpfr_log(r.hi_, hi_, MPFR_RNDU);
        return r;
    }
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::mul_q(const mpq_class& q) const {
    return *this * from_rational(q, prec_);
}

DyadicInterval DyadicInterval::div_2exp(unsigned long e) const {
    DyadicInterval r(prec_);
    mpfr_div_2exp(r.lo_, lo_, e, MPFR_RNDD);
    mpfr_div_2exp(r.hi_, hi_, e, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::mul_pow(const mpq_class& base, long expo) const {
    mpq_class factor;
    mpz_class num = 1, den = 1;
    if (expo >= 0) {
        mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(expo));
        mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(expo));
    } else {
        mpz_pow_ui(num.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(-expo));
        mpz_pow_ui(den.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(-expo));
    }
    factor = mpq_class(num) / mpq_class(den);
    factor.canonicalize();
    return mul_q(factor);
}

DyadicInterval DyadicInterval::div_pos(const DyadicInterval& o) const {
    if (mpfr_sgn(o.lo_) <= 0)
        throw std::domain_error("div_pos: divisor not bounded away from 0");
    mpfr_prec_t p = std::max(prec_, o.prec_);
    mpfr_t a, b;
    mpfr_inits2(p, a, b, (mpfr_ptr) nullptr);
    DyadicInterval r(p);
    mpfr_div(a, lo_, o.lo_, MPFR_RNDD);
    mpfr_div(b, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, a, b, MPFR_RNDD);
    mpfr_div(a, hi_, o.lo_, MPFR_RNDU);
    mpfr_div(b, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, a, b, MPFR_RNDU);
    mpfr_clears(a, b, (mpfr_ptr) nullptr);
    return r;
}

DyadicInterval DyadicInterval::hull(const DyadicInterval& a, const DyadicInterval& b) {
    DyadicInterval r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

DyadicInterval DyadicInterval::max(const DyadicInterval& a, const DyadicInterval& b) {
    DyadicInterval r(std::max(a.prec_, b.prec_));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

bool DyadicInterval::intersects(const DyadicInterval& o) const {
    return mpfr_cmp(lo_, o.hi_) <= 0 && mpfr_cmp(o.lo_, hi_) <= 0;
}

bool DyadicInterval::subset_of(const DyadicInterval& o) const {
    return mpfr_cmp(o.lo_, lo_) <= 0 && mpfr_cmp(hi_, o.hi_) <= 0;
}

Cmp DyadicInterval::gt(const mpq_class& q) const {
    if (mpfr_cmp_q(lo_, const_cast<mpq_ptr>(q.get_mpq_t())) > 0) return Cmp::True;
    if (mpfr_cmp_q(hi_, const_cast<mpq_ptr>(q.get_mpq_t())) <= 0) return Cmp::False;
    return Cmp::Unknown;
}

Cmp DyadicInterval::gt(const DyadicInterval& o) const {
    if (mpfr_cmp(lo_, o.hi_) > 0) return Cmp::True;
    if (mpfr_cmp(hi_, o.lo_) <= 0) return Cmp::False;
    return Cmp::Unknown;
}

Cmp DyadicInterval::ge(const mpq_class& q) const {
    if (mpfr_cmp_q(lo_, const_cast<mpq_ptr>(q.get_mpq_t())) >= 0) return Cmp::True;
    if (mpfr_cmp_q(hi_, const_cast<mpq_ptr>(q.get_mpq_t())) < 0) return Cmp::False;
    return Cmp::Unknown;
}

std::string DyadicInterval::to_decimal(int digits) const {
    mpfr_t mid, wid;
    mpfr_inits2(prec_ + 16, mid, wid, (mpfr_ptr) nullptr);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_2exp(mid, mid, 1, MPFR_RNDN);
    mpfr_sub(wid, hi_, lo_, MPFR_RNDU);
    mpfr_div_2exp(wid, wid, 1, MPFR_RNDU);
    char* ms = nullptr;
    char* ws = nullptr;
    mpfr_asprintf(&ms, "%.*Rg", digits, mid);
    mpfr_asprintf(&ws, "%.3Rg", wid);
    std::string out = std::string(ms) + " ± " + std::string(ws);
    mpfr_free_str(ms);
    mpfr_free_str(ws);
    mpfr_clears(mid, wid, (mpfr_ptr) nullptr);
    return out;
}

std::string DyadicInterval::to_exact() const {
    char* ls = nullptr;
    char* hs = nullptr;
    mpfr_asprintf(&ls, "%Ra", lo_);
    mpfr_asprintf(&hs, "%Ra", hi_);
    std::string out = std::string("[") + ls + ", " + hs + "]";
    mpfr_free_str(ls);
    mpfr_free_str(hs);
    return out;
}

} // namespace dynheight
