#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace dynheight {

/// Three-valued answer for comparisons between rigorous enclosures.
/// `Unknown` means the intervals overlap; callers refine and retry.
enum class Cmp { True, False, Unknown };

/// Rigorous real enclosure [lo, hi] with binary floating endpoints.
/// Every operation rounds outward, so the result always contains the
/// exact image of the inputs.
class DyadicInterval {
public:
    explicit DyadicInterval(mpfr_prec_t prec = 128);
    DyadicInterval(const DyadicInterval&);
    DyadicInterval(DyadicInterval&&) noexcept;
    DyadicInterval& operator=(const DyadicInterval&);
    DyadicInterval& operator=(DyadicInterval&&) noexcept;
    ~DyadicInterval();

    static DyadicInterval zero(mpfr_prec_t prec = 128);
    static DyadicInterval from_long(long v, mpfr_prec_t prec = 128);
    static DyadicInterval from_rational(const mpq_class& q, mpfr_prec_t prec = 128);
    // Enclosure of log(n) for an exact positive integer.
    static DyadicInterval log_of_mpz(const mpz_class& n, mpfr_prec_t prec = 128);
    // Enclosure of log(q) for an exact positive rational.
    static DyadicInterval log_of_mpq(const mpq_class& q, mpfr_prec_t prec = 128);

    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    mpfr_prec_t precision() const { return prec_; }

    double lo_d() const;   // rounded down
    double hi_d() const;   // rounded up
    double width_d() const; // upper bound on hi - lo

    bool is_point() const;
    bool contains_zero() const;
    bool contains(const mpq_class& q) const;

    DyadicInterval operator+(const DyadicInterval&) const;
    DyadicInterval operator-(const DyadicInterval&) const;
    DyadicInterval operator*(const DyadicInterval&) const;
    DyadicInterval operator-() const;
    DyadicInterval square() const;
    DyadicInterval pow_ui(unsigned long k) const;
    DyadicInterval abs() const;
    DyadicInterval sqrt() const;         // requires hi >= 0; lo clamped to 0
    DyadicInterval log_pos() const;      // requires lo > 0
    DyadicInterval log_plus() const;     // log max(1, x); requires hi >= 0 meaningfully
    DyadicInterval mul_q(const mpq_class& q) const;
    DyadicInterval div_2exp(unsigned long e) const;
    // Scale by the exact rational d^{-n} for integer d >= 2.
    DyadicInterval mul_pow(const mpq_class& base, long expo) const;
    // Division by an interval bounded away from 0 (o.lo > 0 required).
    DyadicInterval div_pos(const DyadicInterval& o) const;

    static DyadicInterval hull(const DyadicInterval&, const DyadicInterval&);
    static DyadicInterval max(const DyadicInterval&, const DyadicInterval&);
    bool intersects(const DyadicInterval&) const;
    bool subset_of(const DyadicInterval&) const;

    Cmp gt(const mpq_class& q) const;           // x > q ?
    Cmp gt(const DyadicInterval& other) const;  // x > y ?
    Cmp ge(const mpq_class& q) const;           // x >= q ?

    std::string to_decimal(int digits = 15) const;  // "m ± w"
    std::string to_exact() const;                   // dyadic endpoints

private:
    mpfr_t lo_;
    mpfr_t hi_;
    mpfr_prec_t prec_;
};

/// Axis-aligned rectangle enclosing a complex value.
struct ComplexBox {
    DyadicInterval re;
    DyadicInterval im;

    ComplexBox operator+(const ComplexBox& o) const { return {re + o.re, im + o.im}; }
    ComplexBox operator*(const ComplexBox& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexBox mul_q(const mpq_class& q) const { return {re.mul_q(q), im.mul_q(q)}; }
    DyadicInterval abs_sq() const { return re.square() + im.square(); }
};

} // namespace dynheight
