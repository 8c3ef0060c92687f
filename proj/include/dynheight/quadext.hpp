#pragma once

#include "dynheight/interval.hpp"
#include "dynheight/rational.hpp"

#include <string>
#include <utility>

namespace dynheight {

/// Element x + y*sqrt(D) of Q(sqrt(D)).  D is an arbitrary fixed rational;
/// elements with distinct D may not be mixed in one expression unless one
/// side is rational (y = 0).  For y = 0 the value is independent of D.
class QuadExt {
public:
    QuadExt() : x_(0), y_(0), d_(0) {}
    explicit QuadExt(const mpq_class& x) : x_(x), y_(0), d_(0) {}
    QuadExt(mpq_class x, mpq_class y, mpq_class d);

    static QuadExt sqrt_of(const mpq_class& d) { return QuadExt(0, 1, d); }

    const mpq_class& x() const { return x_; }
    const mpq_class& y() const { return y_; }
    const mpq_class& disc() const { return d_; }

    bool is_rational() const { return y_ == 0; }
    bool is_zero() const { return x_ == 0 && y_ == 0; }

    QuadExt conj() const { return QuadExt(x_, -y_, d_); }
    mpq_class norm() const { return x_ * x_ - d_ * y_ * y_; }
    mpq_class trace() const { return 2 * x_; }

    QuadExt operator+(const QuadExt&) const;
    QuadExt operator-(const QuadExt&) const;
    QuadExt operator*(const QuadExt&) const;
    QuadExt operator-() const;
    QuadExt inverse() const;  // requires norm != 0
    QuadExt operator/(const QuadExt&) const;

    bool operator==(const QuadExt&) const;
    bool operator!=(const QuadExt& o) const { return !(*this == o); }
    // Total order usable as a set key; elements must share D (or be rational).
    bool operator<(const QuadExt&) const;

    /// Approximate bit size of the stored rationals (orbit growth guard).
    size_t bit_size() const;

    std::string to_string() const;

private:
    mpq_class x_, y_, d_;
    // Resulting D when combining two elements; throws on a genuine mismatch.
    static mpq_class merge_disc(const QuadExt& a, const QuadExt& b);
};

/// Minimal polynomial data: z satisfies T^2 - t*T + n with t = Trace, n = Norm.
std::pair<mpq_class, mpq_class> quad_minimal_polynomial(const QuadExt& z);

/// Valuations of z and its conjugate at the places of Q(sqrt(D)) over p,
/// read off the lower Newton polygon of T^2 - tT + n.  Sorted w1 <= w2.
/// Requires z != 0.
std::pair<mpq_class, mpq_class> quad_valuations(const QuadExt& z, unsigned long p);

/// Rigorous enclosures of |x + y sqrt(D)| and |x - y sqrt(D)| (real D >= 0),
/// or of the complex modulus sqrt(x^2 + |D| y^2) reported twice (D < 0).
std::pair<DyadicInterval, DyadicInterval> arch_abs_pair(const QuadExt& z,
                                                        mpfr_prec_t precision = 128);

/// Enclosures of the one or two real/complex embeddings themselves.
/// For D < 0 returns the complex box of x + y*sqrt(D) (upper half plane rep).
struct QuadEmbedding {
    bool complex = false;
    DyadicInterval first;   // x + y sqrt(D)   (real case)
    DyadicInterval second;  // x - y sqrt(D)   (real case)
    ComplexBox box;         // D < 0
};
QuadEmbedding embed(const QuadExt& z, mpfr_prec_t precision = 128);

} // namespace dynheight
