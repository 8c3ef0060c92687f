#include "dynheight/quadext.hpp"

#include <sstream>
#include <stdexcept>

namespace dynheight {

namespace {

bool is_perfect_square_q(const mpq_class& q, mpq_class& root) {
    if (q < 0) return false;
    mpz_class rn, rd;
    if (!mpz_perfect_square_p(q.get_num_mpz_t())) return false;
    if (!mpz_perfect_square_p(q.get_den_mpz_t())) return false;
    mpz_sqrt(rn.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), q.get_den_mpz_t());
    root = mpq_class(rn) / mpq_class(rd);
    root.canonicalize();
    return true;
}

} // namespace

QuadExt::QuadExt(mpq_class x, mpq_class y, mpq_class d)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {
    if (y_ == 0) d_ = 0;
}

mpq_class QuadExt::merge_disc(const QuadExt& a, const QuadExt& b) {
    if (a.y_ == 0) return b.d_;
    if (b.y_ == 0) return a.d_;
    if (a.d_ != b.d_)
        throw std::invalid_argument("QuadExt: mixing elements of distinct Q(sqrt(D))");
    return a.d_;
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
    return QuadExt(x_ + o.x_, y_ + o.y_, merge_disc(*this, o));
}

QuadExt QuadExt::operator-(const QuadExt& o) const {
    return QuadExt(x_ - o.x_, y_ - o.y_, merge_disc(*this, o));
}

QuadExt QuadExt::operator*(const QuadExt& o) const {
    mpq_class d = merge_disc(*this, o);
    return QuadExt(x_ * o.x_ + d * y_ * o.y_, x_ * o.y_ + y_ * o.x_, d);
}

QuadExt QuadExt::operator-() const { return QuadExt(-x_, -y_, d_); }

QuadExt QuadExt::inverse() const {
    mpq_class n = norm();
    if (n == 0) throw std::domain_error("QuadExt: inverse of norm-zero element");
    return QuadExt(x_ / n, -y_ / n, d_);
}

QuadExt QuadExt::operator/(const QuadExt& o) const { return *this * o.inverse(); }

bool QuadExt::operator==(const QuadExt& o) const {
    if (y_ == 0 && o.y_ == 0) return x_ == o.x_;
    if (y_ == 0 || o.y_ == 0) return false;
    if (d_ != o.d_)
        throw std::invalid_argument("QuadExt: comparing elements of distinct Q(sqrt(D))");
    return x_ == o.x_ && y_ == o.y_;
}

bool QuadExt::operator<(const QuadExt& o) const {
    int c = cmp(x_, o.x_);
    if (c != 0) return c < 0;
    return cmp(y_, o.y_) < 0;
}

size_t QuadExt::bit_size() const {
    return mpz_sizeinbase(x_.get_num_mpz_t(), 2) + mpz_sizeinbase(x_.get_den_mpz_t(), 2) +
           mpz_sizeinbase(y_.get_num_mpz_t(), 2) + mpz_sizeinbase(y_.get_den_mpz_t(), 2);
}

std::string QuadExt::to_string() const {
    if (y_ == 0) return x_.get_str();
    std::ostringstream os;
    if (x_ != 0) os << x_.get_str() << (y_ > 0 ? "+" : "");
    if (y_ == 1) {
        // nothing
    } else if (y_ == -1) {
        os << "-";
    } else {
        os << y_.get_str() << "*";
    }
    os << "sqrt(" << d_.get_str() << ")";
    return os.str();
}

std::pair<mpq_class, mpq_class> quad_minimal_polynomial(const QuadExt& z) {
    return {z.trace(), z.norm()};
}

std::pair<mpq_class, mpq_class> quad_valuations(const QuadExt& z, unsigned long p) {
    if (z.is_zero()) throw std::invalid_argument("quad_valuations: z must be nonzero");
    if (!is_prime(p)) throw std::invalid_argument("quad_valuations: p must be prime");
    if (z.is_rational()) {
        mpq_class v(padic_valuation_exact(z.x(), p));
        return {v, v};
    }
    mpq_class n = z.norm();
    mpq_class t = z.trace();
    if (n == 0)
        throw std::domain_error("quad_valuations: norm-zero element (D is a square in Q)");
    mpq_class vn(padic_valuation_exact(n, p));
    // Lower Newton polygon of T^2 - tT + n over the vertices
    // (0, v(n)), (1, v(t)), (2, 0).  One segment when the middle vertex
    // lies on or above the chord.
    bool single = (t == 0);
    mpq_class vt = 0;
    if (!single) {
        vt = padic_valuation_exact(t, p);
        single = (2 * vt >= vn);
    }
    if (single) {
        mpq_class half = vn / 2;
        return {half, half};
    }
    mpq_class other = vn - vt;
    if (vt <= other) return {vt, other};
    return {other, vt};
}

std::pair<DyadicInterval, DyadicInterval> arch_abs_pair(const QuadExt& z,
                                                        mpfr_prec_t precision) {
    QuadEmbedding e = embed(z, precision);
    if (e.complex) {
        DyadicInterval m = e.box.abs_sq().sqrt();
        return {m, m};
    }
    return {e.first.abs(), e.second.abs()};
}

QuadEmbedding embed(const QuadExt& z, mpfr_prec_t precision) {
    QuadEmbedding e;
    DyadicInterval x = DyadicInterval::from_rational(z.x(), precision);
    if (z.is_rational()) {
        e.first = x;
        e.second = x;
        return e;
    }
    DyadicInterval y = DyadicInterval::from_rational(z.y(), precision);
    if (z.disc() >= 0) {
        mpq_class root;
        DyadicInterval s = is_perfect_square_q(z.disc(), root)
                               ? DyadicInterval::from_rational(root, precision)
                               : DyadicInterval::from_rational(z.disc(), precision).sqrt();
        e.first = x + y * s;
        e.second = x - y * s;
        return e;
    }
    e.complex = true;
    DyadicInterval s = DyadicInterval::from_rational(-z.disc(), precision).sqrt();
    e.box = ComplexBox{x, y * s};
    return e;
}

} // namespace dynheight
