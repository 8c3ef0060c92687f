#include "dynheight/polyspec.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dynheight {

namespace {

FormTag detect_tag(const std::vector<mpq_class>& coeffs) {
    size_t d = coeffs.size() - 1;
    if (d >= 2 && coeffs[d] == 1 && coeffs[d - 1] == 0) return FormTag::MonicCentred;
    return FormTag::Raw;
}

std::optional<mpq_class> square_root_q(const mpq_class& q) {
    return rational_kth_root(q, 2);
}

// Elementary symmetric polynomials e_0..e_n of the values.
std::vector<mpq_class> elementary_symmetric(const std::vector<mpq_class>& c) {
    std::vector<mpq_class> e(c.size() + 1, 0);
    e[0] = 1;
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t k = std::min(i + 1, c.size()); k >= 1; --k)
            e[k] += c[i] * e[k - 1];
    return e;
}

} // namespace

PolySpec::PolySpec(std::vector<mpq_class> coeffs, FormTag tag)
    : coeffs_(std::move(coeffs)), tag_(tag) {
    if (coeffs_.size() < 2) throw std::invalid_argument("PolySpec: degree must be >= 1");
    if (coeffs_.back() == 0) throw std::invalid_argument("PolySpec: leading coefficient is zero");
    for (auto& q : coeffs_) q.canonicalize();
    int d = degree();
    if (tag_ == FormTag::MonicCentred &&
        (coeffs_[static_cast<size_t>(d)] != 1 || coeffs_[static_cast<size_t>(d - 1)] != 0))
        throw std::invalid_argument("PolySpec: MonicCentred tag violated");
    if (tag_ == FormTag::CriticalParam &&
        (coeffs_[static_cast<size_t>(d)] != mpq_class(1, d) || coeffs_[0] != 0))
        throw std::invalid_argument("PolySpec: CriticalParam tag violated");
}

mpq_class PolySpec::eval(const mpq_class& z) const {
    mpq_class acc = coeffs_.back();
    for (size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
}

QuadExt PolySpec::eval(const QuadExt& z) const {
    QuadExt acc(coeffs_.back());
    for (size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * z + QuadExt(coeffs_[i]);
    return acc;
}

DyadicInterval PolySpec::eval(const DyadicInterval& z) const {
    mpfr_prec_t p = z.precision();
    DyadicInterval acc = DyadicInterval::from_rational(coeffs_.back(), p);
    for (size_t i = coeffs_.size() - 1; i-- > 0;)
        acc = acc * z + DyadicInterval::from_rational(coeffs_[i], p);
    return acc;
}

ComplexBox PolySpec::eval(const ComplexBox& z) const {
    mpfr_prec_t p = z.re.precision();
    ComplexBox acc{DyadicInterval::from_rational(coeffs_.back(), p), DyadicInterval::zero(p)};
    for (size_t i = coeffs_.size() - 1; i-- > 0;) {
        acc = acc * z;
        acc.re = acc.re + DyadicInterval::from_rational(coeffs_[i], p);
    }
    return acc;
}

std::string PolySpec::to_string() const {
    std::ostringstream os;
    os << degree() << ";";
    for (size_t i = coeffs_.size(); i-- > 0;) {
        os << " " << coeffs_[i].get_str();
        if (i > 0) os << ",";
    }
    return os.str();
}

PolySpec PolySpec::from_string(const std::string& s) {
    auto semi = s.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("PolySpec::from_string: missing ';'");
    int d = std::stoi(s.substr(0, semi));
    std::vector<mpq_class> coeffs;
    std::string rest = s.substr(semi + 1);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (tok.empty()) continue;
        mpq_class q(tok);
        q.canonicalize();
        coeffs.push_back(q);
    }
    if (static_cast<int>(coeffs.size()) != d + 1)
        throw std::invalid_argument("PolySpec::from_string: coefficient count mismatch");
    std::reverse(coeffs.begin(), coeffs.end());
    FormTag tag = detect_tag(coeffs);
    return PolySpec(std::move(coeffs), tag);
}

PolySpec from_critical_points(const CriticalVector& c) {
    int d = static_cast<int>(c.size()) + 1;
    if (d < 2) throw std::invalid_argument("from_critical_points: need at least one point");
    auto e = elementary_symmetric(c);
    std::vector<mpq_class> coeffs(static_cast<size_t>(d) + 1, 0);
    for (int j = 1; j <= d; ++j) {
        mpq_class a = e[static_cast<size_t>(d - j)] / j;
        if ((d - j) % 2 != 0) a = -a;
        coeffs[static_cast<size_t>(j)] = a;
    }
    PolySpec F(std::move(coeffs), FormTag::CriticalParam);
    F.cvec_ = c;
    return F;
}

namespace {

// psi^{-1} ∘ F ∘ psi with QuadExt scalars; result coefficients.
std::vector<QuadExt> conjugate_coeffs(const std::vector<mpq_class>& coeffs,
                                      const QuadExt& alpha, const QuadExt& gamma) {
    // Horner on the linear polynomial alpha*z + gamma.
    std::vector<QuadExt> acc{QuadExt(coeffs.back())};
    for (size_t i = coeffs.size() - 1; i-- > 0;) {
        std::vector<QuadExt> next(acc.size() + 1, QuadExt(mpq_class(0)));
        for (size_t j = 0; j < acc.size(); ++j) {
            next[j + 1] = next[j + 1] + acc[j] * alpha;
            next[j] = next[j] + acc[j] * gamma;
        }
        next[0] = next[0] + QuadExt(coeffs[i]);
        acc = std::move(next);
    }
    acc[0] = acc[0] - gamma;
    QuadExt ainv = alpha.inverse();
    for (auto& q : acc) q = q * ainv;
    return acc;
}

} // namespace

PolySpec affine_conjugate(const PolySpec& F, const AffineMap& psi) {
    if (psi.alpha.is_zero()) throw std::invalid_argument("affine_conjugate: alpha = 0");
    auto qcoeffs = conjugate_coeffs(F.coeffs(), psi.alpha, psi.gamma);
    std::vector<mpq_class> coeffs;
    coeffs.reserve(qcoeffs.size());
    for (const auto& q : qcoeffs) {
        if (!q.is_rational())
            throw UnsupportedField("affine_conjugate: conjugate leaves Q");
        coeffs.push_back(q.x());
    }
    FormTag tag = detect_tag(coeffs);
    return PolySpec(std::move(coeffs), tag);
}

std::pair<PolySpec, AffineMap> to_monic_centred(const PolySpec& F) {
    int d = F.degree();
    if (d < 2) throw std::invalid_argument("to_monic_centred: degree must be >= 2");
    if (F.tag() == FormTag::MonicCentred) return {F, AffineMap::identity()};
    mpq_class gamma0 = -F.coeff(d - 1) / (d * F.leading());
    mpq_class target = 1 / F.leading();

    QuadExt alpha;
    unsigned long k = static_cast<unsigned long>(d - 1);
    if (auto r = rational_kth_root(target, k)) {
        alpha = QuadExt(*r);
    } else if (k % 2 == 0) {
        // alpha = sqrt(beta) with beta^(k/2) = 1/a_d
        auto beta = rational_kth_root(target, k / 2);
        if (!beta) throw UnsupportedField("to_monic_centred: unsupported coefficient field");
        if (auto s = rational_kth_root(*beta, 2))
            alpha = QuadExt(*s);
        else
            alpha = QuadExt::sqrt_of(*beta);
    } else {
        throw UnsupportedField("to_monic_centred: unsupported coefficient field");
    }

    AffineMap psi{alpha, QuadExt(gamma0)};
    auto qcoeffs = conjugate_coeffs(F.coeffs(), psi.alpha, psi.gamma);
    std::vector<mpq_class> coeffs;
    for (const auto& q : qcoeffs) {
        if (!q.is_rational())
            throw UnsupportedField("to_monic_centred: unsupported coefficient field");
        coeffs.push_back(q.x());
    }
    return {PolySpec(std::move(coeffs), FormTag::MonicCentred), psi};
}

std::vector<CriticalPoint> critical_points_cubic(const mpq_class& A, const mpq_class& B) {
    (void)B;
    if (A == 0) return {{QuadExt(mpq_class(0)), 2}};
    mpq_class D = -A / 3;
    if (auto q = square_root_q(D)) return {{QuadExt(*q), 1}, {QuadExt(-*q), 1}};
    QuadExt a = QuadExt::sqrt_of(D);
    return {{a, 1}, {-a, 1}};
}

std::vector<CriticalPoint> critical_points(const PolySpec& F) {
    if (F.tag() == FormTag::CriticalParam && F.critical_vector()) {
        std::map<mpq_class, int> mult;
        for (const auto& ci : *F.critical_vector()) mult[ci] += 1;
        std::vector<CriticalPoint> pts;
        for (const auto& [c, m] : mult) pts.push_back({QuadExt(c), m});
        return pts;
    }
    PolySpec Fp = derivative(F);
    const auto& b = Fp.coeffs();
    size_t k = 0;
    while (b[k] == 0) ++k;  // leading coefficient is nonzero, so this terminates
    std::vector<CriticalPoint> pts;
    if (k > 0) pts.push_back({QuadExt(mpq_class(0)), static_cast<int>(k)});
    size_t rdeg = b.size() - 1 - k;
    if (rdeg == 0) return pts;
    if (rdeg == 1) {
        pts.push_back({QuadExt(-b[k] / b[k + 1]), 1});
        return pts;
    }
    if (rdeg == 2) {
        const mpq_class &c0 = b[k], &c1 = b[k + 1], &c2 = b[k + 2];
        mpq_class disc = c1 * c1 - 4 * c2 * c0;
        if (disc == 0) {
            pts.push_back({QuadExt(-c1 / (2 * c2)), 2});
        } else if (auto s = square_root_q(disc)) {
            pts.push_back({QuadExt((-c1 + *s) / (2 * c2)), 1});
            pts.push_back({QuadExt((-c1 - *s) / (2 * c2)), 1});
        } else {
            mpq_class x = -c1 / (2 * c2), y = 1 / (2 * c2);
            pts.push_back({QuadExt(x, y, disc), 1});
            pts.push_back({QuadExt(x, -y, disc), 1});
        }
        return pts;
    }
    throw UnsupportedField("critical_points: critical locus leaves supported fields");
}

std::vector<mpq_class> g_forms(const CriticalVector& c) {
    PolySpec f = from_critical_points(c);
    std::vector<mpq_class> out;
    out.reserve(c.size());
    for (const auto& ci : c) out.push_back(f.eval(ci));
    return out;
}

PolySpec derivative(const PolySpec& F) {
    std::vector<mpq_class> coeffs;
    coeffs.reserve(F.coeffs().size() - 1);
    for (size_t i = 1; i < F.coeffs().size(); ++i)
        coeffs.push_back(mpq_class(i) * F.coeffs()[i]);
    return PolySpec(std::move(coeffs));
}

DyadicInterval coefficient_height(const PolySpec& F, mpfr_prec_t precision) {
    return tuple_height(F.coeffs(), precision);
}

DyadicInterval monic_centred_height(const PolySpec& F, mpfr_prec_t precision) {
    auto [G, psi] = to_monic_centred(F);
    std::vector<mpq_class> tail(G.coeffs().begin(), G.coeffs().begin() + (G.degree() - 1));
    return tuple_height(tail, precision);
}

InequalityCheck check_affine_height_bound(const PolySpec& F, const AffineMap& psi) {
    if (!psi.alpha.is_rational() || !psi.gamma.is_rational())
        throw std::invalid_argument("check_affine_height_bound: rational psi required");
    unsigned long d = static_cast<unsigned long>(F.degree());
    PolySpec G = affine_conjugate(F, psi);
    mpz_class lhs = tuple_height_integer(G.coeffs());
    mpz_class ha = tuple_height_integer({psi.alpha.x()});
    mpz_class hg = tuple_height_integer({psi.gamma.x()});
    mpz_class rhs = tuple_height_integer(F.coeffs());
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), mpz_class(ha * hg).get_mpz_t(), d);
    rhs *= scale;
    mpz_class two_d;
    mpz_ui_pow_ui(two_d.get_mpz_t(), 2, d);
    rhs *= two_d * d;
    InequalityCheck r;
    r.name = "affine-conjugation height bound";
    r.lhs = DyadicInterval::log_of_mpz(lhs);
    r.rhs = DyadicInterval::log_of_mpz(rhs);
    r.holds = lhs <= rhs;
    return r;
}

InequalityCheck check_roots_height_bound(const std::vector<mpq_class>& roots) {
    unsigned long d = static_cast<unsigned long>(roots.size());
    // Monic polynomial with the given roots.
    std::vector<mpq_class> coeffs(d + 1, 0);
    coeffs[d] = 1;
    {
        std::vector<mpq_class> acc{1};
        for (const auto& r : roots) {
            std::vector<mpq_class> next(acc.size() + 1, 0);
            for (size_t j = 0; j < acc.size(); ++j) {
                next[j + 1] += acc[j];
                next[j] -= acc[j] * r;
            }
            acc = std::move(next);
        }
        for (size_t i = 0; i < acc.size(); ++i) coeffs[i] = acc[i];
    }
    std::vector<mpq_class> tail(coeffs.begin(), coeffs.end() - 1);
    mpz_class m = tuple_height_integer(tail);
    mpz_class prod = 1;
    for (const auto& r : roots) prod *= tuple_height_integer({r});
    mpz_class two_d;
    mpz_ui_pow_ui(two_d.get_mpz_t(), 2, d);
    InequalityCheck r;
    r.name = "roots-vs-coefficients height bound";
    r.lhs = DyadicInterval::log_of_mpz(m);
    r.rhs = DyadicInterval::log_of_mpz(prod * two_d);
    // two-sided: prod/2^d <= m <= prod*2^d
    r.holds = (m * two_d >= prod) && (m <= prod * two_d);
    return r;
}

std::vector<InequalityCheck> check_derivative_height_bounds(const PolySpec& F) {
    if (F.coeff(0) != 0)
        throw std::invalid_argument("check_derivative_height_bounds: F(0) must be 0");
    unsigned long d = static_cast<unsigned long>(F.degree());
    PolySpec Fp = derivative(F);
    mpz_class mf = tuple_height_integer(F.coeffs());
    mpz_class mfp = tuple_height_integer(Fp.coeffs());
    std::vector<InequalityCheck> out;
    {
        InequalityCheck c;
        c.name = "h(F') <= h(F) + log d";
        c.lhs = DyadicInterval::log_of_mpz(mfp);
        c.rhs = DyadicInterval::log_of_mpz(mf * d);
        c.holds = mfp <= mf * d;
        out.push_back(std::move(c));
    }
    {
        // h(F) <= h(F') + 1.26 d, with 1.26 = 63/50
        InequalityCheck c;
        c.name = "h(F) <= h(F') + 1.26 deg(F)";
        c.lhs = DyadicInterval::log_of_mpz(mf, 192);
        c.rhs = DyadicInterval::log_of_mpz(mfp, 192) +
                DyadicInterval::from_rational(mpq_class(63 * d, 50), 192);
        c.holds = (c.rhs.gt(c.lhs) != Cmp::False);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<InequalityCheck> height_inequality_checks(const PolySpec& F) {
    std::vector<InequalityCheck> out;
    // Drop the constant term so the derivative bound's F(0) = 0 premise holds.
    std::vector<mpq_class> shifted = F.coeffs();
    shifted[0] = 0;
    for (auto& c : check_derivative_height_bounds(PolySpec(shifted))) out.push_back(c);
    out.push_back(check_affine_height_bound(
        F, AffineMap{QuadExt(mpq_class(1)), QuadExt(mpq_class(1))}));
    return out;
}

} // namespace dynheight
