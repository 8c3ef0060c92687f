#pragma once

#include "dynheight/heights.hpp"
#include "dynheight/quadext.hpp"
#include "dynheight/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynheight {

enum class FormTag { Raw, MonicCentred, CriticalParam };

/// Raised when a normal-form change needs a root that leaves Q and the
/// supported quadratic extensions.
struct UnsupportedField : std::domain_error {
    using std::domain_error::domain_error;
};

/// Affine change of variables psi(z) = alpha*z + gamma, alpha != 0.
/// Rational maps are QuadExt values with y = 0.
struct AffineMap {
    QuadExt alpha;
    QuadExt gamma;

    static AffineMap identity() { return {QuadExt(mpq_class(1)), QuadExt(mpq_class(0))}; }
    bool is_identity() const {
        return alpha == QuadExt(mpq_class(1)) && gamma == QuadExt(mpq_class(0));
    }
    AffineMap compose(const AffineMap& inner) const {  // this ∘ inner
        return {alpha * inner.alpha, alpha * inner.gamma + gamma};
    }
    AffineMap inverse() const {
        QuadExt ai = alpha.inverse();
        return {ai, -(ai * gamma)};
    }
};

/// Critical points c_1, ..., c_{d-1} defining the normal form f_c with
/// f_c'(z) = prod (z - c_i) and f_c(0) = 0.
using CriticalVector = std::vector<mpq_class>;

struct CriticalPoint {
    QuadExt location;
    int multiplicity = 1;  // order of vanishing of f' at the point
};

/// Degree-d polynomial over Q, coefficient of z^i at coeffs[i].
class PolySpec {
public:
    PolySpec(std::vector<mpq_class> coeffs, FormTag tag = FormTag::Raw);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }
    const mpq_class& coeff(int i) const { return coeffs_[static_cast<size_t>(i)]; }
    const mpq_class& leading() const { return coeffs_.back(); }
    FormTag tag() const { return tag_; }
    const std::optional<CriticalVector>& critical_vector() const { return cvec_; }

    mpq_class eval(const mpq_class& z) const;
    QuadExt eval(const QuadExt& z) const;
    DyadicInterval eval(const DyadicInterval& z) const;
    ComplexBox eval(const ComplexBox& z) const;

    bool operator==(const PolySpec& o) const {
        return coeffs_ == o.coeffs_;  // tags are derived bookkeeping
    }

    /// Canonical text form `d; a_d, ..., a_0` with rationals as num/den.
    std::string to_string() const;
    static PolySpec from_string(const std::string&);

    friend PolySpec from_critical_points(const CriticalVector& c);

private:
    std::vector<mpq_class> coeffs_;
    FormTag tag_;
    std::optional<CriticalVector> cvec_;
};

/// f_c(z): the unique antiderivative of prod(z - c_i) vanishing at 0,
/// so a_j = (-1)^{d-j} e_{d-j}(c) / j for 1 <= j <= d.
PolySpec from_critical_points(const CriticalVector& c);

/// psi^{-1} ∘ F ∘ psi, computed exactly.  Coefficients of the result must be
/// rational; otherwise UnsupportedField is thrown.
PolySpec affine_conjugate(const PolySpec& F, const AffineMap& psi);

/// Monic centred representative G = F^psi together with the psi used.
std::pair<PolySpec, AffineMap> to_monic_centred(const PolySpec& F);

/// Critical points of z^3 + Az + B: ±alpha with alpha^2 = -A/3, or the
/// single point 0 of multiplicity 2 when A = 0.
std::vector<CriticalPoint> critical_points_cubic(const mpq_class& A, const mpq_class& B);

/// Critical points with multiplicity for d = 2, 3, CriticalParam forms of
/// any degree, and any F whose derivative is c*z^k*(quadratic or less).
std::vector<CriticalPoint> critical_points(const PolySpec& F);

/// The forms G_i(c) = f_c(c_i): homogeneous of degree d in c.
std::vector<mpq_class> g_forms(const CriticalVector& c);

PolySpec derivative(const PolySpec& F);

DyadicInterval coefficient_height(const PolySpec& F, mpfr_prec_t precision = 128);
DyadicInterval monic_centred_height(const PolySpec& F, mpfr_prec_t precision = 128);

/// Report of one inequality check: exact where both sides are logs of
/// integers, interval-certified otherwise.
struct InequalityCheck {
    std::string name;
    DyadicInterval lhs;
    DyadicInterval rhs;
    bool holds = false;
};

/// The affine-conjugation, roots-vs-coefficients, and derivative height
/// bounds, each evaluated on F (with auxiliary data where needed).
InequalityCheck check_affine_height_bound(const PolySpec& F, const AffineMap& psi);
InequalityCheck check_roots_height_bound(const std::vector<mpq_class>& roots);
std::vector<InequalityCheck> check_derivative_height_bounds(const PolySpec& F);

std::vector<InequalityCheck> height_inequality_checks(const PolySpec& F);

} // namespace dynheight
