#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynheight/parse.hpp"
#include "dynheight/polyspec.hpp"

#include <random>

using namespace dynheight;

namespace {

mpq_class random_rational(std::mt19937_64& rng, long num_range = 100, long den_range = 12) {
    std::uniform_int_distribution<long> num(-num_range, num_range);
    std::uniform_int_distribution<long> den(1, den_range);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

PolySpec random_poly(std::mt19937_64& rng, int degree) {
    std::vector<mpq_class> coeffs(static_cast<size_t>(degree) + 1);
    for (auto& c : coeffs) c = random_rational(rng);
    while (coeffs.back() == 0) coeffs.back() = random_rational(rng);
    return PolySpec(std::move(coeffs));
}

} // namespace

TEST_CASE("construction and evaluation") {
    PolySpec F({mpq_class(1, 2), mpq_class(-3), mpq_class(0), mpq_class(1)});
    CHECK(F.degree() == 3);
    CHECK(F.leading() == 1);
    CHECK(F.eval(mpq_class(2)) == mpq_class(2) * 2 * 2 - 6 + mpq_class(1, 2));
    CHECK_THROWS(PolySpec({mpq_class(1), mpq_class(0)}));  // zero leading coefficient
}

TEST_CASE("string round-trip") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        PolySpec F = random_poly(rng, 2 + static_cast<int>(rng() % 4));
        CHECK(PolySpec::from_string(F.to_string()) == F);
        CHECK(parse_polynomial(F.to_string().substr(F.to_string().find(';') + 1)).degree() ==
              F.degree());
    }
    CHECK(PolySpec({mpq_class(1, 2), mpq_class(-3), mpq_class(0), mpq_class(1)}).to_string() ==
          "3; 1, 0, -3, 1/2");
}

TEST_CASE("expression parser") {
    CHECK(parse_polynomial("z^3 - 3*z + 1/2").to_string() == "3; 1, 0, -3, 1/2");
    CHECK(parse_polynomial("1,0,-3,1/2").to_string() == "3; 1, 0, -3, 1/2");
    CHECK(parse_polynomial("(z - 1)*(z + 1)").to_string() == "2; 1, 0, -1");
    CHECK(parse_polynomial("z^3/3 - z").to_string() == "3; 1/3, 0, -1, 0");
    CHECK_THROWS_AS(parse_polynomial("z^3 + "), ParseError);
    CHECK_THROWS_AS(parse_polynomial("w^2"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("z / z"), ParseError);
}

TEST_CASE("point parser") {
    CHECK(parse_point("-7/3") == QuadExt(mpq_class(-7, 3)));
    QuadExt z = parse_point("1/2 + 3*sqrt(-2)");
    CHECK(z.x() == mpq_class(1, 2));
    CHECK(z.y() == 3);
    CHECK(z.disc() == -2);
    CHECK(parse_point("sqrt(9)") == QuadExt(mpq_class(3)));   // exact root collapses
    CHECK(parse_point("sqrt(-4)") == QuadExt(0, 2, -1));
    CHECK(parse_point("sqrt(5)/2") == QuadExt(0, mpq_class(1, 2), 5));
    CHECK_THROWS_AS(parse_point("sqrt(sqrt(2))"), ParseError);
}

TEST_CASE("critical-point normal form") {
    // f_c' (z) = prod (z - c_i) and f_c(0) = 0
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 50; ++i) {
        CriticalVector c = {random_rational(rng), random_rational(rng)};
        PolySpec F = from_critical_points(c);
        CHECK(F.degree() == 3);
        CHECK(F.eval(mpq_class(0)) == 0);
        PolySpec D = derivative(F);
        CHECK(D.eval(c[0]) == 0);
        CHECK(D.eval(c[1]) == 0);
        CHECK(F.tag() == FormTag::CriticalParam);
    }
    CHECK(from_critical_points({mpq_class(1), mpq_class(-1)}).to_string() ==
          "3; 1/3, 0, -1, 0");
}

TEST_CASE("g forms are the critical values") {
    CriticalVector c = {mpq_class(2), mpq_class(-1, 2)};
    PolySpec F = from_critical_points(c);
    auto g = g_forms(c);
    REQUIRE(g.size() == 2);
    CHECK(g[0] == F.eval(c[0]));
    CHECK(g[1] == F.eval(c[1]));
}

TEST_CASE("affine conjugation is a group action on evaluation") {
    std::mt19937_64 rng(555);
    for (int i = 0; i < 40; ++i) {
        PolySpec F = random_poly(rng, 3);
        mpq_class al = random_rational(rng);
        if (al == 0) al = 1;
        AffineMap psi{QuadExt(al), QuadExt(random_rational(rng))};
        PolySpec G = affine_conjugate(F, psi);
        // G = psi^{-1} o F o psi checked at sample points
        for (long s = -3; s <= 3; ++s) {
            QuadExt z{mpq_class(s)};
            QuadExt lhs = psi.alpha * G.eval(z) + psi.gamma;
            QuadExt rhs = F.eval(psi.alpha * z + psi.gamma);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("monic centred form") {
    // (1/3)z^3 - z conjugates by psi(z) = sqrt(3) z to the monic centred z^3 - z
    auto [G, psi] = to_monic_centred(parse_polynomial("z^3/3 - z"));
    CHECK(G.to_string() == "3; 1, 0, -1, 0");
    CHECK(psi.alpha == QuadExt::sqrt_of(mpq_class(3)));
    CHECK(G.tag() == FormTag::MonicCentred);

    // centring removes the z^{d-1} term
    auto [H, phi] = to_monic_centred(parse_polynomial("z^3 + 6*z^2 + z + 1"));
    CHECK(H.coeff(2) == 0);
    CHECK(H.leading() == 1);

    // already monic centred: identity change of variables
    auto [K, id] = to_monic_centred(parse_polynomial("z^3 - 3*z"));
    CHECK(K == parse_polynomial("z^3 - 3*z"));
    CHECK(id.is_identity());

    // quartic with non-square scaling needs a quartic root: unsupported
    CHECK_THROWS_AS(to_monic_centred(parse_polynomial("2*z^4 + z")), UnsupportedField);
}

TEST_CASE("cubic critical points") {
    auto cps = critical_points_cubic(mpq_class(-3), mpq_class(0));
    REQUIRE(cps.size() == 2);
    CHECK(((cps[0].location == QuadExt(mpq_class(1)) &&
            cps[1].location == QuadExt(mpq_class(-1))) ||
           (cps[0].location == QuadExt(mpq_class(-1)) &&
            cps[1].location == QuadExt(mpq_class(1)))));

    auto degenerate = critical_points_cubic(mpq_class(0), mpq_class(5));
    REQUIRE(degenerate.size() == 1);
    CHECK(degenerate[0].location == QuadExt(mpq_class(0)));
    CHECK(degenerate[0].multiplicity == 2);

    auto quad = critical_points_cubic(mpq_class(3, 2), mpq_class(0));
    REQUIRE(quad.size() == 2);
    CHECK(quad[0].location.disc() == mpq_class(-1, 2));
}

TEST_CASE("general critical points") {
    auto cps = critical_points(parse_polynomial("z^2 + 1"));
    REQUIRE(cps.size() == 1);
    CHECK(cps[0].location == QuadExt(mpq_class(0)));

    auto unicritical = critical_points(parse_polynomial("z^5 + 2"));
    REQUIRE(unicritical.size() == 1);
    CHECK(unicritical[0].multiplicity == 4);

    auto fc = critical_points(from_critical_points({mpq_class(1), mpq_class(1), mpq_class(2)}));
    REQUIRE(fc.size() == 2);  // multiplicities merged: 1 twice, 2 once
    int total = 0;
    for (const auto& cp : fc) total += cp.multiplicity;
    CHECK(total == 3);
}

TEST_CASE("quadratic field arithmetic") {
    QuadExt a(mpq_class(1), mpq_class(2), mpq_class(3));  // 1 + 2 sqrt(3)
    CHECK(a.norm() == 1 - 12);
    CHECK(a.trace() == 2);
    CHECK(a * a.conj() == QuadExt(a.norm()));
    CHECK(a * a.inverse() == QuadExt(mpq_class(1)));
    CHECK_THROWS_AS(QuadExt(0, 1, 2) + QuadExt(0, 1, 3), std::invalid_argument);
    // rational-valued elements mix with any discriminant
    CHECK(QuadExt(mpq_class(5)) + QuadExt(0, 1, 7) == QuadExt(5, 1, 7));
}

TEST_CASE("newton polygon valuations") {
    // z = 3/2 + (5/7) sqrt(10): check w1 + w2 = v_p(Norm) at several p
    QuadExt z(mpq_class(3, 2), mpq_class(5, 7), mpq_class(10));
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
        auto [w1, w2] = quad_valuations(z, p);
        CHECK(w1 <= w2);
        CHECK(w1 + w2 == padic_valuation_exact(z.norm(), p));
    }
    // ramified: sqrt(2) at p = 2 has both valuations 1/2
    auto [r1, r2] = quad_valuations(QuadExt::sqrt_of(mpq_class(2)), 2);
    CHECK(r1 == mpq_class(1, 2));
    CHECK(r2 == mpq_class(1, 2));
    CHECK_THROWS(quad_valuations(QuadExt(), 2));
}

TEST_CASE("height inequalities on random instances") {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 100; ++i) {
        PolySpec F = random_poly(rng, 2 + static_cast<int>(rng() % 3));
        for (const auto& chk : height_inequality_checks(F)) {
            INFO(chk.name << " on " << F.to_string());
            CHECK(chk.holds);
        }
        std::vector<mpq_class> roots;
        for (int k = 0; k < 3; ++k) roots.push_back(random_rational(rng));
        CHECK(check_roots_height_bound(roots).holds);
    }
    // equality case: F = z^2 has h(F') = h(F) + log d exactly
    for (const auto& chk : check_derivative_height_bounds(parse_polynomial("z^2")))
        CHECK(chk.holds);
}
