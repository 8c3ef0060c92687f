#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynheight/interval.hpp"
#include "dynheight/rational.hpp"

#include <random>

using namespace dynheight;

namespace {

mpq_class random_rational(std::mt19937_64& rng, long num_range = 1000, long den_range = 50) {
    std::uniform_int_distribution<long> num(-num_range, num_range);
    std::uniform_int_distribution<long> den(1, den_range);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

} // namespace

TEST_CASE("interval construction and containment") {
    DyadicInterval x = DyadicInterval::from_rational(mpq_class(1, 3), 64);
    CHECK(x.contains(mpq_class(1, 3)));
    CHECK(x.width_d() > 0);  // 1/3 is not dyadic, so outward rounding widens
    CHECK(x.width_d() < 1e-18);

    DyadicInterval half = DyadicInterval::from_rational(mpq_class(1, 2), 64);
    CHECK(half.is_point());  // dyadic values are exact

    CHECK(DyadicInterval::zero().contains_zero());
    CHECK(DyadicInterval::from_long(7).contains(mpq_class(7)));
}

TEST_CASE("interval arithmetic encloses exact rational arithmetic") {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 200; ++i) {
        mpq_class a = random_rational(rng), b = random_rational(rng);
        DyadicInterval ia = DyadicInterval::from_rational(a, 64);
        DyadicInterval ib = DyadicInterval::from_rational(b, 64);
        CHECK((ia + ib).contains(a + b));
        CHECK((ia - ib).contains(a - b));
        CHECK((ia * ib).contains(a * b));
        CHECK(ia.square().contains(a * a));
        CHECK((-ia).contains(-a));
        CHECK(ia.abs().contains(a < 0 ? mpq_class(-a) : a));
        CHECK(ia.pow_ui(3).contains(a * a * a));
        CHECK(ia.mul_q(b).contains(a * b));
        if (b > 0) {
            DyadicInterval pos = DyadicInterval::from_rational(b, 64);
            CHECK(ia.div_pos(pos).contains(a / b));
        }
    }
}

TEST_CASE("logs are rigorous enclosures") {
    DyadicInterval l2 = DyadicInterval::log_of_mpz(mpz_class(2), 128);
    CHECK(l2.lo_d() < 0.6931471805599454);
    CHECK(l2.hi_d() > 0.6931471805599452);
    CHECK(l2.width_d() < 1e-35);

    DyadicInterval lq = DyadicInterval::log_of_mpq(mpq_class(3, 2), 128);
    CHECK(lq.lo_d() < 0.4054651081081645);
    CHECK(lq.hi_d() > 0.4054651081081643);

    // log_plus clamps below 1
    DyadicInterval small = DyadicInterval::from_rational(mpq_class(1, 2), 64);
    CHECK(small.log_plus().contains(mpq_class(0)));
    DyadicInterval big = DyadicInterval::from_long(8, 64);
    CHECK(big.log_plus().lo_d() > 2.0794);
    CHECK(big.log_plus().hi_d() < 2.0795);
}

TEST_CASE("three-valued comparisons") {
    DyadicInterval two = DyadicInterval::from_long(2);
    CHECK(two.gt(mpq_class(1)) == Cmp::True);
    CHECK(two.gt(mpq_class(3)) == Cmp::False);
    CHECK(two.gt(mpq_class(2)) == Cmp::False);   // not strictly greater
    CHECK(two.ge(mpq_class(2)) == Cmp::True);

    DyadicInterval wide = DyadicInterval::hull(DyadicInterval::from_long(0),
                                               DyadicInterval::from_long(4));
    CHECK(wide.gt(mpq_class(2)) == Cmp::Unknown);
    CHECK(wide.gt(DyadicInterval::from_long(5)) == Cmp::False);
    CHECK(wide.gt(DyadicInterval::from_long(-1)) == Cmp::True);
    CHECK(wide.gt(DyadicInterval::from_long(1)) == Cmp::Unknown);
}

TEST_CASE("hull, max, subset") {
    DyadicInterval a = DyadicInterval::from_long(1), b = DyadicInterval::from_long(3);
    DyadicInterval h = DyadicInterval::hull(a, b);
    CHECK(h.contains(mpq_class(2)));
    CHECK(a.subset_of(h));
    CHECK(DyadicInterval::max(a, b).contains(mpq_class(3)));
    CHECK(a.intersects(h));
    CHECK_FALSE(a.intersects(b));
}

TEST_CASE("mul_pow scales by exact powers") {
    DyadicInterval one = DyadicInterval::from_long(1, 96);
    CHECK(one.mul_pow(mpq_class(3), -4).contains(mpq_class(1, 81)));
    CHECK(one.mul_pow(mpq_class(2), 5).contains(mpq_class(32)));
}

TEST_CASE("complex box arithmetic") {
    // (1 + 2i)(3 - i) = 5 + 5i
    ComplexBox a{DyadicInterval::from_long(1), DyadicInterval::from_long(2)};
    ComplexBox b{DyadicInterval::from_long(3), DyadicInterval::from_long(-1)};
    ComplexBox c = a * b;
    CHECK(c.re.contains(mpq_class(5)));
    CHECK(c.im.contains(mpq_class(5)));
    CHECK(a.abs_sq().contains(mpq_class(5)));
}

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
}

TEST_CASE("p-adic valuation") {
    CHECK(padic_valuation_exact(mpq_class(12), 2) == 2);
    CHECK(padic_valuation_exact(mpq_class(12), 3) == 1);
    CHECK(padic_valuation_exact(mpq_class(3, 4), 2) == -2);
    CHECK(padic_valuation_exact(mpq_class(-7, 9), 3) == -2);
    CHECK(padic_valuation(mpq_class(0), 5).infinite);
    CHECK(padic_valuation(mpq_class(50), 5) == ValOrInf::of(mpq_class(2)));
    CHECK_THROWS_AS(padic_valuation(mpq_class(1), 6), std::invalid_argument);
}

TEST_CASE("valuation is additive") {
    std::mt19937_64 rng(7);
    const unsigned long primes[] = {2, 3, 5, 7};
    for (int i = 0; i < 200; ++i) {
        mpq_class a = random_rational(rng), b = random_rational(rng);
        if (a == 0 || b == 0) continue;
        for (unsigned long p : primes) {
            CHECK(padic_valuation_exact(a * b, p) ==
                  padic_valuation_exact(a, p) + padic_valuation_exact(b, p));
        }
    }
}

TEST_CASE("rational k-th roots") {
    CHECK(rational_kth_root(mpq_class(49, 4), 2) == mpq_class(7, 2));
    CHECK(rational_kth_root(mpq_class(27), 3) == mpq_class(3));
    CHECK(!rational_kth_root(mpq_class(2), 2).has_value());
    CHECK(!rational_kth_root(mpq_class(8, 9), 3).has_value());
    CHECK(rational_kth_root(mpq_class(1), 7) == mpq_class(1));
}

TEST_CASE("prime factors") {
    auto f = prime_factors(mpz_class(360));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == 2);
    CHECK(f[1] == 3);
    CHECK(f[2] == 5);
    CHECK(prime_factors(mpz_class(1)).empty());
    CHECK(prime_factors(mpz_class(-17)) == std::vector<unsigned long>{17});
}

TEST_CASE("decimal and exact printing") {
    DyadicInterval x = DyadicInterval::from_rational(mpq_class(1, 3), 64);
    std::string dec = x.to_decimal();
    CHECK(dec.find("0.333333") != std::string::npos);
    CHECK(dec.find("±") != std::string::npos);
    CHECK(!x.to_exact().empty());
}
