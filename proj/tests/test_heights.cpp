#include <gtest/gtest.h>

#include <random>

#include "heightcensus/factor.hpp"
#include "heightcensus/heights.hpp"

using namespace hc;

namespace {

const IntPoly lehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};

// The enclosure meets [x - 1e-15, x + 1e-15] for a 16-digit decimal x.
bool encloses(const RealEnclosure& e, const char* decimal) {
    const Rational x = parse_rational(decimal);
    const Rational tol("1/1000000000000000");
    return compare(e.lo, x + tol) <= 0 && compare(e.hi, x - tol) >= 0;
}

}  // namespace

TEST(Mahler, Examples) {
    const auto two = mahler_measure(IntPoly{-2, 1}, default_width());
    EXPECT_TRUE(two.exact());
    EXPECT_EQ(two.lo, Dyadic(2));
    const auto golden = mahler_measure(IntPoly{-1, -1, 1}, Dyadic::pow2(-45));
    EXPECT_TRUE(encloses(golden, "1.6180339887498948"));
    EXPECT_TRUE(compare(golden.width(), Rational("1/1000000000000")) < 0);
    const auto l = mahler_measure(lehmer, Dyadic::pow2(-40));
    EXPECT_TRUE(encloses(l, "1.1762808182599175"));
    EXPECT_TRUE(compare(l.width(), Rational(1, 1000000000)) <= 0);
    EXPECT_EQ(mahler_measure(IntPoly{-7}, default_width()).lo, Dyadic(7));
    EXPECT_THROW(mahler_measure(IntPoly(), default_width()), DomainError);
}

TEST(Mahler, Multiplicative) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> c(-5, 5);
    for (int t = 0; t < 30; ++t) {
        IntPoly p{c(rng), c(rng), c(rng), 1 + std::abs(c(rng))};
        IntPoly q{c(rng), c(rng), 1 + std::abs(c(rng))};
        if (p[0] == 0 || q[0] == 0) continue;
        const auto w = Dyadic::pow2(-60);
        const auto mp = mahler_measure(p, w), mq = mahler_measure(q, w), mpq = mahler_measure(p * q, w);
        const Interval prod = mp.to_interval(200) * mq.to_interval(200);
        EXPECT_TRUE(prod.overlaps(mpq.to_interval(200))) << p.str() << " " << q.str();
    }
}

TEST(Heights, Examples) {
    const Dyadic w = Dyadic::pow2(-60);
    const auto h2 = height(AlgebraicNumber::rational(2), w);
    EXPECT_TRUE(encloses(h2, "0.69314718055994530"));
    const auto hh = height(AlgebraicNumber::rational(Rational(1, 2)), w);
    EXPECT_EQ(hh.lo, h2.lo);
    const auto hs = height(AlgebraicNumber::root_of(IntPoly{-2, 0, 1}, 1), w);
    EXPECT_TRUE(encloses(hs, "0.34657359027997265"));
    EXPECT_EQ(height(AlgebraicNumber::root_of(IntPoly{1, 1, 1}, 0), w).hi, Dyadic());
}

TEST(Heights, UnitMeasure) {
    EXPECT_TRUE(is_unit_measure(IntPoly{1, 1, 1}));
    EXPECT_FALSE(is_unit_measure(IntPoly{-1, -1, 1}));
    EXPECT_TRUE(is_unit_measure(IntPoly{0, 1}));
    EXPECT_FALSE(is_unit_measure(lehmer));
    // every irreducible factor of X^m - 1, deg <= 8
    int count = 0;
    for (long m = 1; m <= 30; ++m) {
        for (const auto& f : factor_squarefree(IntPoly::monomial(Integer(1), static_cast<std::size_t>(m)) - IntPoly{1})) {
            if (f.degree() > 8) continue;
            EXPECT_TRUE(is_unit_measure(f)) << f.str();
            EXPECT_TRUE(poly_height_leq(f, ThresholdSpec::rational(0)));
            ++count;
        }
    }
    EXPECT_GT(count, 20);
}

TEST(Heights, ThresholdDecisions) {
    const auto b2 = ThresholdSpec::log_rational(2);
    EXPECT_TRUE(height_leq(AlgebraicNumber::rational(2), b2));
    EXPECT_FALSE(height_leq(AlgebraicNumber::rational(3), b2));
    EXPECT_TRUE(height_leq(AlgebraicNumber::root_of(IntPoly{-2, 0, 1}, 0), b2));
    // exact ties M = 4 = B^2
    EXPECT_TRUE(poly_height_leq(IntPoly{-4, -1, 1}, b2));
    EXPECT_TRUE(poly_height_leq(IntPoly{1, 1, 4}, b2));
    EXPECT_FALSE(poly_height_leq(IntPoly{-5, -1, 1}, b2));
    EXPECT_FALSE(poly_height_leq(IntPoly{1, 1, 5}, b2));
    // Rational thresholds never tie
    EXPECT_TRUE(poly_height_leq(IntPoly{-2, 1}, ThresholdSpec::rational(Rational(7, 10))));
    EXPECT_FALSE(poly_height_leq(IntPoly{-2, 1}, ThresholdSpec::rational(Rational(69, 100))));
    EXPECT_TRUE(poly_height_leq(lehmer, ThresholdSpec::rational(Rational(1, 60))));
    EXPECT_FALSE(poly_height_leq(lehmer, ThresholdSpec::rational(Rational(1, 70))));
    EXPECT_EQ(ThresholdSpec::parse("N=log(5/2)").str(), "log(5/2)");
    EXPECT_EQ(ThresholdSpec::parse("3/2").str(), "3/2");
    EXPECT_THROW(ThresholdSpec::parse("log(1/2)"), DomainError);
}

TEST(Heights, Monotone) {
    const std::vector<ThresholdSpec> ladder = {ThresholdSpec::rational(0), ThresholdSpec::rational(Rational(1, 2)),
                                               ThresholdSpec::log_rational(2), ThresholdSpec::rational(1),
                                               ThresholdSpec::log_rational(3), ThresholdSpec::rational(Rational(3, 2))};
    const std::vector<IntPoly> ps = {IntPoly{-2, 1}, IntPoly{-1, -1, 1}, IntPoly{1, 1, 1}, IntPoly{-3, 2}, IntPoly{5, 0, 1}, lehmer};
    for (const auto& p : ps) {
        bool seen = false;
        for (const auto& n : ladder) {
            const bool ok = poly_height_leq(p, n);
            if (seen) EXPECT_TRUE(ok) << p.str() << " " << n.str();
            seen = seen || ok;
        }
    }
}

TEST(Heights, InversionSymmetry) {
    for (const IntPoly& p : {IntPoly{-1, -1, 1}, IntPoly{3, -1, 2}, IntPoly{-2, 0, 0, 5}}) {
        for (const auto& a : AlgebraicNumber::roots_of_irreducible(p)) {
            const auto r = a.reciprocal();
            EXPECT_EQ(r.degree(), a.degree());
            const auto ha = height(a, Dyadic::pow2(-60)), hr = height(r, Dyadic::pow2(-60));
            EXPECT_TRUE(ha.to_interval(128).overlaps(hr.to_interval(128)));
            EXPECT_EQ(r.reciprocal(), a);
        }
    }
}

TEST(Heights, UnitDisc) {
    EXPECT_TRUE(abs_leq_one(AlgebraicNumber::rational(Rational(1, 2))));
    EXPECT_FALSE(abs_leq_one(AlgebraicNumber::rational(2)));
    EXPECT_TRUE(abs_leq_one(AlgebraicNumber::rational(-1)));
    for (const auto& a : AlgebraicNumber::roots_of_irreducible(IntPoly{5, -6, 5})) {
        EXPECT_EQ(circle_sign(a), 0);
        EXPECT_TRUE(abs_leq_one(a));
    }
    // Lehmer: one root outside, one inside, eight on the circle
    const auto s = circle_signs(lehmer);
    EXPECT_EQ(std::count(s.begin(), s.end(), 0), 8);
    EXPECT_EQ(std::count(s.begin(), s.end(), 1), 1);
    EXPECT_EQ(std::count(s.begin(), s.end(), -1), 1);
    // 1 + i is outside, (1 + i)/2 inside
    for (const auto& a : AlgebraicNumber::roots_of_irreducible(IntPoly{2, -2, 1})) EXPECT_FALSE(abs_leq_one(a));
    for (const auto& a : AlgebraicNumber::roots_of_irreducible(IntPoly{1, -2, 2})) EXPECT_TRUE(abs_leq_one(a));
}
