#include <gtest/gtest.h>

#include "heightcensus/bigfloat.hpp"
#include "heightcensus/error.hpp"
#include "heightcensus/poly.hpp"
#include "heightcensus/roots.hpp"

using namespace hc;

TEST(Dyadic, NormalizesAndRoundTrips) {
    Dyadic a(Integer(12), -3);
    EXPECT_EQ(a.mantissa(), 3);
    EXPECT_EQ(a.exponent(), -1);
    EXPECT_EQ(a.str(), "3*2^-1");
    EXPECT_EQ(Dyadic::parse("3*2^-1"), a);
    EXPECT_EQ(Dyadic::parse("-40"), Dyadic(Integer(-5), 3));
    EXPECT_EQ(a.to_rational(), Rational(3, 2));
    EXPECT_TRUE(Dyadic(Integer(1), -2) < a);
    EXPECT_EQ(Dyadic(Integer(0), 7), Dyadic());
}

TEST(Interval, EnclosesTranscendentals) {
    const auto two = Interval::of(2L, 128);
    const auto r = sqrt(two);
    EXPECT_EQ(compare(sqr(r), Rational(2)), 0);
    EXPECT_EQ(compare(r, Rational(14142, 10000)), 1);
    EXPECT_EQ(compare(r, Rational(14143, 10000)), -1);
    const auto l = log(Interval::of(Rational(5, 4), 200));
    EXPECT_EQ(compare(l, Rational("2231435513/10000000000")), 1);
    EXPECT_EQ(compare(l, Rational("2231435514/10000000000")), -1);
    EXPECT_TRUE(exp(l).contains(Rational(5, 4)));
}

TEST(Poly, ArithmeticAndGcd) {
    const IntPoly a = parse_int_poly("[-1, 0, 1]");
    const IntPoly b = parse_int_poly("[1, 1]");
    EXPECT_EQ(gcd(a, b), b);
    EXPECT_EQ(exact_quotient(a, b), (IntPoly{-1, 1}));
    EXPECT_FALSE(is_squarefree(a * b));
    EXPECT_EQ(squarefree_part(a * b), a);
    EXPECT_EQ(resultant(IntPoly{-2, 0, 1}, IntPoly{-3, 0, 1}), 1);
    EXPECT_EQ(resultant(IntPoly{1, 0, 1}, IntPoly{0, 2}), 4);
    EXPECT_EQ(canonical_form(IntPoly{4, 0, -2}), (IntPoly{-2, 0, 1}));
    EXPECT_EQ(parse_int_poly("[−2, 0, 1]"), (IntPoly{-2, 0, 1}));
    auto sq = squarefree_decomposition(IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{2, 1});
    ASSERT_EQ(sq.factors.size(), 2u);
    EXPECT_EQ(sq.factors[1], (IntPoly{-1, 1}));
}

TEST(Roots, QuadraticsAndCubics) {
    auto i = isolate_roots(IntPoly{1, 0, 1}, default_width());
    ASSERT_EQ(i.size(), 2u);
    EXPECT_EQ(i[0], i[1].mirrored());
    EXPECT_TRUE(i[0].im_hi.sign() < 0);
    EXPECT_TRUE(i[0].re_lo <= Dyadic() && Dyadic() <= i[0].re_hi);

    auto s = isolate_roots(IntPoly{-2, 0, 1}, default_width());
    ASSERT_EQ(s.size(), 2u);
    EXPECT_TRUE(s[0].self_conjugate());
    EXPECT_TRUE(compare(s[1].re_lo, Rational(141421356, 100000000)) > 0);
    EXPECT_TRUE(compare(s[1].re_hi, Rational(141421357, 100000000)) < 0);
    EXPECT_TRUE(!(default_width() < s[1].width()));

    auto c = isolate_roots(IntPoly{-1, 0, 0, 1}, Dyadic::pow2(-200));
    ASSERT_EQ(c.size(), 3u);
    EXPECT_TRUE(c[2].self_conjugate());
    EXPECT_EQ(c[0], c[1].mirrored());
    EXPECT_TRUE(c[2].re_lo <= Dyadic(1) && Dyadic(1) <= c[2].re_hi);

    EXPECT_THROW(isolate_roots(IntPoly{1, 2, 1}, default_width()), DomainError);
    EXPECT_THROW(isolate_roots(IntPoly{1, 0, 1}, Dyadic()), DomainError);
}

TEST(Roots, LinearIsExact) {
    auto r = isolate_roots(IntPoly{-3, 4}, default_width());
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].re_lo, Dyadic(Integer(3), -2));
    EXPECT_EQ(r[0].re_lo, r[0].re_hi);
}

TEST(Roots, CyclotomicAndWilkinsonLike) {
    IntPoly w{1};
    for (long k = 1; k <= 12; ++k) w = w * IntPoly{-k, 1};
    auto r = isolate_roots(w, default_width());
    ASSERT_EQ(r.size(), 12u);
    for (long k = 1; k <= 12; ++k) {
        EXPECT_TRUE(r[k - 1].re_lo <= Dyadic(k) && Dyadic(k) <= r[k - 1].re_hi);
    }
    // X^12 - 1
    IntPoly u = IntPoly::monomial(Integer(1), 12) - IntPoly{1};
    auto ru = isolate_roots(u, default_width());
    ASSERT_EQ(ru.size(), 12u);
    // -1 is first, 1 is last
    EXPECT_TRUE(ru.front().self_conjugate());
    EXPECT_TRUE(ru.back().self_conjugate());
}

TEST(Roots, RefineAndMatch) {
    const IntPoly p{-2, 0, 1};
    auto r = isolate_roots(p, Dyadic::pow2(-10));
    auto fine = refine_root(p, r[1], Dyadic::pow2(-300));
    EXPECT_TRUE(r[1].contains(fine));
    EXPECT_TRUE(!(Dyadic::pow2(-300) < fine.width()));
    const std::size_t idx = match_root(p, [](const Dyadic& w) {
        auto b = Interval::of(2L, starting_precision(w));
        auto s = sqrt(b);
        return ComplexBox::from_interval(CInterval(s, Interval::of(0L, starting_precision(w))));
    });
    EXPECT_EQ(idx, 1u);
}

TEST(Roots, EqualRealPartsOrderedByImaginaryPart) {
    // (X^2 - 2X + 2)(X^2 - 2X + 5): roots 1 -/+ i, 1 -/+ 2i share Re = 1.
    const IntPoly p = IntPoly{2, -2, 1} * IntPoly{5, -2, 1};
    const double expect_im[] = {-2, -1, 1, 2};
    for (long bits : {20L, 53L, 90L}) {
        const auto boxes = isolate_roots(p, Dyadic::pow2(-bits));
        ASSERT_EQ(boxes.size(), 4u);
        for (std::size_t k = 0; k < 4; ++k) {
            const double im = (boxes[k].im_lo.to_rational().get_d() + boxes[k].im_hi.to_rational().get_d()) / 2;
            EXPECT_NEAR(im, expect_im[k], 1e-5);
            EXPECT_TRUE(boxes[k].width() <= Dyadic::pow2(-bits));
        }
    }
}
