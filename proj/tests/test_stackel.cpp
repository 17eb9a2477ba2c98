#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "heightcensus/stackel.hpp"

using namespace hc;

namespace {

// ---- independent oracles: double arithmetic and naive rational enumeration

// Rationals p/q with max(|p|, q) <= H, reduced.
std::vector<Rational> naive_rationals(long H) {
    std::vector<Rational> r;
    for (long q = 1; q <= H; ++q)
        for (long p = -H; p <= H; ++p)
            if (std::gcd(p, q) == 1) r.emplace_back(p, q);
    return r;
}

Rational naive_product_at(const std::vector<Rational>& roots, const Rational& x) {
    Rational v = 1;
    for (const auto& r : roots) v *= x - r;
    return v;
}

// a + b sqrt(2) with rational parts.
struct QSqrt2 {
    Rational a, b;
    QSqrt2 operator*(const QSqrt2& o) const { return {a * o.a + 2 * b * o.b, a * o.b + b * o.a}; }
};

const StackelPrefix& prefix2() {
    static const StackelPrefix s = choose_sequences(PhiSpec{}, 2);
    return s;
}

}  // namespace

TEST(Stackel, PhiValidation) {
    EXPECT_NO_THROW(PhiSpec{}.validate());
    EXPECT_NO_THROW(PhiSpec::parse("log1p/4"));
    EXPECT_THROW(PhiSpec::parse("sqrt"), DomainError);
    // log(2.2) / (1/10) > 0.2
    EXPECT_THROW(PhiSpec::parse("log1p/1/10"), DomainError);
}

TEST(Stackel, FirstLevelsMatchDoubleOracle) {
    const auto& s = prefix2();
    ASSERT_EQ(s.N.size(), 2u);
    EXPECT_EQ(s.N[0], Rational(6, 5));
    EXPECT_EQ(s.eps[0], 15);
    EXPECT_EQ(s.eps[0], Integer(naive_rationals(static_cast<long>(std::floor(std::exp(1.2)))).size()));

    const double log_bound = std::log(0.5) - 15.0 * std::log(1.0 + std::exp(1.2));
    const long m = static_cast<long>(std::ceil(-log_bound / std::log(2.0)));
    EXPECT_EQ(m, 33);
    EXPECT_EQ(s.a[0], Rational(Integer(1), Integer(1) << static_cast<mp_bitcnt_t>(m)));

    const double floor2 = 2.0 * (m * std::log(2.0) + 15.0 * (std::log(2.0) + 1.0 + 1.2));
    const double n2 = std::ceil(8.0 * floor2) / 8.0;
    EXPECT_EQ(s.N[1], Rational(static_cast<long>(n2 * 8), 8));
    EXPECT_EQ(s.N[1], Rational(1061, 8));
    EXPECT_GE(n2 / (std::log1p(n2) / 4.0), 30.0);
}

TEST(Stackel, PolynomialVanishesOnFirstCensus) {
    const auto& s = prefix2();
    const RatPoly& p1 = s.P[0];
    EXPECT_EQ(p1.degree(), 15);
    EXPECT_EQ(p1.lead(), 1);
    const auto roots = naive_rationals(3);
    for (const auto& r : roots) EXPECT_EQ(p1.eval(r), 0);
    for (const Rational x : {Rational(1, 4), Rational(7, 2), Rational(-5)})
        EXPECT_EQ(p1.eval(x), naive_product_at(roots, x));
    EXPECT_TRUE(check_prefix(s).pass());
    EXPECT_EQ(build_Pk(s, 1), p1);
}

TEST(Stackel, EvaluationAtRationalAndQuadraticPoints) {
    const auto& s = prefix2();
    const auto roots = naive_rationals(3);

    const auto half = AlgebraicNumber::rational(Rational(1, 2));
    EXPECT_EQ(first_level(s, half), 1);
    EXPECT_TRUE(eval_f(s, half).is_zero());

    const auto quarter = AlgebraicNumber::rational(Rational(1, 4));
    EXPECT_EQ(first_level(s, quarter), 2);
    const auto v = eval_f(s, quarter);
    ASSERT_TRUE(v.is_rational());
    EXPECT_EQ(v.rational_value(), s.a[0] * naive_product_at(roots, Rational(1, 4)));
    EXPECT_TRUE(verify_membership(s, quarter));

    // f(sqrt 2) = a_1 prod (sqrt 2 - r), computed in Z[sqrt 2].
    const auto r2 = AlgebraicNumber::roots_of_irreducible(IntPoly{-2, 0, 1});
    QSqrt2 acc{1, 0};
    for (const auto& r : roots) acc = acc * QSqrt2{-r, 1};
    for (const auto& alpha : r2) {
        const auto w = eval_f(s, alpha);
        EXPECT_EQ(w.repr[0], s.a[0] * acc.a);
        EXPECT_EQ(w.repr[1], s.a[0] * acc.b);
        EXPECT_TRUE(verify_membership(s, alpha));
    }
    // Galois equivariance: conjugates share the representation.
    EXPECT_EQ(eval_f(s, r2[0]).repr, eval_f(s, r2[1]).repr);
}

TEST(Stackel, TailNotProvablyZero) {
    const auto& s = prefix2();
    const auto cubic = AlgebraicNumber::root_of(IntPoly{-2, 0, 0, 1}, 0);
    EXPECT_EQ(first_level(s, cubic), 0);
    EXPECT_THROW(eval_f(s, cubic), DomainError);
}

TEST(Stackel, CorruptedPrefixIsDetected) {
    StackelPrefix s = prefix2();
    RatPoly p = s.P[0];
    std::vector<Rational> c = p.coeffs();
    c[3] += 1;
    s.P[0] = RatPoly(c);
    const auto r = check_prefix(s);
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(r.p_rational_monic);
    EXPECT_FALSE(r.p_vanishing);

    // 2^-32 exceeds the coefficient bound 2^-32.67.
    StackelPrefix t = prefix2();
    t.a[0] *= 2;
    const auto rt = check_prefix(t);
    EXPECT_FALSE(rt.condition_i);
    EXPECT_FALSE(rt.pass());

    StackelPrefix u = prefix2();
    u.N[1] -= Rational(1, 8);
    EXPECT_FALSE(check_prefix(u).eq2);
}

TEST(Stackel, Theorem1SmallCases) {
    const auto& s = prefix2();
    const auto r = verify_theorem1(s, 1, 2);
    // phi(N_2) + 1 = log(1 + 1061/8) / 4 + 1, H = floor(e^{that}) = 9.
    const double thr = std::log1p(1061.0 / 8) / 4 + 1;
    const long H = static_cast<long>(std::floor(std::exp(thr)));
    EXPECT_EQ(H, 9);
    const auto all = naive_rationals(H);
    long disc = 0;
    for (const auto& q : all) disc += abs(q) <= 1;
    EXPECT_EQ(r.card_E, Integer(all.size()));
    EXPECT_EQ(r.card_disc, disc);
    EXPECT_EQ(r.sigma_lower, disc);
    EXPECT_TRUE(r.counterexamples.empty());
    EXPECT_TRUE(r.card_ok);
    EXPECT_TRUE(r.chain_below_nd);
    EXPECT_TRUE(r.pass());
    const double chain = (thr - 1) * 15 + 33 * std::log(2.0) + 15 * (std::log(2.0) + 1 + 1.2);
    EXPECT_NEAR(r.chain_bound.lo.to_rational().get_d(), chain, 1e-9);
    EXPECT_LT(chain, 1061.0 / 8);

    const auto r11 = verify_theorem1(s, 1, 1);
    EXPECT_TRUE(r11.pass());
    for (const auto& pt : r11.points) EXPECT_TRUE(pt.value.is_zero());

    EXPECT_THROW(verify_theorem1(s, 2, 2), DomainError);
    EXPECT_THROW(verify_theorem1(s, 2, 1), DomainError);
    EXPECT_THROW(verify_theorem1(s, 1, 3), DomainError);
}

TEST(Stackel, DeeperPrefixExceedsBudget) {
    StackelOptions opt;
    opt.budget = 1000000;
    EXPECT_THROW(choose_sequences(PhiSpec{}, 3, opt), BudgetExceeded);
}
