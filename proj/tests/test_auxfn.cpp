#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "heightcensus/auxfn.hpp"
#include "heightcensus/census.hpp"

using namespace hc;

namespace {

AlgebraicNumber q(long p, long d = 1) { return AlgebraicNumber::rational(Rational(p, d)); }

double mid(const RealEnclosure& e) { return (e.lo.to_rational().get_d() + e.hi.to_rational().get_d()) / 2; }

BivarIntPoly grid(int T, std::initializer_list<std::tuple<int, int, long>> terms) {
    BivarIntPoly p = BivarIntPoly::zero(T);
    for (auto [i, j, c] : terms) p.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
    return p;
}

// Rational points (a, a^2) with max(|p|, q) <= H and |a| <= 4.
std::vector<PointPair> parabola_level(long H) {
    std::vector<PointPair> pts;
    for (long d = 1; d <= H; ++d)
        for (long p = -H; p <= H; ++p) {
            if (std::gcd(p, d) != 1 || std::labs(p) > 4 * d) continue;
            const Rational a(p, d);
            pts.emplace_back(AlgebraicNumber::rational(a), AlgebraicNumber::rational(a * a));
        }
    return pts;
}

}  // namespace

TEST(Auxfn, ParametersMatchDirectFormula) {
    const auto a = compute_params(2, 1, 1, 1, 1);
    const double c0 = std::log(5.0 / 4.0);
    EXPECT_NEAR(mid(a.c0), c0, 1e-15);
    EXPECT_TRUE(a.c0.width() < Dyadic::pow2(-100));
    const long gamma = static_cast<long>(std::floor(72.0 / (c0 * c0))) + 1;
    EXPECT_EQ(gamma, 1446);
    EXPECT_EQ(a.gamma, gamma);
    EXPECT_TRUE(a.gamma_ok);
    const long T = static_cast<long>(std::floor(c0 * gamma / 6));
    EXPECT_EQ(a.T, T);
    const double u1 = std::log(2.0) + 4 * std::log(double(T)) + 2.0 * T;
    EXPECT_NEAR(mid(a.u1), u1, 1e-9);
    EXPECT_FALSE(a.zero_count_ok.has_value());

    EXPECT_THROW(compute_params(1, 1, 1, 1, 1), DomainError);
    EXPECT_THROW(compute_params(1, 2, 1, 1, 1), DomainError);

    const auto b = compute_params(2, 1, 1, 1, 1, Integer(1000));
    ASSERT_TRUE(b.zero_count_ok.has_value());
    EXPECT_EQ(*b.zero_count_ok, c0 * 1000 > u1 + 2.0 * T);
    const auto c = compute_params(2, 1, 1, 1, 1, Integer(10));
    EXPECT_FALSE(*c.zero_count_ok);
}

TEST(Auxfn, SchwarzBoundMonotone) {
    const auto a = compute_params(2, 1, 1, 1, 1);
    const auto s0 = schwarz_bound(a, 0);
    EXPECT_NEAR(std::log(mid(s0)), mid(a.u1), 1e-9);
    for (long s = 0; s < 50; ++s) EXPECT_TRUE(schwarz_bound(a, s + 1).hi < schwarz_bound(a, s).lo);
    const auto s1000 = schwarz_bound(a, 1000);
    EXPECT_LT(std::log(s1000.hi.to_rational().get_d()), mid(a.u1) - 223.1);
    EXPECT_THROW(schwarz_bound(a, -1), DomainError);

    // Larger u1 (larger fR) gives a larger bound.
    const auto b = compute_params(2, 1, 2, 1, 1);
    EXPECT_TRUE(schwarz_bound(b, 100).lo > schwarz_bound(a, 100).hi);
}

TEST(Auxfn, SiegelSmallInstances) {
    const auto r1 = siegel_solve({{q(0), q(0)}}, 1, 1, 1);
    EXPECT_EQ(r1.P, grid(1, {{1, 0, 1}}));
    EXPECT_EQ(r1.P.str(), "X");
    EXPECT_TRUE(r1.meets_bound);

    const auto r2 = siegel_solve({{q(1), q(1)}, {q(-1), q(-1)}}, 1, 1, 1);
    EXPECT_EQ(r2.P.str(), "X - Y");

    const auto r3 = siegel_solve({{q(1, 2), q(1, 4)}}, 2, 1, 1);
    EXPECT_EQ(r3.P.max_abs(), 1);
    EXPECT_TRUE(evaluate(r3.P, q(1, 2), q(1, 4)).is_zero());
    EXPECT_TRUE(r3.P == grid(2, {{2, 0, 1}, {0, 1, -1}}) || r3.P == grid(2, {{2, 0, -1}, {0, 1, 1}}));

    EXPECT_THROW(siegel_solve({{q(0), q(0)}, {q(1), q(1)}, {q(2), q(2)}}, 1, 1, 1), DomainError);
}

TEST(Auxfn, SiegelVanishingIndependentlyVerified) {
    // beta = g(alpha) in Q(alpha); P(alpha, g(alpha)) recomputed as a univariate
    // polynomial in alpha, reduced modulo the minimal polynomial.
    std::mt19937 rng(7);
    const std::vector<IntPoly> quads = {{-2, 0, 1}, {-1, -1, 1}, {1, 0, 1}, {-3, 0, 1}, {1, 1, 1}, {-5, 1, 1}};
    for (int trial = 0; trial < 12; ++trial) {
        const int T = 2 + trial % 3;
        std::vector<PointPair> pts;
        std::vector<std::pair<AlgebraicNumber, RatPoly>> raw;
        const std::size_t count = static_cast<std::size_t>(std::min(10, ((T + 1) * (T + 1) - 2) / 2));
        for (std::size_t k = 0; pts.size() < count && k < 40; ++k) {
            const auto& m = quads[rng() % quads.size()];
            const auto alpha = AlgebraicNumber::root_of(m, rng() % 2);
            bool dup = false;
            for (const auto& p : pts) dup = dup || p.first == alpha;
            if (dup) continue;
            const RatPoly g{static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 3) + 1};
            pts.emplace_back(alpha, to_algebraic(poly_eval_in_field(g, alpha)));
            raw.emplace_back(alpha, g);
        }
        const auto res = siegel_solve(pts, T, 2, 2);
        EXPECT_FALSE(res.P.is_zero());
        EXPECT_TRUE(res.meets_bound);
        for (const auto& [alpha, g] : raw) {
            RatPoly u;
            RatPoly gj = RatPoly::constant(Rational(1));
            for (int j = 0; j <= T; ++j) {
                RatPoly xi = RatPoly::constant(Rational(1));
                for (int i = 0; i <= T; ++i) {
                    u += xi * gj * Rational(res.P.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                    xi = xi * RatPoly::x();
                }
                gj = gj * g;
            }
            EXPECT_TRUE(poly_eval_in_field(u, alpha).is_zero());
        }
    }
}

TEST(Auxfn, LiouvilleExamples) {
    EXPECT_TRUE(liouville_check(grid(1, {{1, 1, 1}, {0, 0, -1}}), q(2), q(1, 2), 1, 1).zero);

    const auto eq = liouville_check(grid(1, {{1, 0, 1}, {0, 1, -1}}), q(1, 2), q(1, 3), 1, 1);
    EXPECT_FALSE(eq.zero);
    EXPECT_TRUE(eq.exact);
    EXPECT_TRUE(eq.equality);
    EXPECT_TRUE(eq.value.contains(Rational(1, 6)));

    const auto sqrt2 = AlgebraicNumber::root_of(IntPoly{-2, 0, 1}, 1);
    EXPECT_TRUE(liouville_check(grid(2, {{0, 1, 1}, {2, 0, -1}}), sqrt2, q(2), 2, 2).zero);
    EXPECT_THROW(liouville_check(grid(2, {{0, 1, 1}, {2, 0, -1}}), sqrt2, q(2), 1, 2), DomainError);
}

TEST(Auxfn, LiouvilleNeverViolatedOnCensusPairs) {
    CensusSpec spec;
    spec.D = 2;
    spec.N = ThresholdSpec::log_rational(3);
    const auto census = enumerate_E(spec);
    std::vector<AlgebraicNumber> rationals, quadratics;
    for (const auto& a : census.listing) (a.is_rational() ? rationals : quadratics).push_back(a);
    ASSERT_FALSE(quadratics.empty());
    std::mt19937 rng(2024);
    int nonzero = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int T = 1 + static_cast<int>(rng() % 3);
        BivarIntPoly P = BivarIntPoly::zero(T);
        for (auto& row : P.coeff)
            for (auto& c : row) c = static_cast<long>(rng() % 7) - 3;
        if (P.is_zero()) P.coeff[0][0] = 1;
        AlgebraicNumber a, b;
        int D = 1;
        switch (rng() % 4) {
            case 0:
                a = rationals[rng() % rationals.size()];
                b = rationals[rng() % rationals.size()];
                break;
            case 1:
                a = quadratics[rng() % quadratics.size()];
                b = rationals[rng() % rationals.size()];
                D = 2;
                break;
            case 2:
                a = quadratics[rng() % quadratics.size()];
                b = a.conjugate();
                D = 2;
                break;
            default:
                a = quadratics[rng() % quadratics.size()];
                b = a;
                D = 2;
        }
        LiouvilleResult r;
        ASSERT_NO_THROW(r = liouville_check(P, a, b, D, T)) << P.str() << " at " << a.str() << ", " << b.str();
        if (!r.zero) {
            ++nonzero;
            EXPECT_TRUE(r.value.lo >= r.bound.lo);
        }
    }
    EXPECT_GT(nonzero, 900);
}

TEST(Auxfn, PropagationOnParabola) {
    const Rational fR = poly_sup_bound(RatPoly{0, 0, 1}, 65536);
    EXPECT_EQ(fR, Rational(Integer(1) << 32));
    const auto params = compute_params(65536, 4, fR, 1, 3);
    EXPECT_EQ(params.gamma, 1);
    EXPECT_EQ(params.T, 4);
    std::map<long, std::vector<PointPair>> levels;
    for (long N = 3; N <= 6; ++N) levels[N] = parabola_level(static_cast<long>(std::floor(std::exp(N / 2.0))));
    EXPECT_EQ(levels[3].size(), 23u);

    const auto rep = propagate_demo(params, levels, 3, 3);
    EXPECT_TRUE(rep.siegel.meets_bound);
    EXPECT_EQ(rep.steps.size(), 3u);
    EXPECT_TRUE(rep.pass());
    for (const auto& st : rep.steps) {
        EXPECT_TRUE(st.all_forced);
        EXPECT_FALSE(st.points.empty());
    }

    const auto none = propagate_demo(params, levels, 3, 0);
    EXPECT_TRUE(none.steps.empty());
    EXPECT_TRUE(none.pass());

    // A single known zero is far too few to force anything.
    std::map<long, std::vector<PointPair>> tiny{{3, {levels[3].front()}}, {4, levels[3]}};
    const auto weak = propagate_demo(params, tiny, 3, 1);
    EXPECT_FALSE(weak.pass());
    ASSERT_EQ(weak.steps.size(), 1u);
    EXPECT_FALSE(weak.steps[0].all_forced);
    EXPECT_NE(weak.notes.back().find("bounds do not force vanishing"), std::string::npos);

    EXPECT_THROW(propagate_demo(params, levels, 3, 4), DomainError);
}
