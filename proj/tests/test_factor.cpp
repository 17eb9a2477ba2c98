#include <gtest/gtest.h>

#include <random>

#include "heightcensus/factor.hpp"

using namespace hc;

namespace {

// Exhaustive factor search with |coeff| <= Mignotte bound, pruned by
// lead(g) | lead(p) and g(0) | p(0).
bool brute_force_reducible(const IntPoly& p) {
    const int n = p.degree();
    if (p[0] == 0) return n > 1;
    const Integer bound = mignotte_bound(p);
    const auto leads = positive_divisors(p.lead());
    const auto consts = positive_divisors(p[0]);
    for (int k = 1; 2 * k <= n; ++k) {
        std::vector<Integer> mid(static_cast<std::size_t>(k - 1), -bound);
        for (const auto& a : leads) {
            for (const auto& c0 : consts) {
                for (int s : {1, -1}) {
                    std::fill(mid.begin(), mid.end(), Integer(-bound));
                    while (true) {
                        std::vector<Integer> g;
                        g.push_back(Integer(s) * c0);
                        for (const auto& m : mid) g.push_back(m);
                        g.push_back(a);
                        if (divides(IntPoly(g), p)) return true;
                        std::size_t i = 0;
                        while (i < mid.size() && mid[i] == bound) mid[i++] = -bound;
                        if (i == mid.size()) break;
                        mid[i] += 1;
                    }
                }
            }
        }
    }
    return false;
}

}  // namespace

TEST(Factor, Examples) {
    EXPECT_TRUE(is_irreducible(IntPoly{-2, 0, 1}).irreducible);
    auto r = is_irreducible(IntPoly{-1, 0, 1});
    EXPECT_FALSE(r.irreducible);
    EXPECT_TRUE(r.witness == (IntPoly{-1, 1}) || r.witness == (IntPoly{1, 1}));
    EXPECT_TRUE(is_irreducible(IntPoly{1, 0, 0, 0, 1}).irreducible);
    EXPECT_FALSE(is_irreducible(IntPoly{4, 0, 0, 0, 1}).irreducible);  // (x^2+2x+2)(x^2-2x+2)
    EXPECT_FALSE(is_irreducible(IntPoly{0, 1, 1}).irreducible);
    EXPECT_TRUE(is_irreducible(IntPoly{-2, 1}).irreducible);
}

TEST(Factor, FactorsCyclotomicProducts) {
    IntPoly u = IntPoly::monomial(Integer(1), 12) - IntPoly{1};
    auto f = factor_squarefree(u);
    EXPECT_EQ(f.size(), 6u);  // Phi_1,2,3,4,6,12
    IntPoly prod{1};
    for (const auto& g : f) prod = prod * g;
    EXPECT_EQ(prod, u);
}

TEST(Factor, DegreeSixProducts) {
    const IntPoly a{3, -1, 0, 2};
    const IntPoly b{-5, 0, 7, 0, 1};
    auto f = irreducible_factors(a * b * b);
    ASSERT_EQ(f.size(), 2u);
}

TEST(Factor, AgreesWithBruteForceDegreeFour) {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long> coeff(-50, 50);
    std::uniform_int_distribution<long> small(-6, 6);
    int reducible = 0;
    for (int trial = 0; trial < 120; ++trial) {
        IntPoly p;
        if (trial % 3 == 0) {
            // built reducible: quadratic times quadratic
            IntPoly g{small(rng), small(rng), 1 + std::abs(small(rng)) % 3};
            IntPoly h{small(rng), small(rng), 1 + std::abs(small(rng)) % 3};
            if (g[0] == 0 || h[0] == 0) continue;
            p = g * h;
        } else {
            std::vector<Integer> c;
            for (int i = 0; i < 5; ++i) c.emplace_back(coeff(rng));
            if (c[4] == 0) c[4] = 1;
            if (c[0] == 0) c[0] = 7;
            p = IntPoly(c);
        }
        p = canonical_form(p);
        if (!is_squarefree(p)) continue;
        const bool bf = brute_force_reducible(p);
        const auto r = is_irreducible(p);
        EXPECT_EQ(r.irreducible, !bf) << p.str();
        if (!r.irreducible) {
            ++reducible;
            EXPECT_TRUE(divides(r.witness, p));
            EXPECT_GT(r.witness.degree(), 0);
            EXPECT_LT(r.witness.degree(), p.degree());
        }
    }
    EXPECT_GT(reducible, 10);
}
