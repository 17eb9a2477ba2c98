#include <gtest/gtest.h>

#include <random>

#include "heightcensus/linalg.hpp"

using namespace hc;

TEST(Linalg, KernelAndSolve) {
    QMatrix m(2, 3);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
    m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 7;
    auto k = kernel(m);
    ASSERT_EQ(k.size(), 1u);
    for (std::size_t i = 0; i < 2; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < 3; ++j) s += m(i, j) * k[0][j];
        EXPECT_EQ(s, 0);
    }
    auto x = solve(m, {Rational(1), Rational(3)});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(rank(m), 2u);
}

TEST(Linalg, CharpolyOfCompanion) {
    const RatPoly p = to_rat(IntPoly{5, -3, 0, 1});
    EXPECT_EQ(charpoly(companion(p)), p);
    QMatrix s = kron(companion(to_rat(IntPoly{-2, 0, 1})), QMatrix::identity(2)) +
                kron(QMatrix::identity(2), companion(to_rat(IntPoly{-3, 0, 1})));
    // sqrt2 + sqrt3 has minpoly X^4 - 10X^2 + 1
    EXPECT_EQ(charpoly(s), to_rat(IntPoly{1, 0, -10, 0, 1}));
}

TEST(Linalg, BareissMatchesResultant) {
    // Sylvester matrix determinant over Z[Y] against the Euclidean resultant over Q.
    const IntPoly a{-2, 0, 1};
    // b(X) = Y - (X + 1) as a polynomial in X with coefficients in Z[Y]
    Matrix<IntPoly> syl(3, 3);
    syl(0, 0) = IntPoly{1}; syl(0, 1) = IntPoly{0}; syl(0, 2) = IntPoly{-2};
    syl(1, 0) = IntPoly{-1}; syl(1, 1) = IntPoly{-1, 1}; syl(1, 2) = IntPoly{0};
    syl(2, 0) = IntPoly{0}; syl(2, 1) = IntPoly{-1}; syl(2, 2) = IntPoly{-1, 1};
    const IntPoly r = bareiss_det(syl);
    EXPECT_EQ(canonical_form(r), (IntPoly{-1, -2, 1}));
    for (long y = -3; y <= 3; ++y) {
        EXPECT_EQ(r.eval(Integer(y)), resultant(a, IntPoly{y - 1, -1}));
    }
}

TEST(Linalg, LllShortensBasis) {
    std::vector<std::vector<Integer>> b = {{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}};
    lll_reduce(b);
    Integer n0 = 0;
    for (auto& v : b[0]) n0 += v * v;
    EXPECT_LE(n0, 2);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-1000, 1000);
    std::vector<std::vector<Integer>> big(8, std::vector<Integer>(10));
    for (auto& r : big) for (auto& v : r) v = d(rng);
    auto copy = big;
    lll_reduce(big);
    QMatrix a(8, 10), c(8, 10);
    for (std::size_t i = 0; i < 8; ++i) for (std::size_t j = 0; j < 10; ++j) { a(i, j) = copy[i][j]; c(i, j) = big[i][j]; }
    // same row space
    QMatrix both(16, 10);
    for (std::size_t i = 0; i < 8; ++i) for (std::size_t j = 0; j < 10; ++j) { both(i, j) = a(i, j); both(i + 8, j) = c(i, j); }
    EXPECT_EQ(rank(both), 8u);
}
