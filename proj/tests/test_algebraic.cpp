#include <gtest/gtest.h>

#include <random>

#include "heightcensus/algebraic.hpp"
#include "heightcensus/factor.hpp"
#include "heightcensus/linalg.hpp"

using namespace hc;

namespace {

// Res_x(m(x), den*y - G(x)) via the Sylvester matrix over Z[y] (Bareiss).
IntPoly sylvester_resultant(const IntPoly& m, const RatPoly& g) {
    const IntPoly G = primitive_integer_multiple(g);
    // g = (G * scale); find den with den*g integral
    Integer den = 1;
    for (const auto& c : g.coeffs()) den = lcm(den, Integer(c.get_den()));
    std::vector<IntPoly> h;  // coefficients in x, each a polynomial in y
    for (std::size_t i = 0; i < g.size(); ++i) {
        Rational c = g[i] * den;
        h.push_back(IntPoly(std::vector<Integer>{-c.get_num()}));
    }
    if (h.empty()) h.push_back(IntPoly());
    h[0] = h[0] + IntPoly::monomial(den, 1);
    while (h.size() > 1 && h.back().is_zero()) h.pop_back();
    const std::size_t n = static_cast<std::size_t>(m.degree());
    const std::size_t k = h.size() - 1;
    Matrix<IntPoly> s(n + k, n + k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t i = 0; i <= n; ++i) s(r, r + i) = IntPoly(std::vector<Integer>{m[n - i]});
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= k; ++i) s(k + r, r + i) = h[k - i];
    (void)G;
    return bareiss_det(s);
}

AlgebraicNumber sqrt2() { return AlgebraicNumber::root_of(IntPoly{-2, 0, 1}, 1); }

}  // namespace

TEST(Algebraic, EvalInField) {
    const auto a = sqrt2();
    EXPECT_EQ(poly_eval_in_field(to_rat(IntPoly{0, 1}), a).repr, to_rat(IntPoly{0, 1}));
    EXPECT_EQ(poly_eval_in_field(to_rat(IntPoly{0, 0, 1}), a).repr, to_rat(IntPoly{2}));
    const auto one = AlgebraicNumber::rational(1);
    EXPECT_TRUE(poly_eval_in_field(to_rat(IntPoly{0, -1, 0, 1}), one).is_zero());
}

TEST(Algebraic, MinpolyOfElement) {
    const auto a = sqrt2();
    EXPECT_EQ(minpoly_of_element(poly_eval_in_field(to_rat(IntPoly{0, 0, 1}), a)), (IntPoly{-2, 1}));
    EXPECT_EQ(minpoly_of_element(poly_eval_in_field(to_rat(IntPoly{1, 1}), a)), (IntPoly{-1, -2, 1}));
    const auto half = AlgebraicNumber::rational(Rational(1, 2));
    EXPECT_EQ(minpoly_of_element(poly_eval_in_field(to_rat(IntPoly{0, 3}), half)), (IntPoly{-3, 2}));
    auto e = to_algebraic(poly_eval_in_field(to_rat(IntPoly{1, 1}), a));
    EXPECT_EQ(e.index(), 1u);  // 1 + sqrt2 is the larger root
}

TEST(Algebraic, MinpolyDividesResultant) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-4, 4);
    const std::vector<IntPoly> bases = {IntPoly{-2, 0, 1}, IntPoly{1, 1, 1}, IntPoly{-2, 0, 0, 1}, IntPoly{1, 0, 0, 0, 1}};
    for (const auto& m : bases) {
        for (const auto& alpha : AlgebraicNumber::roots_of_irreducible(m)) {
            for (int trial = 0; trial < 3; ++trial) {
                std::vector<Rational> c;
                for (int i = 0; i < m.degree(); ++i) {
                    c.emplace_back(d(rng), 1 + std::abs(d(rng)));
                    c.back().canonicalize();
                }
                const RatPoly g(c);
                const auto e = poly_eval_in_field(g, alpha);
                const IntPoly mp = minpoly_of_element(e);
                const IntPoly res = sylvester_resultant(m, e.repr);
                EXPECT_TRUE(divides(mp, canonical_form(res))) << mp.str() << " " << res.str();
                EXPECT_TRUE(is_irreducible(mp).irreducible);
                const CInterval z = e.enclose(Dyadic::pow2(-80));
                const CInterval v = eval(mp, CInterval(z.re + Interval(z.prec() + 64), z.im + Interval(z.prec() + 64)));
                EXPECT_TRUE(v.contains_zero()) << mp.str() << " g=" << e.repr.str() << " base " << alpha.str() << " re " << z.re.mid_double() << " im " << z.im.mid_double();
            }
        }
    }
}

TEST(Algebraic, ReciprocalAndConjugate) {
    const auto r = AlgebraicNumber::rational(2).reciprocal();
    EXPECT_EQ(r.to_rational(), Rational(1, 2));
    const auto roots = AlgebraicNumber::roots_of_irreducible(IntPoly{2, -2, 1});  // 1 +- i
    const auto inv = roots[1].reciprocal();
    EXPECT_EQ(inv.minpoly(), (IntPoly{1, -2, 2}));
    EXPECT_EQ(roots[0].conjugate(), roots[1]);
    // 1/(1+i) = (1-i)/2
    EXPECT_TRUE(inv.root_box().im_hi.sign() < 0);
}

TEST(Algebraic, Compositum) {
    const auto a = sqrt2();
    const auto b = AlgebraicNumber::root_of(IntPoly{-3, 0, 1}, 0);  // -sqrt3
    const auto c = compositum(a, b);
    EXPECT_EQ(c.degree(), 4);
    EXPECT_EQ(minpoly_of_element(c.alpha), a.minpoly());
    EXPECT_EQ(to_algebraic(c.alpha), a);
    EXPECT_EQ(to_algebraic(c.beta), b);
    // same field: i and (1+i)
    const auto i = AlgebraicNumber::root_of(IntPoly{1, 0, 1}, 1);
    const auto j = AlgebraicNumber::root_of(IntPoly{2, -2, 1}, 1);
    const auto ij = compositum(i, j);
    EXPECT_EQ(ij.degree(), 2);
    EXPECT_EQ(to_algebraic(ij.beta), j);
    EXPECT_EQ(to_algebraic(ij.alpha), i);
    const auto self = compositum(a, a);
    EXPECT_EQ(self.degree(), 2);
    EXPECT_EQ(to_algebraic(self.beta), a);
}
