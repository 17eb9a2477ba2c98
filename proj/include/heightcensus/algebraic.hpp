#pragma once

// Algebraic numbers as (canonical irreducible minimal polynomial, root index),
// exact arithmetic in Q(alpha), minimal polynomials of field elements, and
// primitive elements for two-generator fields.

#include <compare>
#include <string>
#include <vector>

#include "heightcensus/poly.hpp"
#include "heightcensus/roots.hpp"

namespace hc {

class AlgebraicNumber {
public:
    AlgebraicNumber() : AlgebraicNumber(rational(Rational(0))) {}

    /// Root `index` (canonical order) of p; p must be canonical and irreducible (checked).
    static AlgebraicNumber root_of(const IntPoly& p, std::size_t index);
    /// All roots of a canonical irreducible p, in canonical order (irreducibility not re-checked).
    static std::vector<AlgebraicNumber> roots_of_irreducible(const IntPoly& p);
    static AlgebraicNumber rational(const Rational& q);
    /// The root of the canonical irreducible p whose box is the only one meeting
    /// enclose(w) as w shrinks.
    template <class EncloseFn>
    static AlgebraicNumber matching(const IntPoly& p, EncloseFn&& enclose) {
        return from_parts(p, match_root(p, enclose));
    }
    static AlgebraicNumber from_parts(const IntPoly& p, std::size_t index);

    const IntPoly& minpoly() const noexcept { return minpoly_; }
    int degree() const noexcept { return minpoly_.degree(); }
    std::size_t index() const noexcept { return index_; }
    const ComplexBox& root_box() const noexcept { return box_; }

    bool is_rational() const noexcept { return degree() == 1; }
    Rational to_rational() const;
    bool is_zero() const { return is_rational() && minpoly_[0] == 0; }
    bool is_real() const { return box_.self_conjugate(); }

    /// Isolating box of width <= width.
    ComplexBox enclosure(const Dyadic& width) const;
    CInterval enclosure_interval(const Dyadic& width) const;

    AlgebraicNumber conjugate() const;
    /// 1/alpha; alpha != 0. Minimal polynomial is the reversed tuple, canonicalized.
    AlgebraicNumber reciprocal() const;

    std::string str() const;

    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
        return a.index_ == b.index_ && a.minpoly_ == b.minpoly_;
    }
    /// Canonical order: degree, minpoly coefficient tuple, root index.
    friend std::strong_ordering operator<=>(const AlgebraicNumber& a, const AlgebraicNumber& b) {
        if (auto c = a.minpoly_ <=> b.minpoly_; c != 0) return c;
        return a.index_ <=> b.index_;
    }

private:
    AlgebraicNumber(IntPoly p, std::size_t index, ComplexBox box)
        : minpoly_(std::move(p)), index_(index), box_(std::move(box)) {}

    IntPoly minpoly_;
    std::size_t index_ = 0;
    ComplexBox box_;
};

/// Interval evaluation helpers.
CInterval eval(const IntPoly& p, const CInterval& z);
CInterval eval(const RatPoly& p, const CInterval& z);

/// Arithmetic in Q[X]/(m) for irreducible m.
class FieldOps {
public:
    explicit FieldOps(const IntPoly& minpoly) : m_(monic(to_rat(minpoly))) {}
    explicit FieldOps(RatPoly monic_minpoly) : m_(std::move(monic_minpoly)) {}

    const RatPoly& modulus() const noexcept { return m_; }
    RatPoly reduce(const RatPoly& a) const { return a % m_; }
    RatPoly mul(const RatPoly& a, const RatPoly& b) const { return (a * b) % m_; }
    RatPoly inv(const RatPoly& a) const;
    RatPoly pow(RatPoly a, unsigned long e) const;

private:
    RatPoly m_;
};

struct NumberFieldElement {
    AlgebraicNumber base;
    /// g with deg g < d(base); the element is g(base).
    RatPoly repr;

    bool is_zero() const { return repr.is_zero(); }
    /// repr is constant.
    bool is_rational() const { return repr.degree() <= 0; }
    Rational rational_value() const;
    /// Enclosure of the complex value of width <= width.
    CInterval enclose(const Dyadic& width) const;
};

NumberFieldElement poly_eval_in_field(const RatPoly& g, const AlgebraicNumber& a);
NumberFieldElement operator+(const NumberFieldElement& x, const NumberFieldElement& y);
NumberFieldElement operator-(const NumberFieldElement& x, const NumberFieldElement& y);
NumberFieldElement operator*(const NumberFieldElement& x, const NumberFieldElement& y);

/// Canonical minimal polynomial of g(alpha): the squarefree part of the
/// characteristic polynomial of multiplication by g on Q(alpha), which equals
/// Res_x(minpoly(x), y - g(x)) up to a constant and is a power of an irreducible.
IntPoly minpoly_of_element(const NumberFieldElement& e);
/// The element as an AlgebraicNumber (minimal polynomial plus matched root).
AlgebraicNumber to_algebraic(const NumberFieldElement& e);

/// Q(alpha, beta) = Q(theta) with theta = alpha + t*beta, and both generators expressed in theta.
struct Compositum {
    AlgebraicNumber theta;
    long t = 0;
    NumberFieldElement alpha;
    NumberFieldElement beta;
    int degree() const { return theta.degree(); }
};
Compositum compositum(const AlgebraicNumber& a, const AlgebraicNumber& b);

}  // namespace hc
