#pragma once

// Mahler measure, absolute logarithmic height, and exact threshold decisions.

#include <functional>
#include <string>

#include "heightcensus/algebraic.hpp"

namespace hc {

struct RealEnclosure {
    Dyadic lo, hi;

    Dyadic width() const { return hi - lo; }
    bool exact() const { return lo == hi; }
    Interval to_interval(mpfr_prec_t prec) const { return Interval::hull(lo, hi, prec); }
    static RealEnclosure from(const Interval& v) { return {v.lower(), v.upper()}; }
    bool contains(const Rational& q) const { return compare(lo, q) <= 0 && compare(hi, q) >= 0; }
};

/// Height bound N: a rational, the log of a rational B >= 1, or a computed
/// real (enclosure supplied by a callback) known not to make e^{dN} rational.
class ThresholdSpec {
public:
    enum class Kind { Rational, LogRational, Computed };

    static ThresholdSpec rational(Rational n);
    static ThresholdSpec log_rational(Rational b);
    static ThresholdSpec computed(std::string label, std::function<Interval(mpfr_prec_t)> enclose);
    /// "3/2", "0", "log(5/2)", optionally prefixed by "N=".
    static ThresholdSpec parse(const std::string& text);

    Kind kind() const noexcept { return kind_; }
    const Rational& value() const noexcept { return value_; }
    /// Enclosure of N itself.
    Interval enclose(mpfr_prec_t prec) const;
    /// Enclosure of e^{d N}.
    Interval exp_dn(int d, mpfr_prec_t prec) const;
    /// N = 0 exactly (Rational 0 or log 1).
    bool is_zero() const;
    std::string str() const;

private:
    Kind kind_ = Kind::Rational;
    Rational value_ = 0;
    std::string label_;
    std::function<Interval(mpfr_prec_t)> fn_;
};

/// |lead| * prod max(1, |r_i|) as an enclosure of width <= width (exact when decidable cheaply).
RealEnclosure mahler_measure(const IntPoly& p, const Dyadic& width);
/// log M(minpoly) / d.
RealEnclosure height(const AlgebraicNumber& a, const Dyadic& width);
RealEnclosure poly_height(const IntPoly& minpoly, const Dyadic& width);

/// M(p) = 1 for canonical irreducible p: p = X or p cyclotomic.
bool is_unit_measure(const IntPoly& p);

/// Exact h <= N for any root of the canonical irreducible p.
bool poly_height_leq(const IntPoly& p, const ThresholdSpec& n);
bool height_leq(const AlgebraicNumber& a, const ThresholdSpec& n);

/// Exact sign of |r| - 1 for every root of the canonical irreducible p (canonical root order).
std::vector<int> circle_signs(const IntPoly& p);
/// Exact sign of |a| - 1.
int circle_sign(const AlgebraicNumber& a);
bool abs_leq_one(const AlgebraicNumber& a);

/// p == reverse(p) up to sign.
bool is_reciprocal(const IntPoly& p);

}  // namespace hc
