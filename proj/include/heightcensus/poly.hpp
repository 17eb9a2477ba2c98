#pragma once

// Dense univariate polynomials over Z and Q, stored in ascending degree order.

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "heightcensus/bigfloat.hpp"
#include "heightcensus/error.hpp"

namespace hc {

template <class R>
class Poly {
public:
    using coeff_type = R;

    Poly() = default;
    explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(long v) : c_{R(v)} { trim(); }
    Poly(std::initializer_list<long> coeffs) {
        c_.reserve(coeffs.size());
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static Poly constant(R v) { return Poly(std::vector<R>{std::move(v)}); }
    static Poly monomial(R v, std::size_t k) {
        std::vector<R> c(k + 1, R(0));
        c[k] = std::move(v);
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(R(1), 1); }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::size_t size() const noexcept { return c_.size(); }

    const std::vector<R>& coeffs() const noexcept { return c_; }
    /// Coefficient of X^i; zero past the degree.
    R operator[](std::size_t i) const { return i < c_.size() ? c_[i] : R(0); }
    const R& lead() const {
        if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
        return c_.back();
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<R> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * R(static_cast<long>(i));
        return Poly(std::move(d));
    }

    /// X^deg * p(1/X).
    Poly reversed() const {
        std::vector<R> r(c_.rbegin(), c_.rend());
        return Poly(std::move(r));
    }

    /// p(-X).
    Poly negated_argument() const {
        std::vector<R> r = c_;
        for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
        return Poly(std::move(r));
    }

    template <class T>
    T eval(const T& x) const {
        if (c_.empty()) return T(0);
        T acc(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + T(c_[i]);
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const R& s) {
        for (auto& v : c_) v *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Poly operator*(Poly a, const R& s) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<R> r(a.c_.size() + b.c_.size() - 1, R(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Lexicographic on the ascending coefficient tuple, shorter tuples first.
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return a.c_.size() <=> b.c_.size();
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            const int s = cmp(a.c_[i], b.c_[i]);
            if (s != 0) return s <=> 0;
        }
        return std::strong_ordering::equal;
    }

    /// "[-2, 0, 1]" for X^2 - 2.
    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ", ";
            s += c_[i].get_str();
        }
        if (c_.empty()) s += "0";
        return s + "]";
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<R> c_;
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

// --- Z[X] ---------------------------------------------------------------

Integer content(const IntPoly& p);
/// p / content(p) with positive leading coefficient.
IntPoly canonical_form(const IntPoly& p);
bool is_canonical(const IntPoly& p);
/// Exact quotient over Z, or false when d does not divide p.
bool divides(const IntPoly& d, const IntPoly& p, IntPoly* quotient = nullptr);
IntPoly exact_quotient(const IntPoly& p, const IntPoly& d);
/// Canonical gcd over Q[X], returned as a primitive integer polynomial.
IntPoly gcd(const IntPoly& a, const IntPoly& b);
bool is_squarefree(const IntPoly& p);
/// Canonical p / gcd(p, p').
IntPoly squarefree_part(const IntPoly& p);
/// Yun decomposition: p = c * prod_k factors[k-1]^k with primitive factors.
struct SquarefreeDecomposition {
    Integer unit;
    std::vector<IntPoly> factors;
};
SquarefreeDecomposition squarefree_decomposition(const IntPoly& p);
/// Exact resultant over Z via the Euclidean remainder sequence over Q.
Integer resultant(const IntPoly& a, const IntPoly& b);
/// Parses "[-2, 0, 1]" (unicode minus accepted).
IntPoly parse_int_poly(const std::string& text);

// --- Q[X] ---------------------------------------------------------------

RatPoly to_rat(const IntPoly& p);
/// Clears denominators: returns primitive integer polynomial q with p = (num/den) * q.
IntPoly primitive_integer_multiple(const RatPoly& p);
RatPoly monic(const RatPoly& p);
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
RatPoly operator%(const RatPoly& a, const RatPoly& b);
RatPoly operator/(const RatPoly& a, const RatPoly& b);
/// Monic gcd.
RatPoly gcd(const RatPoly& a, const RatPoly& b);
/// Extended gcd: s*a + t*b = g (monic).
RatPoly xgcd(const RatPoly& a, const RatPoly& b, RatPoly& s, RatPoly& t);
Rational resultant(const RatPoly& a, const RatPoly& b);
RatPoly parse_rat_poly(const std::string& text);
Rational parse_rational(const std::string& text);

}  // namespace hc
