#pragma once

// Multiprecision building blocks: exact dyadic numbers, an RAII MPFR handle,
// and outward-rounded real/complex interval arithmetic on top of MPFR.

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace hc {

using Integer = mpz_class;
using Rational = mpq_class;

/// Global cap on working precision (bits) for every certified computation.
/// Exceeding it raises PrecisionExhausted.
long precision_cap_bits();
void set_precision_cap_bits(long bits);

/// Exact number m * 2^e. Normalized so that m is odd (or m = 0, e = 0).
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(Integer mantissa, long exponent);
    explicit Dyadic(long v) : Dyadic(Integer(v), 0) {}

    static Dyadic from_mpfr(mpfr_srcptr x);
    static Dyadic pow2(long e) { return Dyadic(Integer(1), e); }
    /// Parses "m*2^e" or a plain decimal integer.
    static Dyadic parse(std::string_view text);

    const Integer& mantissa() const noexcept { return mant_; }
    long exponent() const noexcept { return exp_; }
    int sign() const noexcept { return sgn(mant_); }

    Rational to_rational() const;
    std::string str() const;
    /// Exact assignment into x (precision of x is raised if needed).
    void to_mpfr(mpfr_ptr x) const;
    /// floor(log2 |x|); x must be nonzero.
    long ilog2() const;

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a) { return Dyadic(-a.mant_, a.exp_); }
    friend bool operator==(const Dyadic& a, const Dyadic& b) noexcept {
        return a.exp_ == b.exp_ && a.mant_ == b.mant_;
    }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
    friend std::strong_ordering compare(const Dyadic& a, const Rational& q);

private:
    Integer mant_ = 0;
    long exp_ = 0;
};

/// Owning mpfr_t.
class Float {
public:
    explicit Float(mpfr_prec_t prec = 64);
    Float(const Float& o);
    Float(Float&& o) noexcept;
    Float& operator=(const Float& o);
    Float& operator=(Float&& o) noexcept;
    ~Float();

    mpfr_ptr get() noexcept { return v_; }
    mpfr_srcptr get() const noexcept { return v_; }
    mpfr_prec_t prec() const noexcept { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

/// Closed real interval [lo, hi] with MPFR endpoints; every operation rounds outward.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64);

    static Interval of(long v, mpfr_prec_t prec);
    static Interval of(const Integer& v, mpfr_prec_t prec);
    static Interval of(const Rational& v, mpfr_prec_t prec);
    static Interval of(const Dyadic& v, mpfr_prec_t prec);
    static Interval hull(const Dyadic& lo, const Dyadic& hi, mpfr_prec_t prec);
    /// Enclosures of log(2) and e at the given precision.
    static Interval log2_const(mpfr_prec_t prec);

    mpfr_prec_t prec() const noexcept { return lo_.prec(); }
    mpfr_srcptr lo() const noexcept { return lo_.get(); }
    mpfr_srcptr hi() const noexcept { return hi_.get(); }
    mpfr_ptr lo() noexcept { return lo_.get(); }
    mpfr_ptr hi() noexcept { return hi_.get(); }

    Dyadic lower() const { return Dyadic::from_mpfr(lo()); }
    Dyadic upper() const { return Dyadic::from_mpfr(hi()); }
    /// Upper bound of hi - lo.
    Dyadic width() const;
    double mid_double() const;

    bool contains_zero() const { return mpfr_sgn(lo()) <= 0 && mpfr_sgn(hi()) >= 0; }
    bool positive() const { return mpfr_sgn(lo()) > 0; }
    bool negative() const { return mpfr_sgn(hi()) < 0; }
    bool contains(const Rational& q) const;
    bool overlaps(const Interval& o) const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a);

private:
    Float lo_, hi_;
};

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval log(const Interval& a);
Interval exp(const Interval& a);
Interval abs(const Interval& a);
Interval max_with(const Interval& a, long floor_value);
Interval pow(const Interval& a, unsigned long n);
/// Smallest interval containing both.
Interval join(const Interval& a, const Interval& b);

/// Certified sign of (a - q): -1 if a < q, +1 if a > q, 0 if the interval contains q.
int compare(const Interval& a, const Rational& q);
/// -1 if a < b entirely, +1 if a > b entirely, 0 if they overlap.
int compare(const Interval& a, const Interval& b);

/// Rectangular complex interval.
struct CInterval {
    Interval re, im;

    explicit CInterval(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    CInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t prec() const { return re.prec(); }
    CInterval conj() const { return {re, -im}; }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

CInterval operator+(const CInterval& a, const CInterval& b);
CInterval operator-(const CInterval& a, const CInterval& b);
CInterval operator*(const CInterval& a, const CInterval& b);
CInterval operator*(const CInterval& a, const Interval& b);
CInterval operator/(const CInterval& a, const CInterval& b);
/// Enclosure of |z|.
Interval abs(const CInterval& z);
/// Enclosure of |z|^2.
Interval norm(const CInterval& z);

}  // namespace hc
