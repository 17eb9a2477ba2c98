#include "heightcensus/bigfloat.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>

#include "heightcensus/error.hpp"

namespace hc {

namespace {
std::atomic<long> g_precision_cap{4096};
}

long precision_cap_bits() { return g_precision_cap.load(std::memory_order_relaxed); }

void set_precision_cap_bits(long bits) {
    if (bits < 64) throw DomainError("precision cap must be at least 64 bits");
    g_precision_cap.store(bits, std::memory_order_relaxed);
}

// ---------------------------------------------------------------- Dyadic

Dyadic::Dyadic(Integer mantissa, long exponent) : mant_(std::move(mantissa)), exp_(exponent) {
    if (mant_ == 0) {
        exp_ = 0;
        return;
    }
    const auto tz = mpz_scan1(mant_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
        exp_ += static_cast<long>(tz);
    }
}

Dyadic Dyadic::from_mpfr(mpfr_srcptr x) {
    if (!mpfr_number_p(x)) throw PrecisionExhausted("non-finite interval endpoint");
    if (mpfr_zero_p(x)) return Dyadic();
    Integer m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    return Dyadic(std::move(m), static_cast<long>(e));
}

Dyadic Dyadic::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '"')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '"')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    const auto star = text.find('*');
    Integer m;
    long e = 0;
    std::string_view ms = text.substr(0, star);
    if (star != std::string_view::npos) {
        std::string_view rest = text.substr(star + 1);
        if (rest.substr(0, 2) != "2^") throw DomainError("malformed dyadic: " + std::string(text));
        rest.remove_prefix(2);
        const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), e);
        if (res.ec != std::errc() || res.ptr != rest.data() + rest.size())
            throw DomainError("malformed dyadic exponent: " + std::string(text));
    }
    if (m.set_str(std::string(ms), 10) != 0) throw DomainError("malformed dyadic mantissa: " + std::string(text));
    return Dyadic(std::move(m), e);
}

Rational Dyadic::to_rational() const {
    Rational q(mant_);
    if (exp_ >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exp_));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp_));
    }
    return q;
}

std::string Dyadic::str() const { return mant_.get_str() + "*2^" + std::to_string(exp_); }

void Dyadic::to_mpfr(mpfr_ptr x) const {
    const auto bits = static_cast<mpfr_prec_t>(std::max<size_t>(mpz_sizeinbase(mant_.get_mpz_t(), 2), 2));
    if (mpfr_get_prec(x) < bits) mpfr_set_prec(x, bits);
    mpfr_set_z_2exp(x, mant_.get_mpz_t(), exp_, MPFR_RNDN);
}

long Dyadic::ilog2() const {
    if (mant_ == 0) throw DomainError("ilog2 of zero");
    return static_cast<long>(mpz_sizeinbase(mant_.get_mpz_t(), 2)) - 1 + exp_;
}

namespace {
// Brings a and b to a common exponent; returns the exponent.
long align(const Dyadic& a, const Dyadic& b, Integer& ma, Integer& mb) {
    const long e = std::min(a.exponent(), b.exponent());
    ma = a.mantissa();
    mb = b.mantissa();
    if (a.exponent() > e) mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), a.exponent() - e);
    if (b.exponent() > e) mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), b.exponent() - e);
    return e;
}
}  // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.sign() == 0) return b;
    if (b.sign() == 0) return a;
    Integer ma, mb;
    const long e = align(a, b, ma, mb);
    return Dyadic(ma + mb, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) { return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_); }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    if (a.sign() != b.sign()) return a.sign() <=> b.sign();
    Integer ma, mb;
    align(a, b, ma, mb);
    const int c = cmp(ma, mb);
    return c <=> 0;
}

std::strong_ordering compare(const Dyadic& a, const Rational& q) {
    const int c = cmp(a.to_rational(), q);
    return c <=> 0;
}

// ---------------------------------------------------------------- Float

Float::Float(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

Float::Float(const Float& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Float::Float(Float&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Float& Float::operator=(const Float& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Float& Float::operator=(Float&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Float::~Float() { mpfr_clear(v_); }

// ---------------------------------------------------------------- Interval

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval Interval::of(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo(), v, MPFR_RNDD);
    mpfr_set_si(r.hi(), v, MPFR_RNDU);
    return r;
}

Interval Interval::of(const Integer& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_z(r.lo(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi(), v.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::of(const Rational& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo(), v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi(), v.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::of(const Dyadic& v, mpfr_prec_t prec) { return hull(v, v, prec); }

Interval Interval::hull(const Dyadic& lo, const Dyadic& hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_z_2exp(r.lo(), lo.mantissa().get_mpz_t(), lo.exponent(), MPFR_RNDD);
    mpfr_set_z_2exp(r.hi(), hi.mantissa().get_mpz_t(), hi.exponent(), MPFR_RNDU);
    return r;
}

Interval Interval::log2_const(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_const_log2(r.lo(), MPFR_RNDD);
    mpfr_const_log2(r.hi(), MPFR_RNDU);
    return r;
}

Dyadic Interval::width() const {
    Float w(prec() + 2);
    mpfr_sub(w.get(), hi(), lo(), MPFR_RNDU);
    return Dyadic::from_mpfr(w.get());
}

double Interval::mid_double() const {
    return 0.5 * (mpfr_get_d(lo(), MPFR_RNDN) + mpfr_get_d(hi(), MPFR_RNDN));
}

bool Interval::contains(const Rational& q) const {
    return mpfr_cmp_q(lo(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi(), q.get_mpq_t()) >= 0;
}

bool Interval::overlaps(const Interval& o) const {
    return mpfr_lessequal_p(lo(), o.hi()) && mpfr_lessequal_p(o.lo(), hi());
}

namespace {
mpfr_prec_t pmax(const Interval& a, const Interval& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(pmax(a, b));
    mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(pmax(a, b));
    mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a) {
    Interval r(a.prec());
    mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = pmax(a, b);
    Interval r(p);
    const int sa = mpfr_sgn(a.lo()) >= 0 ? 1 : (mpfr_sgn(a.hi()) <= 0 ? -1 : 0);
    const int sb = mpfr_sgn(b.lo()) >= 0 ? 1 : (mpfr_sgn(b.hi()) <= 0 ? -1 : 0);
    if (sa == 1 && sb == 1) {
        mpfr_mul(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
        mpfr_mul(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
        return r;
    }
    mpfr_srcptr as[2] = {a.lo(), a.hi()};
    mpfr_srcptr bs[2] = {b.lo(), b.hi()};
    Float t(p);
    bool first = true;
    for (auto x : as) {
        for (auto y : bs) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo())) mpfr_set(r.lo(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi())) mpfr_set(r.hi(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = pmax(a, b);
    Interval r(p);
    if (b.contains_zero()) {
        mpfr_set_inf(r.lo(), -1);
        mpfr_set_inf(r.hi(), 1);
        return r;
    }
    mpfr_srcptr as[2] = {a.lo(), a.hi()};
    mpfr_srcptr bs[2] = {b.lo(), b.hi()};
    Float t(p);
    bool first = true;
    for (auto x : as) {
        for (auto y : bs) {
            mpfr_div(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo())) mpfr_set(r.lo(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi())) mpfr_set(r.hi(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Interval abs(const Interval& a) {
    if (mpfr_sgn(a.lo()) >= 0) return a;
    if (mpfr_sgn(a.hi()) <= 0) return -a;
    Interval r(a.prec());
    mpfr_set_zero(r.lo(), 1);
    if (mpfr_cmpabs(a.lo(), a.hi()) > 0) {
        mpfr_abs(r.hi(), a.lo(), MPFR_RNDU);
    } else {
        mpfr_set(r.hi(), a.hi(), MPFR_RNDU);
    }
    return r;
}

Interval sqr(const Interval& a) {
    Interval m = abs(a);
    Interval r(a.prec());
    mpfr_sqr(r.lo(), m.lo(), MPFR_RNDD);
    mpfr_sqr(r.hi(), m.hi(), MPFR_RNDU);
    return r;
}

Interval sqrt(const Interval& a) {
    Interval r(a.prec());
    if (mpfr_sgn(a.lo()) <= 0) {
        mpfr_set_zero(r.lo(), 1);
    } else {
        mpfr_sqrt(r.lo(), a.lo(), MPFR_RNDD);
    }
    if (mpfr_sgn(a.hi()) < 0) {
        mpfr_set_zero(r.hi(), 1);
    } else {
        mpfr_sqrt(r.hi(), a.hi(), MPFR_RNDU);
    }
    return r;
}

Interval log(const Interval& a) {
    Interval r(a.prec());
    if (mpfr_sgn(a.lo()) <= 0) {
        mpfr_set_inf(r.lo(), -1);
    } else {
        mpfr_log(r.lo(), a.lo(), MPFR_RNDD);
    }
    if (mpfr_sgn(a.hi()) <= 0) {
        mpfr_set_inf(r.hi(), -1);
    } else {
        mpfr_log(r.hi(), a.hi(), MPFR_RNDU);
    }
    return r;
}

Interval exp(const Interval& a) {
    Interval r(a.prec());
    mpfr_exp(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_exp(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

Interval max_with(const Interval& a, long floor_value) {
    Interval r = a;
    if (mpfr_cmp_si(r.lo(), floor_value) < 0) mpfr_set_si(r.lo(), floor_value, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi(), floor_value) < 0) mpfr_set_si(r.hi(), floor_value, MPFR_RNDU);
    return r;
}

Interval pow(const Interval& a, unsigned long n) {
    Interval result = Interval::of(1L, a.prec());
    Interval base = a;
    while (n > 0) {
        if (n & 1UL) result = result * base;
        n >>= 1;
        if (n > 0) base = sqr(base);
    }
    return result;
}

Interval join(const Interval& a, const Interval& b) {
    Interval r(pmax(a, b));
    mpfr_min(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

int compare(const Interval& a, const Rational& q) {
    if (mpfr_cmp_q(a.hi(), q.get_mpq_t()) < 0) return -1;
    if (mpfr_cmp_q(a.lo(), q.get_mpq_t()) > 0) return 1;
    return 0;
}

int compare(const Interval& a, const Interval& b) {
    if (mpfr_less_p(a.hi(), b.lo())) return -1;
    if (mpfr_greater_p(a.lo(), b.hi())) return 1;
    return 0;
}

// ---------------------------------------------------------------- CInterval

CInterval operator+(const CInterval& a, const CInterval& b) { return {a.re + b.re, a.im + b.im}; }
CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }

CInterval operator*(const CInterval& a, const CInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CInterval operator*(const CInterval& a, const Interval& b) { return {a.re * b, a.im * b}; }

CInterval operator/(const CInterval& a, const CInterval& b) {
    const Interval n = norm(b);
    const CInterval num = a * b.conj();
    return {num.re / n, num.im / n};
}

Interval norm(const CInterval& z) { return sqr(z.re) + sqr(z.im); }

Interval abs(const CInterval& z) { return sqrt(norm(z)); }

}  // namespace hc
