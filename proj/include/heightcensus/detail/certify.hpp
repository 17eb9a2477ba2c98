#pragma once

// Refinement loops that settle comparisons of interval-valued quantities.

#include <string>

#include "heightcensus/bigfloat.hpp"
#include "heightcensus/error.hpp"

namespace hc::detail {

inline Integer floor_q(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

inline Integer ceil_q(const Rational& q) {
    Integer f;
    mpz_cdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

/// Sign of f(prec) - q, doubling prec until the enclosure excludes q.
template <class F>
int certified_sign(F&& f, const Rational& q, const char* what, mpfr_prec_t start = 64) {
    for (mpfr_prec_t prec = start;; prec *= 2) {
        if (prec > precision_cap_bits()) throw PrecisionExhausted(std::string(what) + ": comparison exceeded the precision cap");
        const int s = compare(f(prec), q);
        if (s != 0) return s;
    }
}

/// ceil(f(prec)), doubling prec until both endpoints agree.
template <class F>
Integer certified_ceil(F&& f, const char* what, mpfr_prec_t start = 64) {
    for (mpfr_prec_t prec = start;; prec *= 2) {
        if (prec > precision_cap_bits()) throw PrecisionExhausted(std::string(what) + ": rounding exceeded the precision cap");
        const Interval v = f(prec);
        const Integer lo = ceil_q(v.lower().to_rational());
        if (lo == ceil_q(v.upper().to_rational())) return lo;
    }
}

/// floor(f(prec)), doubling prec until both endpoints agree.
template <class F>
Integer certified_floor(F&& f, const char* what, mpfr_prec_t start = 64) {
    for (mpfr_prec_t prec = start;; prec *= 2) {
        if (prec > precision_cap_bits()) throw PrecisionExhausted(std::string(what) + ": rounding exceeded the precision cap");
        const Interval v = f(prec);
        const Integer lo = floor_q(v.lower().to_rational());
        if (lo == floor_q(v.upper().to_rational())) return lo;
    }
}

/// Sign of f(prec) - g(prec) once the enclosures separate.
template <class F, class G>
int certified_compare(F&& f, G&& g, const char* what, mpfr_prec_t start = 64) {
    for (mpfr_prec_t prec = start;; prec *= 2) {
        if (prec > precision_cap_bits()) throw PrecisionExhausted(std::string(what) + ": comparison exceeded the precision cap");
        const int s = compare(f(prec), g(prec));
        if (s != 0) return s;
    }
}

}  // namespace hc::detail
