#pragma once

// Exhaustive enumeration of algebraic numbers of bounded degree and height,
// the 2-Eisenstein lower-bound count, and the two-sided counting bound.

#include <map>
#include <utility>
#include <vector>

#include "heightcensus/heights.hpp"

namespace hc {

/// 10^9 unless HEIGHTCENSUS_BUDGET is set.
Integer default_budget();

struct CensusSpec {
    int D = 1;
    ThresholdSpec N = ThresholdSpec::rational(0);
    Integer budget = default_budget();
    unsigned workers = 1;
    bool listing = true;
};

struct CensusStats {
    Integer candidates = 0;  // size of the scanned box
    Integer passed_filters = 0;
    Integer irreducible = 0;
    Integer accepted_polys = 0;
};

struct CensusResult {
    Integer epsilon = 0;
    std::map<int, Integer> by_degree;
    /// Canonical minimal polynomials of the accepted numbers, sorted.
    std::vector<IntPoly> minpolys;
    /// Present when requested: every element, canonical order.
    std::vector<AlgebraicNumber> listing;
    bool has_listing = false;
    CensusStats stats;
};

using CoefficientRange = std::pair<long, long>;

/// B_k with |a_{d-k}| <= B_k = ceil(binom(d, k) e^{dN}), k = 0..d.
std::vector<Integer> candidate_box(int d, const ThresholdSpec& n);
/// Total number of candidates for degrees 1..D (leading coefficient positive).
Integer candidate_count(int D, const ThresholdSpec& n);
/// floor(e^{dN}), certified.
Integer floor_exp_dn(int d, const ThresholdSpec& n);

/// Accepted minimal polynomials of degree d whose coefficient a_i lies in ranges[i]
/// (i = 0..d), intersected with the candidate box. Sorted.
std::vector<IntPoly> scan_box(int d, const ThresholdSpec& n, const std::vector<CoefficientRange>& ranges,
                              CensusStats* stats = nullptr);
/// The full degree-d box as ranges (a_0 .. a_d).
std::vector<CoefficientRange> full_ranges(int d, const ThresholdSpec& n);

CensusResult enumerate_E(const CensusSpec& spec);
Integer epsilon(int D, const ThresholdSpec& n, const Integer& budget = default_budget(), unsigned workers = 1);
/// D = 1: 1 + 2(2 Phi(H) - 1), H = floor(e^N), Phi the totient summatory function.
Integer epsilon_degree_one(const ThresholdSpec& n);

/// Polynomials of degree exactly D, all |a_i| <= H, a_D odd, a_i even for i < D, a_0 = 2 mod 4.
Integer count_eisenstein(int D, const Integer& H);

struct Lemma1Report {
    int D = 1;
    ThresholdSpec N = ThresholdSpec::rational(0);
    Integer epsilon = 0;
    RealEnclosure lower, upper;  // e^{D(D+1)(N-1)}, e^{D(D+1)(N+1)}
    bool lower_exact = false;
    bool lower_ok = false, upper_ok = false;
    bool pass() const { return lower_ok && upper_ok; }
};
Lemma1Report verify_lemma1(int D, const ThresholdSpec& n, const Integer& budget = default_budget(), unsigned workers = 1);

}  // namespace hc
