#pragma once

// Irreducibility and factorization over Q for desk-scale integer polynomials.

#include <vector>

#include "heightcensus/poly.hpp"

namespace hc {

struct IrreducibilityResult {
    bool irreducible = false;
    /// Nontrivial canonical factor when reducible.
    IntPoly witness;
};

/// p canonical of degree >= 1. Degree <= 3 uses an exact rational root test;
/// higher degrees search conjugation-closed subsets of certified roots for a
/// factor whose scaled product has integer coefficients, confirmed by exact division.
IrreducibilityResult is_irreducible(const IntPoly& p);

/// Canonical irreducible factors of a squarefree p, sorted, without multiplicity.
std::vector<IntPoly> factor_squarefree(const IntPoly& p);

/// Distinct canonical irreducible factors of any nonconstant p.
std::vector<IntPoly> irreducible_factors(const IntPoly& p);

/// Bound on the coefficients of any integer factor: 2^deg * ceil(||p||_2).
Integer mignotte_bound(const IntPoly& p);

/// Positive divisors of n != 0 by trial division (ascending).
std::vector<Integer> positive_divisors(const Integer& n);

}  // namespace hc
