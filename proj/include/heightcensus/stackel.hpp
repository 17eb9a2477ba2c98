#pragma once

// An entire function f(z) = sum_k a_k P_k(z) whose values at algebraic points
// are algebraic: a finite, exactly verified prefix of its defining data.

#include <string>
#include <vector>

#include "heightcensus/census.hpp"

namespace hc {

/// phi(x) = log(1 + x) / c with threshold x0 (phi(x) <= x - 1 for x >= x0).
struct PhiSpec {
    Rational c = 4;
    Rational x0 = Rational(6, 5);

    /// "log1p/4"; x0 supplied separately.
    static PhiSpec parse(const std::string& id, const Rational& x0 = Rational(6, 5));
    std::string id() const;
    Interval eval(const Interval& x) const;
    Interval eval(const Rational& x, mpfr_prec_t prec) const { return eval(Interval::of(x, prec)); }
    /// Throws DomainError unless phi(x0) <= x0 - 1 (certified), c(1 + x0) >= 1
    /// (so x - 1 - phi(x) is nondecreasing past x0), and phi > 0 on a sample grid.
    void validate() const;
};

struct StackelPrefix {
    PhiSpec phi;
    int depth = 1;
    std::vector<Rational> N;   // N_1 .. N_depth
    std::vector<Rational> a;   // a_1 .. a_{depth-1}
    std::vector<RatPoly> P;    // P_1 .. P_{depth-1}
    std::vector<Integer> eps;  // eps_{k, N_k}, k = 1 .. depth-1

    /// b_k = 2^-k.
    static Rational b(int k);
    const Rational& n_at(int k) const { return N.at(static_cast<std::size_t>(k - 1)); }
};

struct StackelOptions {
    Integer budget = default_budget();
    unsigned workers = 1;
    /// Grid step for N.
    Rational step = Rational(1, 8);
};

StackelPrefix choose_sequences(const PhiSpec& phi, int depth, const StackelOptions& opt = {});

/// prod over the distinct minimal polynomials m of E_{k,N_k} of m / lead(m).
RatPoly build_Pk(const StackelPrefix& prefix, int k, const StackelOptions& opt = {});

/// Least materialized k with alpha in E_{k,N_k}; 0 if none.
int first_level(const StackelPrefix& prefix, const AlgebraicNumber& alpha);

/// sum_{k < k0} a_k P_k(alpha) in Q(alpha). start_level > 0 overrides k0 (must be >= k0).
NumberFieldElement eval_f(const StackelPrefix& prefix, const AlgebraicNumber& alpha, int start_level = 0);

/// f(alpha) has rational power-basis coordinates and, for rational alpha, is rational.
bool verify_membership(const StackelPrefix& prefix, const AlgebraicNumber& alpha);

struct PrefixCheck {
    bool n_increasing = false;
    bool condition_i = false;
    bool eq2 = false;
    bool eq3 = false;
    bool eps_match = false;
    bool p_rational_monic = false;
    bool p_vanishing = false;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};
/// Re-verifies every stored quantity from scratch.
PrefixCheck check_prefix(const StackelPrefix& prefix, const StackelOptions& opt = {});

struct PointVerdict {
    AlgebraicNumber alpha;
    NumberFieldElement value;
    IntPoly value_minpoly;
    RealEnclosure value_height;
    bool degree_ok = false, height_ok = false, value_height_ok = false, chain_ok = true;
};

struct Theorem1Report {
    int D = 1, d = 1;
    Rational Nd;
    Interval threshold{64};       // phi(N_d) + 1
    Integer card_E = 0;           // card E_{D, phi(N_d)+1}
    Integer card_disc = 0;        // ... intersected with the closed unit disc
    Integer sigma_lower = 0;      // points verified to lie in the filtration
    RealEnclosure half_exp;       // (1/2) e^{D(D+1) phi(N_d)}
    bool card_ok = false;         // sigma_lower >= half_exp, decided exactly
    bool chain_applicable = false;
    RealEnclosure chain_bound;    // phi(N_d)(d-1)^2 eps + log(d-1) + A + (d-1)^2 eps (log 2 + 1 + N_{d-1})
    bool chain_below_nd = false;
    std::vector<PointVerdict> points;  // disc points only
    std::vector<std::string> counterexamples;
    bool pass() const { return counterexamples.empty() && card_ok && (!chain_applicable || chain_below_nd); }
};

Theorem1Report verify_theorem1(const StackelPrefix& prefix, int D, int d, const StackelOptions& opt = {});

}  // namespace hc
