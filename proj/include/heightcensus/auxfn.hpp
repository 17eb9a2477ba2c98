#pragma once

// Auxiliary-function machinery at desk scale: parameters, a small integer
// polynomial vanishing on a point set, the Schwarz-type growth bound, the
// Liouville lower bound, and a finite zero-propagation chain.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heightcensus/heights.hpp"

namespace hc {

struct AuxParams {
    Rational R, r, fR;
    int D = 1;
    long N0 = 1;
    RealEnclosure c0;  // log((R^2 + r^2) / (2 r R))
    Integer gamma;     // least integer > 72 / c0^2
    long T = 0;        // floor(c0 gamma D^2 N0 / 6)
    RealEnclosure u1;  // log(2 T^4 e^{2 N0 T} fR^T)
    bool gamma_ok = false;             // gamma c0^2 > 72, certified
    std::optional<Integer> s_prev;     // s_{N0 - 1}, when supplied
    std::optional<bool> zero_count_ok;   // c0 s > u1 + (D-1) log(2T^4) + 2 T N0 (D-1) + 2 T N0 D

    Interval c0_at(mpfr_prec_t prec) const;
    Interval u1_at(mpfr_prec_t prec) const;
};

/// R = +infinity is not representable here; callers pass rationals with R > r > 0.
AuxParams compute_params(const Rational& R, const Rational& r, const Rational& fR, int D, long N0,
                         std::optional<Integer> s_prev = std::nullopt);

/// sum |c_i| R^i: an exact bound for |f| on |z| <= R.
Rational poly_sup_bound(const RatPoly& f, const Rational& R);

/// coeff[i][j] multiplies X^i Y^j; a (T+1) x (T+1) grid.
struct BivarIntPoly {
    std::vector<std::vector<Integer>> coeff;

    static BivarIntPoly zero(int T);
    int T() const { return static_cast<int>(coeff.size()) - 1; }
    bool is_zero() const;
    Integer max_abs() const;
    /// Sum of absolute values of the coefficients.
    Integer length() const;
    int total_degree() const;
    int degree_y() const;
    std::string str() const;
    friend bool operator==(const BivarIntPoly&, const BivarIntPoly&) = default;
};

using PointPair = std::pair<AlgebraicNumber, AlgebraicNumber>;

/// Q(alpha, beta) = Q(theta) with alpha = x(theta), beta = y(theta).
struct PointField {
    AlgebraicNumber theta;
    RatPoly x, y;
    int degree() const { return theta.degree(); }
};
PointField point_field(const AlgebraicNumber& alpha, const AlgebraicNumber& beta);

/// P(alpha, beta) in Q(theta).
NumberFieldElement evaluate(const BivarIntPoly& p, const PointField& field);
NumberFieldElement evaluate(const BivarIntPoly& p, const AlgebraicNumber& alpha, const AlgebraicNumber& beta);

/// Checks [Q(alpha, beta) : Q] <= D, |alpha| <= r (when r is given) and distinct alphas.
void validate_points(const std::vector<PointPair>& points, int D, const std::optional<Rational>& r);

struct SiegelResult {
    BivarIntPoly P;
    Integer max_coeff;
    RealEnclosure bound;  // 2 T^2 e^{2 T N0}
    bool meets_bound = false;
    std::size_t equations = 0;
    std::size_t kernel_rank = 0;
};
SiegelResult siegel_solve(const std::vector<PointPair>& points, int T, int D, long N0);

/// e^{u1 - c0 s}.
RealEnclosure schwarz_bound(const AuxParams& params, const Integer& s);
Interval schwarz_bound_at(const AuxParams& params, const Integer& s, mpfr_prec_t prec);

struct LiouvilleResult {
    bool zero = false;
    RealEnclosure value;  // |P(alpha, beta)|
    RealEnclosure bound;  // L(P)^{-(D-1)} e^{-D T (h(alpha) + h(beta))}
    bool exact = false;   // both sides rational and compared exactly
    bool equality = false;
};
/// Throws VerificationFailure if |P(alpha, beta)| is provably below the bound.
LiouvilleResult liouville_check(const BivarIntPoly& p, const AlgebraicNumber& alpha, const AlgebraicNumber& beta,
                                int D, int T);

struct PropagationPoint {
    PointPair point;
    RealEnclosure threshold;  // Liouville threshold at this point
    bool forced = false;      // Schwarz bound below the threshold
    bool vanishes = false;    // P(alpha, beta) = 0 exactly
};
struct PropagationStep {
    long N = 0;
    Integer zeros_known;      // s: points where vanishing is established before this level
    RealEnclosure schwarz;
    std::vector<PropagationPoint> points;
    bool all_forced = false;
};
struct PropagationReport {
    SiegelResult siegel;
    long N_start = 0;
    std::vector<PropagationStep> steps;
    std::vector<std::string> notes;
    bool pass() const;
};
/// levels[N] is the point set S at level N (nested). The Siegel polynomial is
/// computed at N_start with params.T.
PropagationReport propagate_demo(const AuxParams& params, const std::map<long, std::vector<PointPair>>& levels,
                                 long N_start, int steps);

}  // namespace hc
