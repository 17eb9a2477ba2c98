#include "heightcensus/auxfn.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "heightcensus/detail/certify.hpp"
#include "heightcensus/linalg.hpp"

namespace hc {

using detail::certified_ceil;
using detail::certified_compare;
using detail::certified_floor;
using detail::certified_sign;

namespace {

Interval iv(const Rational& q, mpfr_prec_t prec) { return Interval::of(q, prec); }

// Width for heights and values matching a working precision.
Dyadic width_for(mpfr_prec_t prec) { return Dyadic::pow2(-static_cast<long>(prec) + 8); }

Rational rational_measure(const Rational& q) {
    const Integer num = abs(q.get_num());
    return Rational(num > q.get_den() ? num : q.get_den());
}

Rational pow_q(const Rational& b, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

// log of L(P)^{-(D-1)} e^{-D T (h(alpha) + h(beta))}.
Interval log_liouville_bound(const Integer& length, const AlgebraicNumber& a, const AlgebraicNumber& b, int D, int T,
                             mpfr_prec_t prec) {
    const Dyadic w = width_for(prec);
    const Interval ha = poly_height(a.minpoly(), w).to_interval(prec);
    const Interval hb = poly_height(b.minpoly(), w).to_interval(prec);
    return -Interval::of(static_cast<long>(D - 1), prec) * log(Interval::of(length, prec)) -
           Interval::of(static_cast<long>(D) * T, prec) * (ha + hb);
}

// Sign convention: the last nonzero coefficient in row-major order is positive.
void normalize_sign(std::vector<Integer>& v) {
    for (std::size_t i = v.size(); i-- > 0;) {
        if (v[i] == 0) continue;
        if (v[i] < 0)
            for (auto& c : v) c = -c;
        return;
    }
}

BivarIntPoly from_vector(const std::vector<Integer>& v, int T) {
    BivarIntPoly p = BivarIntPoly::zero(T);
    const std::size_t w = static_cast<std::size_t>(T + 1);
    for (std::size_t u = 0; u < v.size(); ++u) p.coeff[u / w][u % w] = v[u];
    return p;
}

}  // namespace

Interval AuxParams::c0_at(mpfr_prec_t prec) const { return log(iv((R * R + r * r) / (2 * r * R), prec)); }

Interval AuxParams::u1_at(mpfr_prec_t prec) const {
    const Interval t = Interval::of(T, prec);
    return Interval::log2_const(prec) + Interval::of(4L, prec) * log(t) + Interval::of(2 * N0 * T, prec) +
           t * log(iv(fR, prec));
}

AuxParams compute_params(const Rational& R, const Rational& r, const Rational& fR, int D, long N0,
                         std::optional<Integer> s_prev) {
    if (!(r > 0)) throw DomainError("r must be positive");
    if (!(R > r)) throw DomainError("need R > r");
    if (!(fR > 0)) throw DomainError("fR must be positive");
    if (D < 1 || N0 < 1) throw DomainError("need D >= 1 and N0 >= 1");
    AuxParams a;
    a.R = R;
    a.r = r;
    a.fR = fR;
    a.D = D;
    a.N0 = N0;
    a.c0 = RealEnclosure::from(a.c0_at(128));
    // 72 / c0^2 is transcendental, so the least integer above it is its ceiling.
    a.gamma = certified_ceil(
        [&](mpfr_prec_t p) { return Interval::of(72L, p) / sqr(a.c0_at(p)); }, "gamma");
    const Integer t = certified_floor(
        [&](mpfr_prec_t p) {
            return a.c0_at(p) * Interval::of(Integer(a.gamma * D * D * N0), p) / Interval::of(6L, p);
        },
        "T");
    if (t < 1 || !t.fits_slong_p()) throw DomainError("T = " + t.get_str() + " is out of range");
    a.T = t.get_si();
    a.u1 = RealEnclosure::from(a.u1_at(128));
    a.gamma_ok = certified_sign([&](mpfr_prec_t p) { return Interval::of(a.gamma, p) * sqr(a.c0_at(p)); },
                                Rational(72), "gamma c0^2") > 0;
    a.s_prev = s_prev;
    if (s_prev) {
        const long T = a.T;
        auto lhs = [&](mpfr_prec_t p) { return a.c0_at(p) * Interval::of(*s_prev, p); };
        auto rhs = [&](mpfr_prec_t p) {
            const Interval tt = Interval::of(T, p);
            return a.u1_at(p) + Interval::of(static_cast<long>(D - 1), p) * log(Interval::of(2L, p) * pow(tt, 4)) +
                   Interval::of(2 * T * N0 * (D - 1), p) + Interval::of(2 * T * N0 * D, p);
        };
        a.zero_count_ok = certified_compare(lhs, rhs, "zero-count inequality") > 0;
    }
    return a;
}

Rational poly_sup_bound(const RatPoly& f, const Rational& R) {
    Rational s = 0, pw = 1;
    for (const auto& c : f.coeffs()) {
        s += abs(c) * pw;
        pw *= abs(R);
    }
    return s;
}

BivarIntPoly BivarIntPoly::zero(int T) {
    if (T < 0) throw DomainError("T must be nonnegative");
    const std::size_t n = static_cast<std::size_t>(T + 1);
    return {std::vector<std::vector<Integer>>(n, std::vector<Integer>(n, Integer(0)))};
}

bool BivarIntPoly::is_zero() const {
    for (const auto& row : coeff)
        for (const auto& c : row)
            if (c != 0) return false;
    return true;
}

Integer BivarIntPoly::max_abs() const {
    Integer m = 0;
    for (const auto& row : coeff)
        for (const auto& c : row) m = std::max<Integer>(m, abs(c));
    return m;
}

Integer BivarIntPoly::length() const {
    Integer s = 0;
    for (const auto& row : coeff)
        for (const auto& c : row) s += abs(c);
    return s;
}

int BivarIntPoly::total_degree() const {
    int d = -1;
    for (std::size_t i = 0; i < coeff.size(); ++i)
        for (std::size_t j = 0; j < coeff[i].size(); ++j)
            if (coeff[i][j] != 0) d = std::max(d, static_cast<int>(i + j));
    return d;
}

int BivarIntPoly::degree_y() const {
    int d = -1;
    for (const auto& row : coeff)
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) d = std::max(d, static_cast<int>(j));
    return d;
}

std::string BivarIntPoly::str() const {
    std::string s;
    for (std::size_t i = coeff.size(); i-- > 0;) {
        for (std::size_t j = coeff[i].size(); j-- > 0;) {
            const Integer& c = coeff[i][j];
            if (c == 0) continue;
            const bool constant = i == 0 && j == 0;
            std::string mag = abs(c) == 1 && !constant ? "" : Integer(abs(c)).get_str();
            std::string mono;
            if (i) mono += "X" + (i > 1 ? "^" + std::to_string(i) : "");
            if (j) mono += "Y" + (j > 1 ? "^" + std::to_string(j) : "");
            if (!mag.empty() && !mono.empty()) mag += "*";
            if (s.empty()) s = (c < 0 ? "-" : "") + mag + mono;
            else s += (c < 0 ? " - " : " + ") + mag + mono;
        }
    }
    return s.empty() ? "0" : s;
}

PointField point_field(const AlgebraicNumber& alpha, const AlgebraicNumber& beta) {
    const RatPoly x = RatPoly::x();
    if (alpha.is_rational() && beta.is_rational())
        return {alpha, RatPoly::constant(alpha.to_rational()), RatPoly::constant(beta.to_rational())};
    if (alpha.is_rational()) return {beta, RatPoly::constant(alpha.to_rational()), x};
    if (beta.is_rational()) return {alpha, x, RatPoly::constant(beta.to_rational())};
    if (alpha == beta) return {alpha, x, x};
    const Compositum c = compositum(alpha, beta);
    return {c.theta, c.alpha.repr, c.beta.repr};
}

NumberFieldElement evaluate(const BivarIntPoly& p, const PointField& f) {
    const FieldOps ops(f.theta.minpoly());
    const std::size_t n = p.coeff.size();
    std::vector<RatPoly> yp(n);
    if (n) yp[0] = RatPoly::constant(Rational(1));
    for (std::size_t j = 1; j < n; ++j) yp[j] = ops.mul(yp[j - 1], f.y);
    const RatPoly x = ops.reduce(f.x);
    RatPoly acc;
    for (std::size_t i = n; i-- > 0;) {
        RatPoly row;
        for (std::size_t j = 0; j < n; ++j)
            if (p.coeff[i][j] != 0) row += yp[j] * Rational(p.coeff[i][j]);
        acc = ops.mul(acc, x) + row;
    }
    return {f.theta, ops.reduce(acc)};
}

NumberFieldElement evaluate(const BivarIntPoly& p, const AlgebraicNumber& alpha, const AlgebraicNumber& beta) {
    return evaluate(p, point_field(alpha, beta));
}

void validate_points(const std::vector<PointPair>& points, int D, const std::optional<Rational>& r) {
    std::set<AlgebraicNumber> seen;
    for (const auto& [a, b] : points) {
        if (!seen.insert(a).second) throw DomainError("repeated point alpha = " + a.str());
        if (a.degree() > D || b.degree() > D || point_field(a, b).degree() > D)
            throw DomainError("[Q(alpha, beta) : Q] exceeds D at alpha = " + a.str());
        if (!r) continue;
        const int s = a.is_rational()
                          ? cmp(abs(a.to_rational()), *r)
                          : certified_sign([&](mpfr_prec_t p) { return abs(a.enclosure_interval(width_for(p))); }, *r,
                                           "|alpha| <= r");
        if (s > 0) throw DomainError("|alpha| > r at alpha = " + a.str());
    }
}

SiegelResult siegel_solve(const std::vector<PointPair>& points, int T, int D, long N0) {
    if (T < 1 || D < 1) throw DomainError("need T >= 1 and D >= 1");
    const long n = static_cast<long>(T + 1) * (T + 1);
    if (!(n > static_cast<long>(D) * static_cast<long>(points.size()) + 1))
        throw DomainError("Siegel precondition (T+1)^2 > D|S| + 1 fails");
    validate_points(points, D, std::nullopt);

    std::vector<PointField> fields;
    std::vector<std::vector<Integer>> rows;
    for (const auto& [a, b] : points) {
        fields.push_back(point_field(a, b));
        const PointField& f = fields.back();
        const FieldOps ops(f.theta.minpoly());
        const std::size_t e = static_cast<std::size_t>(f.degree());
        std::vector<RatPoly> xp(static_cast<std::size_t>(T + 1)), yp(static_cast<std::size_t>(T + 1));
        xp[0] = yp[0] = RatPoly::constant(Rational(1));
        for (std::size_t k = 1; k <= static_cast<std::size_t>(T); ++k) {
            xp[k] = ops.mul(xp[k - 1], f.x);
            yp[k] = ops.mul(yp[k - 1], f.y);
        }
        std::vector<std::vector<Rational>> eq(e, std::vector<Rational>(static_cast<std::size_t>(n)));
        for (std::size_t i = 0; i <= static_cast<std::size_t>(T); ++i)
            for (std::size_t j = 0; j <= static_cast<std::size_t>(T); ++j) {
                const RatPoly m = ops.mul(xp[i], yp[j]);
                for (std::size_t t = 0; t < e; ++t) eq[t][i * static_cast<std::size_t>(T + 1) + j] = m[t];
            }
        for (auto& q : eq) {
            Integer den = 1;
            for (const auto& v : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
            std::vector<Integer> z(q.size());
            for (std::size_t u = 0; u < q.size(); ++u) z[u] = Integer(q[u] * den);
            rows.push_back(std::move(z));
        }
    }
    // Unknowns restricted to the first max(2m+1, 25) monomials in graded order
    // (m scalar equations): still more unknowns than equations, and the kernel
    // stays small enough for LLL. Omitted monomials get coefficient zero.
    std::vector<std::size_t> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    const std::size_t side = static_cast<std::size_t>(T + 1);
    std::stable_sort(cols.begin(), cols.end(), [&](std::size_t u, std::size_t v) {
        const auto key = [&](std::size_t w) { return std::tuple(w / side + w % side, w % side, w / side); };
        return key(u) < key(v);
    });
    cols.resize(std::min(cols.size(), std::max<std::size_t>(2 * rows.size() + 1, 25)));
    ZMatrix A(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t u = 0; u < cols.size(); ++u) A(i, u) = rows[i][cols[u]];
    std::vector<std::vector<Integer>> basis;
    for (const auto& k : integer_kernel(A)) {
        std::vector<Integer> full(static_cast<std::size_t>(n), Integer(0));
        for (std::size_t u = 0; u < cols.size(); ++u) full[cols[u]] = k[u];
        basis.push_back(std::move(full));
    }
    if (basis.empty()) throw DomainError("no nonzero integer solution (precondition violated)");

    std::vector<std::vector<Integer>> cands = basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            std::vector<Integer> s(basis[i].size()), d(basis[i].size());
            for (std::size_t u = 0; u < s.size(); ++u) {
                s[u] = basis[i][u] + basis[j][u];
                d[u] = basis[i][u] - basis[j][u];
            }
            cands.push_back(std::move(s));
            cands.push_back(std::move(d));
        }
    using Key = std::tuple<Integer, Integer, int, int, std::vector<Integer>>;
    std::optional<Key> best;
    for (auto& c : cands) {
        normalize_sign(c);
        const BivarIntPoly p = from_vector(c, T);
        if (p.is_zero()) continue;
        Key k{p.max_abs(), p.length(), p.total_degree(), p.degree_y(), c};
        if (!best || k < *best) best = std::move(k);
    }

    SiegelResult res;
    res.P = from_vector(std::get<4>(*best), T);
    res.equations = rows.size();
    res.kernel_rank = basis.size();
    for (const auto& f : fields)
        if (!evaluate(res.P, f).is_zero()) throw VerificationFailure("Siegel polynomial does not vanish at a point");
    res.max_coeff = res.P.max_abs();
    auto bound = [&](mpfr_prec_t p) {
        return Interval::of(2L * T * T, p) * exp(Interval::of(2L * T * N0, p));
    };
    res.bound = RealEnclosure::from(bound(128));
    res.meets_bound = certified_sign(bound, Rational(res.max_coeff), "coefficient bound") >= 0;
    return res;
}

Interval schwarz_bound_at(const AuxParams& params, const Integer& s, mpfr_prec_t prec) {
    if (s < 0) throw DomainError("zero count must be nonnegative");
    return exp(params.u1_at(prec) - params.c0_at(prec) * Interval::of(s, prec));
}

RealEnclosure schwarz_bound(const AuxParams& params, const Integer& s) {
    return RealEnclosure::from(schwarz_bound_at(params, s, 128));
}

LiouvilleResult liouville_check(const BivarIntPoly& p, const AlgebraicNumber& alpha, const AlgebraicNumber& beta,
                                int D, int T) {
    if (p.T() > T) throw DomainError("P has degree above T");
    const PointField field = point_field(alpha, beta);
    if (field.degree() > D) throw DomainError("[Q(alpha, beta) : Q] exceeds D");
    const NumberFieldElement v = evaluate(p, field);
    LiouvilleResult res;
    if (v.is_zero()) {
        res.zero = true;
        return res;
    }
    const Integer length = p.length();
    if (alpha.is_rational() && beta.is_rational()) {
        // Both sides rational: decide exactly, including equality.
        const Rational value = abs(v.rational_value());
        const unsigned long e = static_cast<unsigned long>(D) * static_cast<unsigned long>(T);
        const Rational bound = 1 / (pow_q(Rational(length), static_cast<unsigned long>(D - 1)) *
                                    pow_q(rational_measure(alpha.to_rational()) * rational_measure(beta.to_rational()), e));
        res.exact = true;
        res.value = RealEnclosure::from(iv(value, 128));
        res.bound = RealEnclosure::from(iv(bound, 128));
        res.equality = value == bound;
        if (value < bound)
            throw VerificationFailure("Liouville inequality violated: |P(alpha, beta)| = " + value.get_str() +
                                      " < " + bound.get_str());
        return res;
    }
    for (mpfr_prec_t prec = 64;; prec *= 2) {
        if (prec > precision_cap_bits()) throw PrecisionExhausted("Liouville comparison exceeded the precision cap");
        const Interval val = abs(v.enclose(width_for(prec)));
        const Interval bound = exp(log_liouville_bound(length, alpha, beta, D, T, prec));
        res.value = RealEnclosure::from(val);
        res.bound = RealEnclosure::from(bound);
        const int s = compare(val, bound);
        if (s > 0) return res;
        if (s < 0)
            throw VerificationFailure("Liouville inequality violated at alpha = " + alpha.str() + ", beta = " + beta.str());
    }
}

bool PropagationReport::pass() const {
    for (const auto& st : steps) {
        if (!st.all_forced) return false;
        for (const auto& pt : st.points)
            if (!pt.vanishes) return false;
    }
    return true;
}

PropagationReport propagate_demo(const AuxParams& params, const std::map<long, std::vector<PointPair>>& levels,
                                 long N_start, int steps) {
    if (steps < 0) throw DomainError("steps must be nonnegative");
    for (long N = N_start; N <= N_start + steps; ++N) {
        if (!levels.count(N)) throw DomainError("missing level N = " + std::to_string(N));
        validate_points(levels.at(N), params.D, params.r);
    }
    PropagationReport rep;
    rep.N_start = N_start;
    const int T = static_cast<int>(params.T);
    rep.siegel = siegel_solve(levels.at(N_start), T, params.D, params.N0);
    const BivarIntPoly& P = rep.siegel.P;
    const Integer length = P.length();

    std::set<AlgebraicNumber> known;
    for (const auto& pt : levels.at(N_start)) known.insert(pt.first);
    rep.notes.push_back("P = " + P.str() + " vanishes exactly at all " + std::to_string(known.size()) +
                        " points of level " + std::to_string(N_start));

    for (long N = N_start + 1; N <= N_start + steps; ++N) {
        PropagationStep st;
        st.N = N;
        st.zeros_known = Integer(static_cast<unsigned long>(known.size()));
        st.schwarz = schwarz_bound(params, st.zeros_known);
        st.all_forced = true;
        std::vector<AlgebraicNumber> established;
        for (const auto& pt : levels.at(N)) {
            if (known.count(pt.first)) continue;
            PropagationPoint pp;
            pp.point = pt;
            auto lb = [&](mpfr_prec_t p) {
                return log_liouville_bound(length, pt.first, pt.second, params.D, T, p);
            };
            pp.threshold = RealEnclosure::from(exp(lb(128)));
            auto ls = [&](mpfr_prec_t p) {
                return params.u1_at(p) - params.c0_at(p) * Interval::of(st.zeros_known, p);
            };
            try {
                pp.forced = certified_compare(ls, lb, "Schwarz against Liouville") < 0;
            } catch (const PrecisionExhausted&) {
                pp.forced = false;
            }
            pp.vanishes = evaluate(P, pt.first, pt.second).is_zero();
            if (pp.forced && !pp.vanishes)
                rep.notes.push_back("level " + std::to_string(N) + ": forced vanishing fails at alpha = " +
                                    pt.first.str() + " (the bound on |f| is not valid)");
            if (pp.forced && pp.vanishes) established.push_back(pt.first);
            st.all_forced = st.all_forced && pp.forced;
            st.points.push_back(std::move(pp));
        }
        if (!st.all_forced)
            rep.notes.push_back("level " + std::to_string(N) +
                                ": bounds do not force vanishing (induction hypothesis not met at this scale)");
        else
            rep.notes.push_back("level " + std::to_string(N) + ": vanishing forced and verified at " +
                                std::to_string(st.points.size()) + " new points");
        for (auto& a : established) known.insert(std::move(a));
        rep.steps.push_back(std::move(st));
        if (!rep.steps.back().all_forced) break;
    }
    return rep;
}

}  // namespace hc
