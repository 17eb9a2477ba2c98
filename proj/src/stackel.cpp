#include "heightcensus/stackel.hpp"

#include "heightcensus/detail/certify.hpp"

namespace hc {

using detail::certified_ceil;
using detail::certified_sign;

namespace {

Interval iv(const Rational& q, mpfr_prec_t prec) { return Interval::of(q, prec); }

// h(q) = log max(|num|, |den|).
Interval rational_height(const Rational& q, mpfr_prec_t prec) {
    const Integer num = abs(q.get_num());
    const Integer& den = q.get_den();
    return log(Interval::of(num > den ? num : den, prec));
}

Interval sum_heights(const StackelPrefix& s, int upto, mpfr_prec_t prec) {
    Interval a = Interval::of(0L, prec);
    for (int k = 1; k <= upto; ++k) a = a + rational_height(s.a.at(static_cast<std::size_t>(k - 1)), prec);
    return a;
}

// log b_k - k eps log(k + e^{k N_k}): log of the bound on |a_k|.
Interval log_coefficient_bound(int k, const Rational& nk, const Integer& eps, mpfr_prec_t prec) {
    const Interval inner = Interval::of(static_cast<long>(k), prec) + exp(Interval::of(static_cast<long>(k), prec) * iv(nk, prec));
    return log(iv(StackelPrefix::b(k), prec)) - Interval::of(Integer(Integer(k) * eps), prec) * log(inner);
}

// 2(log k + A_k + k^2 eps_k (log 2 + 1 + N_k)).
Interval growth_floor(const StackelPrefix& s, int k, mpfr_prec_t prec) {
    const Integer kk = Integer(k) * k * s.eps.at(static_cast<std::size_t>(k - 1));
    const Interval inner = Interval::log2_const(prec) + Interval::of(1L, prec) + iv(s.n_at(k), prec);
    return Interval::of(2L, prec) *
           (log(Interval::of(static_cast<long>(k), prec)) + sum_heights(s, k, prec) + Interval::of(kk, prec) * inner);
}

// N / phi(N) >= 2 k^2 eps_k.
bool ratio_ok(const PhiSpec& phi, const Rational& n, const Integer& target) {
    return certified_sign([&](mpfr_prec_t p) { return iv(n, p) / phi.eval(n, p); }, Rational(target),
                          "growth ratio") > 0;
}

std::vector<IntPoly> census_minpolys(int k, const Rational& n, const StackelOptions& opt) {
    CensusSpec spec;
    spec.D = k;
    spec.N = ThresholdSpec::rational(n);
    spec.budget = opt.budget;
    spec.workers = opt.workers;
    spec.listing = false;
    try {
        return enumerate_E(spec).minpolys;
    } catch (const BudgetExceeded& e) {
        throw BudgetExceeded("census E_{" + std::to_string(k) + ", N_" + std::to_string(k) + "}", e.needed(),
                             e.budget());
    }
}

RatPoly product_of(const std::vector<IntPoly>& minpolys) {
    RatPoly p = RatPoly::constant(Rational(1));
    for (const auto& m : minpolys) p = p * monic(to_rat(m));
    return p;
}

}  // namespace

PhiSpec PhiSpec::parse(const std::string& id, const Rational& x0) {
    const std::string prefix = "log1p/";
    if (id.rfind(prefix, 0) != 0) throw DomainError("unsupported phi '" + id + "' (expected log1p/<c>)");
    PhiSpec s;
    s.c = parse_rational(id.substr(prefix.size()));
    s.x0 = x0;
    s.validate();
    return s;
}

std::string PhiSpec::id() const { return "log1p/" + c.get_str(); }

Interval PhiSpec::eval(const Interval& x) const {
    const mpfr_prec_t prec = x.prec();
    return log(Interval::of(1L, prec) + x) / Interval::of(c, prec);
}

void PhiSpec::validate() const {
    if (c <= 0) throw DomainError("phi: c must be positive");
    if (x0 <= 0) throw DomainError("phi: x0 must be positive");
    if (c * (1 + x0) < 1) throw DomainError("phi: slope exceeds 1 past x0");
    const int s = certified_sign([&](mpfr_prec_t p) { return eval(x0, p) - iv(x0 - 1, p); }, Rational(0), "phi(x0)");
    if (s > 0) throw DomainError("phi(x0) > x0 - 1 for phi = " + id());
    for (int k = 0; k <= 64; ++k) {
        const Rational x = x0 + Rational(k, 4);
        const Interval v = eval(x, 128);
        if (!v.positive() || compare(v, x - 1) > 0) throw DomainError("phi sample check failed at x = " + x.get_str());
    }
}

Rational StackelPrefix::b(int k) {
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(k));
    return Rational(Integer(1), den);
}

StackelPrefix choose_sequences(const PhiSpec& phi, int depth, const StackelOptions& opt) {
    if (depth < 1) throw DomainError("depth must be at least 1");
    if (opt.step <= 0) throw DomainError("grid step must be positive");
    phi.validate();
    StackelPrefix s;
    s.phi = phi;
    s.depth = depth;
    s.N.push_back(phi.x0);
    for (int k = 1; k < depth; ++k) {
        const Rational nk = s.n_at(k);
        const auto minpolys = census_minpolys(k, nk, opt);
        Integer eps = 0;
        for (const auto& m : minpolys) eps += m.degree();
        s.eps.push_back(eps);

        // Largest 2^-m <= b_k (k + e^{k N_k})^{-k eps}: m = ceil(-log bound / log 2).
        const Integer m = certified_ceil(
            [&](mpfr_prec_t p) { return -log_coefficient_bound(k, nk, eps, p) / Interval::log2_const(p); },
            "coefficient exponent");
        if (m < 0 || !m.fits_ulong_p()) throw DomainError("coefficient exponent out of range");
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, m.get_ui());
        s.a.push_back(Rational(Integer(1), den));

        const RatPoly pk = product_of(minpolys);
        if (Integer(pk.degree()) != eps) throw VerificationFailure("P_" + std::to_string(k) + " has the wrong degree");
        s.P.push_back(pk);

        // Least grid point N_{k+1} > N_k meeting the growth floor and the phi ratio.
        const Rational& h = opt.step;
        const Integer from_floor = certified_ceil([&](mpfr_prec_t p) { return growth_floor(s, k, p) / iv(h, p); },
                                                  "growth floor");
        const Integer above = detail::floor_q(nk / h) + 1;
        const Integer lo = from_floor > above ? from_floor : above;
        const Integer target = 2 * Integer(k) * k * eps;
        auto ok = [&](const Integer& i) { return ratio_ok(phi, Rational(i) * h, target); };
        Integer best = lo;
        if (!ok(lo)) {
            Integer bad = lo, jump = 1;
            for (;;) {
                if (mpz_sizeinbase(jump.get_mpz_t(), 2) > 64) throw DomainError("no admissible N on the grid");
                const Integer probe = lo + jump;
                if (ok(probe)) {
                    best = probe;
                    break;
                }
                bad = probe;
                jump *= 2;
            }
            while (best - bad > 1) {
                const Integer mid = (best + bad) / 2;
                if (ok(mid)) best = mid;
                else bad = mid;
            }
        }
        s.N.push_back(Rational(best) * h);
    }
    return s;
}

RatPoly build_Pk(const StackelPrefix& prefix, int k, const StackelOptions& opt) {
    if (k < 1 || k > prefix.depth) throw DomainError("level out of range");
    const auto minpolys = census_minpolys(k, prefix.n_at(k), opt);
    const RatPoly p = product_of(minpolys);
    Integer eps = 0;
    for (const auto& m : minpolys) eps += m.degree();
    if (Integer(p.degree()) != eps) throw VerificationFailure("P_" + std::to_string(k) + " has the wrong degree");
    return p;
}

int first_level(const StackelPrefix& prefix, const AlgebraicNumber& alpha) {
    for (int k = 1; k <= prefix.depth; ++k) {
        if (alpha.degree() <= k && poly_height_leq(alpha.minpoly(), ThresholdSpec::rational(prefix.n_at(k)))) return k;
    }
    return 0;
}

NumberFieldElement eval_f(const StackelPrefix& prefix, const AlgebraicNumber& alpha, int start_level) {
    const int k0 = first_level(prefix, alpha);
    if (k0 == 0) throw DomainError("tail not provably zero at this depth for " + alpha.str());
    int upto = k0;
    if (start_level > 0) {
        if (start_level < k0 || start_level > prefix.depth) throw DomainError("start level out of range");
        upto = start_level;
    }
    if (static_cast<int>(prefix.P.size()) < upto - 1 || static_cast<int>(prefix.a.size()) < upto - 1)
        throw DomainError("prefix is missing levels");
    RatPoly g;
    for (int k = 1; k < upto; ++k) g += prefix.P[static_cast<std::size_t>(k - 1)] * prefix.a[static_cast<std::size_t>(k - 1)];
    return poly_eval_in_field(g, alpha);
}

bool verify_membership(const StackelPrefix& prefix, const AlgebraicNumber& alpha) {
    const NumberFieldElement v = eval_f(prefix, alpha);
    if (v.repr.degree() >= alpha.degree()) return false;
    if (alpha.is_rational() && !v.is_rational()) return false;
    // Later terms vanish at alpha, so every admissible cut gives the same value.
    const int k0 = first_level(prefix, alpha);
    for (int k = k0 + 1; k <= prefix.depth; ++k) {
        if (!(eval_f(prefix, alpha, k).repr == v.repr)) return false;
    }
    return true;
}

PrefixCheck check_prefix(const StackelPrefix& s, const StackelOptions& opt) {
    PrefixCheck r;
    auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };
    const std::size_t levels = static_cast<std::size_t>(s.depth - 1);
    if (s.N.size() != static_cast<std::size_t>(s.depth) || s.a.size() != levels || s.P.size() != levels ||
        s.eps.size() != levels) {
        fail("prefix arrays do not match depth " + std::to_string(s.depth));
        return r;
    }

    r.n_increasing = s.N.front() == s.phi.x0;
    for (std::size_t i = 1; i < s.N.size(); ++i) r.n_increasing = r.n_increasing && s.N[i - 1] < s.N[i];
    if (!r.n_increasing) fail("N is not strictly increasing from x0");

    r.eps_match = r.condition_i = r.eq2 = r.eq3 = r.p_rational_monic = r.p_vanishing = true;
    std::vector<std::vector<IntPoly>> census(levels);
    for (int k = 1; k < s.depth; ++k) {
        const std::size_t i = static_cast<std::size_t>(k - 1);
        census[i] = census_minpolys(k, s.n_at(k), opt);
        Integer eps = 0;
        for (const auto& m : census[i]) eps += m.degree();
        if (eps != s.eps[i]) {
            r.eps_match = false;
            fail("eps_" + std::to_string(k) + " is " + eps.get_str() + ", stored " + s.eps[i].get_str());
        }
        const Rational& a = s.a[i];
        if (a == 0 || certified_sign([&](mpfr_prec_t p) {
                          return log(iv(abs(a), p)) - log_coefficient_bound(k, s.n_at(k), eps, p);
                      },
                                     Rational(0), "coefficient bound") > 0) {
            r.condition_i = false;
            fail("a_" + std::to_string(k) + " violates its size bound");
        }
        const Rational next = s.n_at(k + 1);
        if (certified_sign([&](mpfr_prec_t p) { return iv(next, p) - growth_floor(s, k, p); }, Rational(0),
                           "growth floor") < 0) {
            r.eq2 = false;
            fail("N_" + std::to_string(k + 1) + " is below the growth floor");
        }
        if (!ratio_ok(s.phi, next, 2 * Integer(k) * k * eps)) {
            r.eq3 = false;
            fail("N_" + std::to_string(k + 1) + " / phi(N_" + std::to_string(k + 1) + ") is too small");
        }
        const RatPoly& pk = s.P[i];
        if (pk.is_zero() || pk.lead() != 1 || Integer(pk.degree()) != eps || !(pk == product_of(census[i]))) {
            r.p_rational_monic = false;
            fail("P_" + std::to_string(k) + " is not the monic product over E_" + std::to_string(k));
        }
    }
    // P_j vanishes on E_{k,N_k} for every j >= k: each minimal polynomial divides it.
    for (std::size_t j = 0; j < levels && r.p_vanishing; ++j) {
        if (s.P[j].is_zero()) {
            r.p_vanishing = false;
            break;
        }
        const IntPoly pj = primitive_integer_multiple(s.P[j]);
        for (std::size_t k = 0; k <= j && r.p_vanishing; ++k) {
            for (const auto& m : census[k]) {
                if (!divides(m, pj)) {
                    r.p_vanishing = false;
                    fail("P_" + std::to_string(j + 1) + " does not vanish at the roots of " + m.str());
                    break;
                }
            }
        }
    }
    return r;
}

Theorem1Report verify_theorem1(const StackelPrefix& s, int D, int d, const StackelOptions& opt) {
    if (D < 1 || !(D < d || (D == 1 && d == 1))) throw DomainError("need 1 <= D < d, or D = d = 1");
    if (d > s.depth) throw DomainError("d exceeds the materialized depth");
    Theorem1Report rep;
    rep.D = D;
    rep.d = d;
    rep.Nd = s.n_at(d);
    const PhiSpec phi = s.phi;
    const Rational nd = rep.Nd;
    const ThresholdSpec threshold = ThresholdSpec::computed(
        "phi(N_" + std::to_string(d) + ")+1", [phi, nd](mpfr_prec_t p) { return phi.eval(nd, p) + Interval::of(1L, p); });
    rep.threshold = threshold.enclose(128);

    CensusSpec spec;
    spec.D = D;
    spec.N = threshold;
    spec.budget = opt.budget;
    spec.workers = opt.workers;
    spec.listing = true;
    const CensusResult census = enumerate_E(spec);
    rep.card_E = census.epsilon;

    rep.chain_applicable = d >= 2;
    auto chain = [&](mpfr_prec_t p) {
        const std::size_t i = static_cast<std::size_t>(d - 2);
        const Interval kk = Interval::of(Integer(Integer(d - 1) * (d - 1) * s.eps.at(i)), p);
        const Interval tail = Interval::log2_const(p) + Interval::of(1L, p) + iv(s.n_at(d - 1), p);
        return phi.eval(nd, p) * kk + log(Interval::of(static_cast<long>(d - 1), p)) + sum_heights(s, d - 1, p) +
               kk * tail;
    };
    if (rep.chain_applicable) {
        rep.chain_bound = RealEnclosure::from(chain(128));
        rep.chain_below_nd = certified_sign(chain, nd, "chain bound") < 0;
    }

    const ThresholdSpec nd_spec = ThresholdSpec::rational(nd);
    for (const auto& alpha : census.listing) {
        if (!abs_leq_one(alpha)) continue;
        ++rep.card_disc;
        PointVerdict v;
        v.alpha = alpha;
        v.degree_ok = alpha.degree() <= D;
        v.height_ok = poly_height_leq(alpha.minpoly(), nd_spec);
        v.value = eval_f(s, alpha);
        v.value_minpoly = minpoly_of_element(v.value);
        v.value_height = poly_height(v.value_minpoly, Dyadic::pow2(-40));
        v.value_height_ok = v.value_minpoly.degree() <= D && poly_height_leq(v.value_minpoly, nd_spec);
        if (rep.chain_applicable) {
            v.chain_ok = certified_sign(
                             [&](mpfr_prec_t p) {
                                 const long bits = static_cast<long>(p) - 16;
                                 return poly_height(v.value_minpoly, Dyadic::pow2(-bits)).to_interval(p) - chain(p);
                             },
                             Rational(0), "chain bound") < 0;
        }
        if (v.degree_ok && v.height_ok && v.value_height_ok && v.chain_ok) {
            ++rep.sigma_lower;
        } else {
            rep.counterexamples.push_back("alpha = " + alpha.str() + ", f(alpha) minpoly " + v.value_minpoly.str());
        }
        rep.points.push_back(std::move(v));
    }

    // (1/2) e^{D(D+1) phi(N)} = (1/2) (1+N)^{D(D+1)/c} <= sigma  <=>  (1+N)^{D(D+1) q} <= (2 sigma)^p, c = p/q.
    const long e = static_cast<long>(D) * (D + 1);
    rep.half_exp = RealEnclosure::from(Interval::of(Rational(1, 2), 128) *
                                       exp(Interval::of(e, 128) * phi.eval(nd, 128)));
    const Integer cp = phi.c.get_num(), cq = phi.c.get_den();
    if (!cp.fits_ulong_p() || !cq.fits_ulong_p()) throw DomainError("phi constant too large");
    Rational lhs, rhs;
    mpz_pow_ui(lhs.get_num_mpz_t(), Rational(1 + nd).get_num_mpz_t(), static_cast<unsigned long>(e) * cq.get_ui());
    mpz_pow_ui(lhs.get_den_mpz_t(), Rational(1 + nd).get_den_mpz_t(), static_cast<unsigned long>(e) * cq.get_ui());
    lhs.canonicalize();
    mpz_pow_ui(rhs.get_num_mpz_t(), Integer(2 * rep.sigma_lower).get_mpz_t(), cp.get_ui());
    rep.card_ok = lhs <= rhs;
    return rep;
}

}  // namespace hc
