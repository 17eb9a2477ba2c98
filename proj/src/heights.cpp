#include "heightcensus/heights.hpp"

#include <algorithm>
#include <cctype>

namespace hc {

// ---------------------------------------------------------------- ThresholdSpec

ThresholdSpec ThresholdSpec::rational(Rational n) {
    n.canonicalize();
    if (n < 0) throw DomainError("height bound must be >= 0");
    ThresholdSpec t;
    t.kind_ = Kind::Rational;
    t.value_ = n;
    return t;
}

ThresholdSpec ThresholdSpec::log_rational(Rational b) {
    b.canonicalize();
    if (b < 1) throw DomainError("log threshold needs B >= 1");
    ThresholdSpec t;
    t.kind_ = Kind::LogRational;
    t.value_ = b;
    return t;
}

ThresholdSpec ThresholdSpec::computed(std::string label, std::function<Interval(mpfr_prec_t)> enclose) {
    ThresholdSpec t;
    t.kind_ = Kind::Computed;
    t.label_ = std::move(label);
    t.fn_ = std::move(enclose);
    return t;
}

ThresholdSpec ThresholdSpec::parse(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.rfind("N=", 0) == 0) s = s.substr(2);
    if (s.rfind("log(", 0) == 0 && s.size() > 5 && s.back() == ')') {
        return log_rational(parse_rational(s.substr(4, s.size() - 5)));
    }
    return rational(parse_rational(s));
}

Interval ThresholdSpec::enclose(mpfr_prec_t prec) const {
    switch (kind_) {
        case Kind::Rational: return Interval::of(value_, prec);
        case Kind::LogRational: return log(Interval::of(value_, prec));
        case Kind::Computed: return fn_(prec);
    }
    return Interval(prec);
}

Interval ThresholdSpec::exp_dn(int d, mpfr_prec_t prec) const {
    if (kind_ == Kind::LogRational) {
        Rational k = 1;
        for (int i = 0; i < d; ++i) k *= value_;
        return Interval::of(k, prec);
    }
    return exp(enclose(prec) * Interval::of(static_cast<long>(d), prec));
}

bool ThresholdSpec::is_zero() const {
    return (kind_ == Kind::Rational && value_ == 0) || (kind_ == Kind::LogRational && value_ == 1);
}

std::string ThresholdSpec::str() const {
    switch (kind_) {
        case Kind::Rational: return value_.get_str();
        case Kind::LogRational: return "log(" + value_.get_str() + ")";
        case Kind::Computed: return label_;
    }
    return {};
}

// ---------------------------------------------------------------- measure

namespace {

long bit_size(const Integer& v) { return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)); }

// log2 of a Landau-type upper bound for M(p): ||p||_2.
long measure_bits(const IntPoly& p) {
    Integer s = 0;
    for (const auto& c : p.coeffs()) s += c * c;
    return bit_size(s) / 2 + 2;
}

void check_precision(const Dyadic& w, const char* what) {
    if (starting_precision(w) > precision_cap_bits()) throw PrecisionExhausted(std::string(what) + " exceeded the precision cap");
}

Interval measure_squarefree(const IntPoly& f, const Dyadic& w, mpfr_prec_t prec) {
    if (f.degree() == 1) return Interval::of(std::max(Integer(abs(f[0])), Integer(abs(f[1]))), prec);
    const auto boxes = isolate_roots_unchecked(f, w);
    Interval m = abs(Interval::of(f.lead(), prec));
    for (const auto& b : boxes) m = m * max_with(abs(b.to_interval(prec)), 1);
    return m;
}

Interval measure_interval(const IntPoly& p, const Dyadic& w, mpfr_prec_t prec) {
    const auto sq = squarefree_decomposition(p);
    Interval m = abs(Interval::of(sq.unit, prec));
    for (std::size_t k = 0; k < sq.factors.size(); ++k) {
        const IntPoly& f = sq.factors[k];
        if (f.degree() < 1) {
            m = m * pow(abs(Interval::of(f.degree() == 0 ? f[0] : Integer(1), prec)), k + 1);
            continue;
        }
        m = m * pow(measure_squarefree(f, w, prec), k + 1);
    }
    return m;
}

bool all_linear(const IntPoly& p) {
    const auto sq = squarefree_decomposition(p);
    for (const auto& f : sq.factors) {
        if (f.degree() > 1) return false;
    }
    return true;
}

Integer exact_linear_measure(const IntPoly& p) {
    const auto sq = squarefree_decomposition(p);
    Integer m = abs(sq.unit);
    for (std::size_t k = 0; k < sq.factors.size(); ++k) {
        const IntPoly& f = sq.factors[k];
        Integer v = f.degree() == 1 ? std::max(Integer(abs(f[0])), Integer(abs(f[1]))) : abs(f[0]);
        for (std::size_t e = 0; e <= k; ++e) m *= v;
    }
    return m;
}

}  // namespace

RealEnclosure mahler_measure(const IntPoly& p, const Dyadic& width) {
    if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
    if (width.sign() <= 0) throw DomainError("enclosure width must be positive");
    if (p.degree() == 0) {
        const Dyadic v(abs(p[0]), 0);
        return {v, v};
    }
    if (all_linear(p)) {
        const Dyadic v(exact_linear_measure(p), 0);
        return {v, v};
    }
    // Monic divisor of some X^m - 1: every root lies on the unit circle.
    if (is_unit_measure(p)) return {Dyadic(1), Dyadic(1)};
    const long mb = measure_bits(p);
    const long nb = bit_size(Integer(p.degree()));
    for (Dyadic w = width * Dyadic::pow2(-(mb + nb + 4));; w = w * Dyadic::pow2(-32)) {
        check_precision(w, "Mahler measure");
        const Interval m = measure_interval(p, w, starting_precision(w) + mb + 16);
        const RealEnclosure e = RealEnclosure::from(m);
        if (!(width < e.width())) return e;
    }
}

bool is_unit_measure(const IntPoly& p) {
    if (p == IntPoly{0, 1}) return true;
    if (p.degree() < 1 || p.lead() != 1 || abs(p[0]) != 1) return false;
    const long n = p.degree();
    const FieldOps ring(p);
    auto phi = [](long m) {
        long r = m;
        for (long q = 2; q * q <= m; ++q) {
            if (m % q == 0) {
                while (m % q == 0) m /= q;
                r -= r / q;
            }
        }
        if (m > 1) r -= r / m;
        return r;
    };
    for (long m = 1; m <= 2 * n * n + 2; ++m) {
        if (phi(m) != n) continue;
        if (ring.pow(RatPoly::x(), static_cast<unsigned long>(m)) == RatPoly::constant(Rational(1))) return true;
    }
    return false;
}

RealEnclosure poly_height(const IntPoly& p, const Dyadic& width) {
    if (width.sign() <= 0) throw DomainError("enclosure width must be positive");
    if (is_unit_measure(p)) return {Dyadic(), Dyadic()};
    const long d = p.degree();
    for (Dyadic w = width * Dyadic::pow2(-4);; w = w * Dyadic::pow2(-16)) {
        check_precision(w, "height");
        const RealEnclosure m = mahler_measure(p, w);
        const mpfr_prec_t prec = starting_precision(w) + measure_bits(p) + 16;
        const Interval h = log(m.to_interval(prec)) / Interval::of(d, prec);
        RealEnclosure e = RealEnclosure::from(h);
        if (e.lo.sign() < 0) e.lo = Dyadic();
        if (e.hi.sign() < 0) e.hi = Dyadic();
        if (!(width < e.width())) return e;
    }
}

RealEnclosure height(const AlgebraicNumber& a, const Dyadic& width) { return poly_height(a.minpoly(), width); }

// ---------------------------------------------------------------- unit circle

bool is_reciprocal(const IntPoly& p) {
    const IntPoly r = p.reversed();
    return r == p || r == -p;
}

namespace {

// Exact sign of |r_i| - 1 for the requested root indices of a canonical irreducible p.
std::vector<int> circle_signs_for(const IntPoly& p, const std::vector<std::size_t>& which) {
    std::vector<int> out(which.size(), 2);
    if (p.degree() == 1) {
        const Integer a = abs(p[0]), b = abs(p[1]);
        std::fill(out.begin(), out.end(), a < b ? -1 : (a == b ? 0 : 1));
        return out;
    }
    const bool recip = is_reciprocal(p);
    std::vector<bool> matched(which.size(), false);
    for (Dyadic w = Dyadic::pow2(-53);; w = w * Dyadic::pow2(-32)) {
        check_precision(w, "unit circle test");
        const auto boxes = isolate_roots_unchecked(p, w);
        const mpfr_prec_t prec = starting_precision(w) + 16;
        bool done = true;
        for (std::size_t k = 0; k < which.size(); ++k) {
            if (out[k] != 2) continue;
            const Interval n2 = norm(boxes[which[k]].to_interval(prec));
            const int c = compare(n2, Rational(1));
            if (c != 0) {
                out[k] = c;
                continue;
            }
            if (recip && !matched[k]) {
                // |r| = 1 iff 1 / conj(r) is r itself
                matched[k] = true;
                const ComplexBox start = boxes[which[k]];
                const std::size_t j = match_root(p, [&](const Dyadic& v) {
                    const ComplexBox b = refine_root(p, start, v * Dyadic::pow2(-8));
                    const CInterval z = b.to_interval(starting_precision(v) + 16);
                    const CInterval one(Interval::of(1L, z.prec()), Interval(z.prec()));
                    return ComplexBox::from_interval(one / z.conj());
                });
                if (j == which[k]) {
                    out[k] = 0;
                    continue;
                }
            }
            done = false;
        }
        if (done) return out;
    }
}

// Q_s(Y) = prod over s-subsets T of (Y - lead * prod_T r); monic integer polynomial.
IntPoly compound_polynomial(const IntPoly& p, std::size_t s) {
    const std::size_t n = static_cast<std::size_t>(p.degree());
    const long mb = measure_bits(p);
    for (long extra = 32;; extra += 64) {
        const long binom_bits = static_cast<long>(n) * static_cast<long>(s) + 8;
        const Dyadic w = Dyadic::pow2(-(extra + mb * binom_bits / 2 + binom_bits));
        check_precision(w, "compound polynomial");
        const auto boxes = isolate_roots_unchecked(p, w);
        const mpfr_prec_t prec = starting_precision(w) + mb * binom_bits;
        std::vector<CInterval> z;
        for (const auto& b : boxes) z.push_back(b.to_interval(prec));
        const CInterval lead(Interval::of(p.lead(), prec), Interval(prec));
        std::vector<CInterval> q{CInterval(Interval::of(1L, prec), Interval(prec))};
        std::vector<std::size_t> pick;
        auto visit = [&](auto&& self, std::size_t start) -> void {
            if (pick.size() == s) {
                CInterval v = lead;
                for (auto i : pick) v = v * z[i];
                std::vector<CInterval> next(q.size() + 1, CInterval(prec));
                for (std::size_t i = 0; i < q.size(); ++i) {
                    next[i + 1] = next[i + 1] + q[i];
                    next[i] = next[i] - q[i] * v;
                }
                q = std::move(next);
                return;
            }
            for (std::size_t i = start; i < n; ++i) {
                pick.push_back(i);
                self(self, i + 1);
                pick.pop_back();
            }
        };
        visit(visit, 0);
        std::vector<Integer> coeffs;
        bool ok = true;
        for (const auto& c : q) {
            if (!(c.re.width() < Dyadic(1))) {
                ok = false;
                break;
            }
            Float up(prec);
            mpfr_ceil(up.get(), c.re.lo());
            if (mpfr_cmp(up.get(), c.re.hi()) > 0) {
                ok = false;
                break;
            }
            Integer v;
            mpfr_get_z(v.get_mpz_t(), up.get(), MPFR_RNDN);
            coeffs.push_back(v);
        }
        if (ok) return IntPoly(std::move(coeffs));
    }
}

bool box_holds_point(const ComplexBox& b, const Rational& x) {
    return compare(b.re_lo, x) <= 0 && compare(b.re_hi, x) >= 0 && b.im_lo.sign() <= 0 && b.im_hi.sign() >= 0;
}

// Exact test M(p) == k for canonical irreducible p of degree >= 2.
bool measure_equals(const IntPoly& p, const Rational& k) {
    if (k.get_den() != 1) return false;  // M is an algebraic integer
    const Integer kk = k.get_num();
    std::vector<std::size_t> all(static_cast<std::size_t>(p.degree()));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto signs = circle_signs_for(p, all);
    std::vector<std::size_t> outside;
    bool any_inside = false;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] > 0) outside.push_back(i);
        if (signs[i] < 0) any_inside = true;
    }
    if (outside.empty()) return abs(p.lead()) == kk;
    if (!any_inside) return abs(p[0]) == kk;
    const IntPoly r = squarefree_part(compound_polynomial(p, outside.size()));
    const std::size_t idx = match_root(r, [&](const Dyadic& w) {
        const Dyadic fine = w * Dyadic::pow2(-(8 + measure_bits(p) * static_cast<long>(outside.size())));
        const auto boxes = isolate_roots_unchecked(p, fine);
        const mpfr_prec_t prec = starting_precision(fine) + 32;
        CInterval v(Interval::of(p.lead(), prec), Interval(prec));
        for (auto i : outside) v = v * boxes[i].to_interval(prec);
        return ComplexBox::from_interval(v);
    });
    const auto boxes = isolate_roots_unchecked(r, default_width());
    for (const Integer& cand : {kk, Integer(-kk)}) {
        if (r.eval(cand) == 0 && box_holds_point(boxes[idx], Rational(cand))) return true;
    }
    return false;
}

}  // namespace

std::vector<int> circle_signs(const IntPoly& p) {
    std::vector<std::size_t> all(static_cast<std::size_t>(std::max(0, p.degree())));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return circle_signs_for(p, all);
}

int circle_sign(const AlgebraicNumber& a) { return circle_signs_for(a.minpoly(), {a.index()})[0]; }

bool abs_leq_one(const AlgebraicNumber& a) { return circle_sign(a) <= 0; }

// ---------------------------------------------------------------- threshold decisions

bool poly_height_leq(const IntPoly& p, const ThresholdSpec& n) {
    if (n.is_zero()) return is_unit_measure(p);
    const int d = p.degree();
    if (n.kind() == ThresholdSpec::Kind::LogRational && d == 1) {
        Rational m(std::max(Integer(abs(p[0])), Integer(abs(p[1]))));
        return m <= n.value();
    }
    const long mb = measure_bits(p);
    bool tie_checked = false;
    long bits = 20;
    while (true) {
        const Dyadic w = Dyadic::pow2(-bits);
        check_precision(w, "height comparison");
        const mpfr_prec_t prec = starting_precision(w) + mb + 16;
        const Interval m = measure_interval(p, w, prec);
        const Interval t = n.exp_dn(d, prec);
        const int c = compare(m, t);
        if (c < 0) return true;
        if (c > 0) return false;
        if (n.kind() == ThresholdSpec::Kind::LogRational && bits >= 53 && !tie_checked) {
            tie_checked = true;
            Rational k = 1;
            for (int i = 0; i < d; ++i) k *= n.value();
            if (measure_equals(p, k)) return true;
        }
        bits = bits < 53 ? 53 : (bits < 120 ? 120 : (bits < 240 ? 240 : bits * 2));
    }
}

bool height_leq(const AlgebraicNumber& a, const ThresholdSpec& n) { return poly_height_leq(a.minpoly(), n); }

}  // namespace hc
