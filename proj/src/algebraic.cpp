#include "heightcensus/algebraic.hpp"

#include "heightcensus/factor.hpp"
#include "heightcensus/linalg.hpp"

namespace hc {

// ---------------------------------------------------------------- AlgebraicNumber

AlgebraicNumber AlgebraicNumber::from_parts(const IntPoly& p, std::size_t index) {
    auto boxes = isolate_roots_unchecked(p, default_width());
    if (index >= boxes.size()) throw DomainError("root index out of range for " + p.str());
    return AlgebraicNumber(p, index, boxes[index]);
}

AlgebraicNumber AlgebraicNumber::root_of(const IntPoly& p, std::size_t index) {
    if (p.degree() < 1 || !is_canonical(p)) throw DomainError("minimal polynomial must be canonical of degree >= 1: " + p.str());
    if (!is_irreducible(p).irreducible) throw DomainError("minimal polynomial must be irreducible: " + p.str());
    return from_parts(p, index);
}

std::vector<AlgebraicNumber> AlgebraicNumber::roots_of_irreducible(const IntPoly& p) {
    auto boxes = isolate_roots_unchecked(p, default_width());
    std::vector<AlgebraicNumber> out;
    out.reserve(boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) out.push_back(AlgebraicNumber(p, i, boxes[i]));
    return out;
}

AlgebraicNumber AlgebraicNumber::rational(const Rational& value) {
    Rational q = value;
    q.canonicalize();
    IntPoly p(std::vector<Integer>{-q.get_num(), q.get_den()});
    return from_parts(p, 0);
}

Rational AlgebraicNumber::to_rational() const {
    if (!is_rational()) throw DomainError("not a rational number");
    Rational q(-minpoly_[0], minpoly_[1]);
    q.canonicalize();
    return q;
}

ComplexBox AlgebraicNumber::enclosure(const Dyadic& width) const {
    if (!(width < box_.width())) return box_;
    return refine_root(minpoly_, box_, width);
}

CInterval AlgebraicNumber::enclosure_interval(const Dyadic& width) const {
    const ComplexBox b = enclosure(width);
    long mag = 0;
    for (const Dyadic* d : {&b.re_lo, &b.re_hi, &b.im_lo, &b.im_hi}) {
        if (d->sign() != 0) mag = std::max(mag, d->ilog2());
    }
    return b.to_interval(starting_precision(width) + mag + 8);
}

AlgebraicNumber AlgebraicNumber::conjugate() const {
    if (is_real()) return *this;
    const ComplexBox m = box_.mirrored();
    const auto boxes = isolate_roots_unchecked(minpoly_, default_width());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (boxes[i].intersects(m)) return AlgebraicNumber(minpoly_, i, boxes[i]);
    }
    throw DomainError("conjugate root not found");
}

AlgebraicNumber AlgebraicNumber::reciprocal() const {
    if (is_zero()) throw DomainError("reciprocal of zero");
    const IntPoly r = canonical_form(minpoly_.reversed());
    return matching(r, [this](const Dyadic& w) {
        const CInterval z = enclosure_interval(w * Dyadic::pow2(-8));
        const mpfr_prec_t prec = z.prec();
        return ComplexBox::from_interval(CInterval(Interval::of(1L, prec), Interval(prec)) / z);
    });
}

std::string AlgebraicNumber::str() const { return minpoly_.str() + "#" + std::to_string(index_); }

// ---------------------------------------------------------------- interval evaluation

CInterval eval(const IntPoly& p, const CInterval& z) {
    const mpfr_prec_t prec = z.prec();
    CInterval acc(prec);
    for (std::size_t k = p.size(); k-- > 0;) {
        acc = acc * z;
        acc.re = acc.re + Interval::of(p[k], prec);
    }
    return acc;
}

CInterval eval(const RatPoly& p, const CInterval& z) {
    const mpfr_prec_t prec = z.prec();
    CInterval acc(prec);
    for (std::size_t k = p.size(); k-- > 0;) {
        acc = acc * z;
        acc.re = acc.re + Interval::of(p[k], prec);
    }
    return acc;
}

// ---------------------------------------------------------------- fields

RatPoly FieldOps::inv(const RatPoly& a) const {
    if (a.is_zero()) throw DomainError("inverse of zero in a number field");
    RatPoly s, t;
    const RatPoly g = xgcd(a, m_, s, t);
    if (g.degree() != 0) throw DomainError("field modulus is not irreducible");
    return (s * (1 / g[0])) % m_;
}

RatPoly FieldOps::pow(RatPoly a, unsigned long e) const {
    RatPoly r = RatPoly::constant(Rational(1));
    a = reduce(a);
    while (e) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return reduce(r);
}

Rational NumberFieldElement::rational_value() const {
    if (!is_rational()) throw DomainError("field element is not rational");
    return repr[0];
}

CInterval NumberFieldElement::enclose(const Dyadic& width) const {
    long coeff_bits = 8;
    for (const auto& c : repr.coeffs()) {
        coeff_bits = std::max<long>(coeff_bits, static_cast<long>(mpz_sizeinbase(c.get_num_mpz_t(), 2)));
    }
    for (Dyadic w = width * Dyadic::pow2(-8 - coeff_bits);; w = w * Dyadic::pow2(-32)) {
        const mpfr_prec_t prec = starting_precision(w) + coeff_bits;
        if (prec > precision_cap_bits()) throw PrecisionExhausted("field element enclosure exceeded the precision cap");
        CInterval z = base.enclosure_interval(w);
        CInterval zz(prec);
        zz.re = z.re + Interval(prec);
        zz.im = z.im + Interval(prec);
        CInterval v = eval(repr, zz);
        if (!(width < v.re.width()) && !(width < v.im.width())) return v;
    }
}

NumberFieldElement poly_eval_in_field(const RatPoly& g, const AlgebraicNumber& a) {
    return {a, g % monic(to_rat(a.minpoly()))};
}

namespace {

void same_base(const NumberFieldElement& x, const NumberFieldElement& y) {
    if (!(x.base == y.base)) throw DomainError("field elements over different bases");
}

}  // namespace

NumberFieldElement operator+(const NumberFieldElement& x, const NumberFieldElement& y) {
    same_base(x, y);
    return {x.base, x.repr + y.repr};
}
NumberFieldElement operator-(const NumberFieldElement& x, const NumberFieldElement& y) {
    same_base(x, y);
    return {x.base, x.repr - y.repr};
}
NumberFieldElement operator*(const NumberFieldElement& x, const NumberFieldElement& y) {
    same_base(x, y);
    return {x.base, (x.repr * y.repr) % monic(to_rat(x.base.minpoly()))};
}

IntPoly minpoly_of_element(const NumberFieldElement& e) {
    if (e.is_rational()) {
        const Rational q = e.repr.is_zero() ? Rational(0) : e.repr[0];
        return canonical_form(IntPoly(std::vector<Integer>{-q.get_num(), q.get_den()}));
    }
    const FieldOps k(e.base.minpoly());
    const std::size_t n = static_cast<std::size_t>(e.base.degree());
    QMatrix mult(n, n);
    RatPoly col = k.reduce(e.repr);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) mult(i, j) = col[i];
        col = k.mul(col, RatPoly::x());
    }
    return squarefree_part(primitive_integer_multiple(charpoly(mult)));
}

AlgebraicNumber to_algebraic(const NumberFieldElement& e) {
    const IntPoly p = minpoly_of_element(e);
    if (p.degree() == 1) return AlgebraicNumber::from_parts(p, 0);
    return AlgebraicNumber::matching(p, [&e](const Dyadic& w) { return ComplexBox::from_interval(e.enclose(w)); });
}

// ---------------------------------------------------------------- compositum

namespace {

// Polynomials in x over K = Q[Y]/(m), ascending.
using KPoly = std::vector<RatPoly>;

void ktrim(KPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

KPoly kmul(const FieldOps& k, const KPoly& a, const KPoly& b) {
    if (a.empty() || b.empty()) return {};
    KPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = k.reduce(r[i + j] + a[i] * b[j]);
    ktrim(r);
    return r;
}

KPoly krem(const FieldOps& k, KPoly a, const KPoly& b) {
    const RatPoly lead_inv = k.inv(b.back());
    while (a.size() >= b.size()) {
        const RatPoly f = k.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = k.reduce(a[shift + i] - f * b[i]);
        a.pop_back();
        ktrim(a);
    }
    return a;
}

KPoly kgcd(const FieldOps& k, KPoly a, KPoly b) {
    ktrim(a);
    ktrim(b);
    while (!b.empty()) {
        KPoly r = krem(k, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    const RatPoly li = k.inv(a.back());
    for (auto& c : a) c = k.mul(c, li);
    return a;
}

KPoly lift(const RatPoly& p) {
    KPoly r;
    for (const auto& c : p.coeffs()) r.push_back(RatPoly::constant(c));
    ktrim(r);
    return r;
}

}  // namespace

Compositum compositum(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_rational()) {
        return {b, 0, {b, RatPoly::constant(a.to_rational())}, {b, b.is_rational() ? RatPoly::constant(b.to_rational()) : RatPoly::x()}};
    }
    if (b.is_rational()) return {a, 0, {a, RatPoly::x()}, {a, RatPoly::constant(b.to_rational())}};

    const RatPoly ma = monic(to_rat(a.minpoly()));
    const RatPoly mb = monic(to_rat(b.minpoly()));
    const QMatrix ca = companion(ma), cb = companion(mb);
    const QMatrix ia = QMatrix::identity(ca.rows()), ib = QMatrix::identity(cb.rows());
    for (long t = 1; t <= 64; ++t) {
        const QMatrix sum = kron(ca, ib) + kron(ia, cb) * Rational(t);
        const IntPoly chi = primitive_integer_multiple(charpoly(sum));
        if (!is_squarefree(chi)) continue;
        auto enclose_theta = [&](const Dyadic& w) {
            const Dyadic fine = w * Dyadic::pow2(-8 - static_cast<long>(mpz_sizeinbase(Integer(t).get_mpz_t(), 2)));
            const CInterval za = a.enclosure_interval(fine);
            const CInterval zb = b.enclosure_interval(fine);
            return za + zb * Interval::of(t, zb.prec());
        };
        // pick the irreducible factor vanishing at alpha + t beta
        auto factors = factor_squarefree(chi);
        for (Dyadic w = Dyadic::pow2(-20); factors.size() > 1; w = w * Dyadic::pow2(-24)) {
            if (starting_precision(w) > precision_cap_bits()) throw PrecisionExhausted("compositum factor selection exceeded the precision cap");
            const CInterval z = enclose_theta(w);
            std::vector<IntPoly> keep;
            for (const auto& f : factors) {
                if (eval(f, z).contains_zero()) keep.push_back(f);
            }
            factors = std::move(keep);
        }
        if (factors.empty()) throw DomainError("no factor of the compositum polynomial vanishes at the primitive element");
        const IntPoly mt = factors.front();
        const AlgebraicNumber theta = AlgebraicNumber::matching(mt, [&](const Dyadic& w) { return ComplexBox::from_interval(enclose_theta(w)); });
        const FieldOps k(mt);
        // alpha is the common root of ma(x) and mb((theta - x)/t) in K
        const Rational tinv(1, t);
        const KPoly lin{RatPoly::x() * tinv, RatPoly::constant(-tinv)};
        KPoly sub;
        for (std::size_t i = mb.size(); i-- > 0;) {
            sub = kmul(k, sub, lin);
            if (sub.empty()) sub.push_back(RatPoly());
            sub[0] = k.reduce(sub[0] + RatPoly::constant(mb[i]));
            ktrim(sub);
        }
        const KPoly g = kgcd(k, lift(ma), sub);
        if (g.size() != 2) throw DomainError("primitive element does not separate the generators");
        const RatPoly alpha = k.reduce(-g[0]);
        const RatPoly beta = k.reduce((RatPoly::x() - alpha) * tinv);
        return {theta, t, {theta, alpha}, {theta, beta}};
    }
    throw DomainError("no separating primitive element found");
}

}  // namespace hc
