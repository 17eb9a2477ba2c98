#include "heightcensus/poly.hpp"

#include <cctype>
#include <stdexcept>

namespace hc {

Integer content(const IntPoly& p) {
    Integer g = 0;
    for (const auto& c : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly canonical_form(const IntPoly& p) {
    if (p.is_zero()) throw DomainError("zero polynomial has no canonical form");
    Integer g = content(p);
    if (p.lead() < 0) g = -g;
    std::vector<Integer> c = p.coeffs();
    for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

bool is_canonical(const IntPoly& p) { return !p.is_zero() && p.lead() > 0 && content(p) == 1; }

bool divides(const IntPoly& d, const IntPoly& p, IntPoly* quotient) {
    if (d.is_zero()) throw DomainError("division by zero polynomial");
    if (p.is_zero()) {
        if (quotient) *quotient = IntPoly();
        return true;
    }
    if (p.degree() < d.degree()) return false;
    std::vector<Integer> r = p.coeffs();
    const int dd = d.degree();
    std::vector<Integer> q(static_cast<std::size_t>(p.degree() - dd + 1));
    const Integer& lc = d.lead();
    for (int k = p.degree() - dd; k >= 0; --k) {
        Integer& top = r[static_cast<std::size_t>(k + dd)];
        if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return false;
        Integer f;
        mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
        if (f != 0) {
            for (int i = 0; i <= dd; ++i) r[static_cast<std::size_t>(k + i)] -= f * d[static_cast<std::size_t>(i)];
        }
        q[static_cast<std::size_t>(k)] = std::move(f);
    }
    for (int i = 0; i < dd; ++i) {
        if (r[static_cast<std::size_t>(i)] != 0) return false;
    }
    if (quotient) *quotient = IntPoly(std::move(q));
    return true;
}

IntPoly exact_quotient(const IntPoly& p, const IntPoly& d) {
    IntPoly q;
    if (!divides(d, p, &q)) throw DomainError("inexact polynomial division");
    return q;
}

RatPoly to_rat(const IntPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return RatPoly(std::move(c));
}

IntPoly primitive_integer_multiple(const RatPoly& p) {
    if (p.is_zero()) return IntPoly();
    Integer l = 1;
    for (const auto& v : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Integer> c;
    c.reserve(p.size());
    for (const auto& v : p.coeffs()) {
        Integer t;
        mpz_divexact(t.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        c.push_back(t * v.get_num());
    }
    IntPoly q(std::move(c));
    const Integer g = content(q);
    if (g != 1) {
        std::vector<Integer> cc = q.coeffs();
        for (auto& v : cc) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        q = IntPoly(std::move(cc));
    }
    return q;
}

RatPoly monic(const RatPoly& p) {
    if (p.is_zero()) return p;
    const Rational inv = 1 / p.lead();
    return p * inv;
}

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    if (a.degree() < b.degree()) {
        q = RatPoly();
        r = a;
        return;
    }
    std::vector<Rational> rem = a.coeffs();
    const int db = b.degree();
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
    const Rational inv = 1 / b.lead();
    for (int k = a.degree() - db; k >= 0; --k) {
        Rational f = rem[static_cast<std::size_t>(k + db)] * inv;
        if (f != 0) {
            for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k + i)] -= f * b[static_cast<std::size_t>(i)];
        }
        quo[static_cast<std::size_t>(k)] = std::move(f);
    }
    rem.resize(static_cast<std::size_t>(db));
    q = RatPoly(std::move(quo));
    r = RatPoly(std::move(rem));
}

RatPoly operator%(const RatPoly& a, const RatPoly& b) {
    RatPoly q, r;
    divmod(a, b, q, r);
    return r;
}

RatPoly operator/(const RatPoly& a, const RatPoly& b) {
    RatPoly q, r;
    divmod(a, b, q, r);
    return q;
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

RatPoly xgcd(const RatPoly& a, const RatPoly& b, RatPoly& s, RatPoly& t) {
    RatPoly r0 = a, r1 = b;
    RatPoly s0 = RatPoly::constant(Rational(1)), s1;
    RatPoly t0, t1 = RatPoly::constant(Rational(1));
    while (!r1.is_zero()) {
        RatPoly q, r;
        divmod(r0, r1, q, r);
        RatPoly s2 = s0 - q * s1;
        RatPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        s = RatPoly();
        t = RatPoly();
        return r0;
    }
    const Rational inv = 1 / r0.lead();
    s = s0 * inv;
    t = t0 * inv;
    return r0 * inv;
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) return IntPoly();
    const RatPoly g = gcd(to_rat(a), to_rat(b));
    return canonical_form(primitive_integer_multiple(g));
}

bool is_squarefree(const IntPoly& p) {
    if (p.degree() <= 1) return true;
    return gcd(p, p.derivative()).degree() == 0;
}

IntPoly squarefree_part(const IntPoly& p) {
    if (p.degree() <= 0) return canonical_form(p);
    const IntPoly g = gcd(p, p.derivative());
    return canonical_form(primitive_integer_multiple(to_rat(p) / to_rat(g)));
}

SquarefreeDecomposition squarefree_decomposition(const IntPoly& p) {
    if (p.is_zero()) throw DomainError("squarefree decomposition of zero polynomial");
    SquarefreeDecomposition out;
    const IntPoly prim = canonical_form(p);
    out.unit = p.lead() / prim.lead();
    if (prim.degree() == 0) return out;
    // Yun over Q, each factor made primitive; the unit absorbs the leftover scalar.
    RatPoly f = to_rat(prim);
    RatPoly a = gcd(f, f.derivative());
    RatPoly b = f / a;
    RatPoly c = f.derivative() / a;
    RatPoly d = c - b.derivative();
    while (b.degree() > 0) {
        RatPoly g = gcd(b, d);
        out.factors.push_back(canonical_form(primitive_integer_multiple(g)));
        RatPoly nb = b / g;
        RatPoly nc = d / g;
        d = nc - nb.derivative();
        b = std::move(nb);
    }
    while (!out.factors.empty() && out.factors.back().degree() == 0) out.factors.pop_back();
    // Fix the unit so that unit * prod f_k^k == p exactly.
    IntPoly prod = IntPoly::constant(Integer(1));
    for (std::size_t k = 0; k < out.factors.size(); ++k) {
        for (std::size_t e = 0; e <= k; ++e) prod = prod * out.factors[k];
    }
    out.unit = p.lead() / prod.lead();
    return out;
}

Rational resultant(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    RatPoly x = a, y = b;
    Rational acc = 1;
    while (true) {
        const int m = x.degree(), n = y.degree();
        if (n == 0) {
            Rational p;
            mpz_pow_ui(p.get_num_mpz_t(), y.lead().get_num_mpz_t(), static_cast<unsigned long>(m));
            mpz_pow_ui(p.get_den_mpz_t(), y.lead().get_den_mpz_t(), static_cast<unsigned long>(m));
            p.canonicalize();
            return acc * p;
        }
        if (m == 0) {
            Rational p;
            mpz_pow_ui(p.get_num_mpz_t(), x.lead().get_num_mpz_t(), static_cast<unsigned long>(n));
            mpz_pow_ui(p.get_den_mpz_t(), x.lead().get_den_mpz_t(), static_cast<unsigned long>(n));
            p.canonicalize();
            return acc * p;
        }
        RatPoly r = x % y;
        if (r.is_zero()) return 0;
        const int k = r.degree();
        // res(x, y) = (-1)^{mn} lc(y)^{m-k} res(y, r)
        if ((m % 2 == 1) && (n % 2 == 1)) acc = -acc;
        Rational lp;
        mpz_pow_ui(lp.get_num_mpz_t(), y.lead().get_num_mpz_t(), static_cast<unsigned long>(m - k));
        mpz_pow_ui(lp.get_den_mpz_t(), y.lead().get_den_mpz_t(), static_cast<unsigned long>(m - k));
        lp.canonicalize();
        acc *= lp;
        x = std::move(y);
        y = std::move(r);
    }
}

Integer resultant(const IntPoly& a, const IntPoly& b) {
    const Rational r = resultant(to_rat(a), to_rat(b));
    return r.get_num();
}

namespace {

std::string normalize_minus(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        // U+2212 MINUS SIGN
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
            s += '-';
            i += 2;
            continue;
        }
        s += text[i];
    }
    return s;
}

std::vector<std::string> split_list(const std::string& raw) {
    std::string text = normalize_minus(raw);
    auto b = text.find('[');
    auto e = text.rfind(']');
    if (b == std::string::npos || e == std::string::npos || e < b)
        throw DomainError("polynomial must be written as a bracketed coefficient list: " + raw);
    std::vector<std::string> out;
    std::string cur;
    for (std::size_t i = b + 1; i < e; ++i) {
        const char ch = text[i];
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '"') {
            cur += ch;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
    std::string text;
    for (char ch : normalize_minus(raw)) {
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '"') text += ch;
    }
    if (text.empty()) throw DomainError("empty rational literal");
    Rational q;
    if (text.front() == '+') text.erase(0, 1);
    if (const auto e = text.find_first_of("eE"); e != std::string::npos && text.find('/') == std::string::npos) {
        // scientific notation: mantissa times a power of ten
        long exp10 = 0;
        try {
            std::size_t used = 0;
            exp10 = std::stol(text.substr(e + 1), &used);
            if (used != text.size() - e - 1) throw DomainError("");
        } catch (const std::exception&) {
            throw DomainError("malformed rational: " + raw);
        }
        if (exp10 > 100000 || exp10 < -100000) throw DomainError("exponent out of range: " + raw);
        Integer p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
        const Rational m = parse_rational(text.substr(0, e));
        q = exp10 < 0 ? Rational(m / p10) : Rational(m * p10);
        q.canonicalize();
        return q;
    }
    if (const auto dot = text.find('.'); dot != std::string::npos && text.find('/') == std::string::npos) {
        // terminating decimal
        const std::string frac = text.substr(dot + 1);
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Integer digits;
        if (frac.find_first_not_of("0123456789") != std::string::npos || digits.set_str(text.substr(0, dot) + frac, 10) != 0) {
            throw DomainError("malformed rational: " + raw);
        }
        q = Rational(digits, scale);
        q.canonicalize();
        return q;
    }
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw DomainError("malformed rational: " + raw);
    q.canonicalize();
    return q;
}

IntPoly parse_int_poly(const std::string& text) {
    std::vector<Integer> c;
    for (const auto& tok : split_list(text)) {
        Integer v;
        std::string t = tok;
        if (!t.empty() && t.front() == '+') t.erase(0, 1);
        if (t.empty() || v.set_str(t, 10) != 0) throw DomainError("malformed integer coefficient: " + tok);
        c.push_back(v);
    }
    return IntPoly(std::move(c));
}

RatPoly parse_rat_poly(const std::string& text) {
    std::vector<Rational> c;
    for (const auto& tok : split_list(text)) c.push_back(parse_rational(tok));
    return RatPoly(std::move(c));
}

}  // namespace hc
