#include "heightcensus/factor.hpp"

#include <algorithm>
#include <optional>

#include "heightcensus/roots.hpp"

namespace hc {

std::vector<Integer> positive_divisors(const Integer& n) {
    Integer m = abs(n);
    if (m == 0) throw DomainError("divisors of zero");
    std::vector<std::pair<Integer, unsigned>> primes;
    for (Integer d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
            m /= d;
            ++e;
        }
        if (e) primes.emplace_back(d, e);
    }
    if (m > 1) primes.emplace_back(m, 1);
    std::vector<Integer> out{1};
    for (const auto& [pr, e] : primes) {
        const std::size_t sz = out.size();
        Integer pw = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pw *= pr;
            for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Integer mignotte_bound(const IntPoly& p) {
    Integer s = 0;
    for (const auto& c : p.coeffs()) s += c * c;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    if (r * r < s) r += 1;
    Integer two_d;
    mpz_ui_pow_ui(two_d.get_mpz_t(), 2, static_cast<unsigned long>(std::max(0, p.degree())));
    return two_d * r;
}

namespace {

bool is_square(const Integer& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0; }

std::optional<IntPoly> linear_factor_exact(const IntPoly& p) {
    if (p[0] == 0) return IntPoly{0, 1};
    const auto num = positive_divisors(p[0]);
    const auto den = positive_divisors(p.lead());
    for (const auto& s : den) {
        for (const auto& r : num) {
            if (gcd(r, s) != 1) continue;
            for (int sign : {1, -1}) {
                const Rational x(Integer(sign * r), s);
                if (to_rat(p).eval(x) == 0) return IntPoly(std::vector<Integer>{-x.get_num(), x.get_den()});
            }
        }
    }
    return std::nullopt;
}

// Integer nearest to an interval of width < 1, if it contains one.
std::optional<Integer> unique_integer(const Interval& v) {
    Float c(v.prec());
    mpfr_ceil(c.get(), v.lo());
    if (mpfr_cmp(c.get(), v.hi()) > 0) return std::nullopt;
    Integer z;
    mpfr_get_z(z.get_mpz_t(), c.get(), MPFR_RNDN);
    return z;
}

struct Unit {
    std::size_t first;
    std::size_t second;  // == first for a real root
    std::size_t size() const { return first == second ? 1 : 2; }
};

// Search conjugation-closed root subsets of size k, smallest k first.
std::optional<IntPoly> subset_factor(const IntPoly& p) {
    const int n = p.degree();
    long norm_bits = static_cast<long>(mpz_sizeinbase(mignotte_bound(p).get_mpz_t(), 2));
    long lead_bits = static_cast<long>(mpz_sizeinbase(p.lead().get_mpz_t(), 2));
    for (long extra = 16;; extra += 64) {
        const long bits = norm_bits + lead_bits + n + extra;
        if (bits + 64 > precision_cap_bits()) throw PrecisionExhausted("factor search exceeded the precision cap");
        const Dyadic w = Dyadic::pow2(-bits);
        const auto boxes = isolate_roots_unchecked(p, w);
        const mpfr_prec_t prec = starting_precision(w) + norm_bits + lead_bits;
        std::vector<CInterval> z;
        for (const auto& b : boxes) z.push_back(b.to_interval(prec));
        std::vector<Unit> units;
        std::vector<bool> used(boxes.size(), false);
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            if (used[i]) continue;
            used[i] = true;
            if (boxes[i].self_conjugate()) {
                units.push_back({i, i});
                continue;
            }
            const ComplexBox m = boxes[i].mirrored();
            for (std::size_t j = i + 1; j < boxes.size(); ++j) {
                if (!used[j] && boxes[j] == m) {
                    used[j] = true;
                    units.push_back({i, j});
                    break;
                }
            }
        }
        const Interval lead = Interval::of(p.lead(), prec);
        bool undecided = false;
        for (int k = 1; 2 * k <= n; ++k) {
            // enumerate subsets of units with total size k
            std::vector<std::size_t> pick;
            auto visit = [&](auto&& self, std::size_t start, int left) -> std::optional<IntPoly> {
                if (left == 0) {
                    // constant term first as a cheap filter
                    CInterval c0(lead, Interval::of(0L, prec));
                    for (auto u : pick) {
                        c0 = c0 * z[units[u].first];
                        if (units[u].size() == 2) c0 = c0 * z[units[u].second];
                    }
                    if (!(c0.re.width() < Dyadic(1))) {
                        undecided = true;
                        return std::nullopt;
                    }
                    if (!unique_integer(c0.re)) return std::nullopt;
                    std::vector<CInterval> q{CInterval(lead, Interval::of(0L, prec))};
                    auto mul_linear = [&](const CInterval& r) {
                        std::vector<CInterval> out(q.size() + 1, CInterval(prec));
                        for (std::size_t i = 0; i < q.size(); ++i) {
                            out[i + 1] = out[i + 1] + q[i];
                            out[i] = out[i] - q[i] * r;
                        }
                        q = std::move(out);
                    };
                    for (auto u : pick) {
                        mul_linear(z[units[u].first]);
                        if (units[u].size() == 2) mul_linear(z[units[u].second]);
                    }
                    std::vector<Integer> coeffs;
                    for (const auto& c : q) {
                        if (!(c.re.width() < Dyadic(1))) {
                            undecided = true;
                            return std::nullopt;
                        }
                        auto v = unique_integer(c.re);
                        if (!v) return std::nullopt;
                        coeffs.push_back(*v);
                    }
                    IntPoly g(std::move(coeffs));
                    if (g.degree() != k) return std::nullopt;
                    g = canonical_form(g);
                    if (divides(g, p)) return g;
                    return std::nullopt;
                }
                for (std::size_t u = start; u < units.size(); ++u) {
                    const int sz = static_cast<int>(units[u].size());
                    if (sz > left) continue;
                    pick.push_back(u);
                    auto r = self(self, u + 1, left - sz);
                    pick.pop_back();
                    if (r) return r;
                }
                return std::nullopt;
            };
            if (auto g = visit(visit, 0, k)) return g;
        }
        if (!undecided) return std::nullopt;
    }
}

}  // namespace

IrreducibilityResult is_irreducible(const IntPoly& p) {
    if (p.degree() < 1) throw DomainError("irreducibility needs degree >= 1");
    const IntPoly q = canonical_form(p);
    if (q.degree() == 1) return {true, {}};
    if (q[0] == 0) return {false, IntPoly{0, 1}};
    const IntPoly g = gcd(q, q.derivative());
    if (g.degree() > 0) return {false, canonical_form(g)};
    if (q.degree() == 2) {
        const Integer disc = q[1] * q[1] - 4 * q[0] * q[2];
        if (!is_square(disc)) return {true, {}};
        return {false, *linear_factor_exact(q)};
    }
    if (q.degree() == 3 && mpz_sizeinbase(q[0].get_mpz_t(), 2) < 40 && mpz_sizeinbase(q.lead().get_mpz_t(), 2) < 40) {
        if (auto f = linear_factor_exact(q)) return {false, canonical_form(*f)};
        return {true, {}};
    }
    if (auto f = subset_factor(q)) return {false, *f};
    return {true, {}};
}

std::vector<IntPoly> factor_squarefree(const IntPoly& p) {
    std::vector<IntPoly> out;
    std::vector<IntPoly> todo{canonical_form(p)};
    while (!todo.empty()) {
        IntPoly q = todo.back();
        todo.pop_back();
        if (q.degree() < 1) continue;
        const auto r = is_irreducible(q);
        if (r.irreducible) {
            out.push_back(q);
            continue;
        }
        todo.push_back(r.witness);
        todo.push_back(canonical_form(exact_quotient(q, r.witness)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<IntPoly> irreducible_factors(const IntPoly& p) {
    if (p.degree() < 1) return {};
    return factor_squarefree(squarefree_part(p));
}

}  // namespace hc
