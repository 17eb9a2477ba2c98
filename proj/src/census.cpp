#include "heightcensus/census.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <thread>

#include "heightcensus/detail/certify.hpp"
#include "heightcensus/factor.hpp"

namespace hc {

Integer default_budget() {
    if (const char* env = std::getenv("HEIGHTCENSUS_BUDGET")) {
        Integer b;
        if (b.set_str(env, 10) == 0 && b > 0) return b;
        throw DomainError(std::string("HEIGHTCENSUS_BUDGET is not a positive integer: ") + env);
    }
    return Integer(1000000000);
}

namespace {

using detail::ceil_q;
using detail::floor_q;

Integer binomial(int n, int k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Rational pow_q(const Rational& b, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// floor or ceil of scale * e^{dN}, certified by refinement; never a tie for transcendental values.
Integer round_scaled_exp(int d, const ThresholdSpec& n, const Integer& scale, bool ceiling) {
    if (n.kind() == ThresholdSpec::Kind::LogRational || n.is_zero()) {
        const Rational v = n.is_zero() ? Rational(scale) : Rational(scale) * pow_q(n.value(), d);
        return ceiling ? ceil_q(v) : floor_q(v);
    }
    for (mpfr_prec_t prec = 64;; prec *= 2) {
        if (prec > precision_cap_bits()) throw PrecisionExhausted("rounding e^{dN} exceeded the precision cap");
        const Interval v = n.exp_dn(d, prec) * Interval::of(scale, prec);
        Integer lo, hi;
        Float t(prec);
        if (ceiling) {
            mpfr_ceil(t.get(), v.lo());
            mpfr_get_z(lo.get_mpz_t(), t.get(), MPFR_RNDN);
            mpfr_ceil(t.get(), v.hi());
            mpfr_get_z(hi.get_mpz_t(), t.get(), MPFR_RNDN);
        } else {
            mpfr_floor(t.get(), v.lo());
            mpfr_get_z(lo.get_mpz_t(), t.get(), MPFR_RNDN);
            mpfr_floor(t.get(), v.hi());
            mpfr_get_z(hi.get_mpz_t(), t.get(), MPFR_RNDN);
        }
        if (lo == hi) return lo;
    }
}

long to_long(const Integer& v, const char* what) {
    if (!v.fits_slong_p()) throw BudgetExceeded(what, v.get_str(), std::to_string(LONG_MAX));
    return v.get_si();
}

struct Box {
    int d = 1;
    std::vector<long> lo, hi;  // a_0 .. a_d
    long u = 1;                // floor(e^{dN}) >= |a_0|, a_d
    long v = 1;                // floor(2^d e^{dN}) >= |p(1)|, |p(-1)|
    Integer size() const {
        Integer s = 1;
        for (std::size_t i = 0; i < lo.size(); ++i) s *= (hi[i] >= lo[i] ? hi[i] - lo[i] + 1 : 0);
        return s;
    }
};

Box make_box(int d, const ThresholdSpec& n, const std::vector<CoefficientRange>* ranges) {
    const auto b = candidate_box(d, n);
    Box box;
    box.d = d;
    box.u = to_long(floor_exp_dn(d, n), "census coefficient bound");
    box.v = to_long(round_scaled_exp(d, n, Integer(1) << d, false), "census coefficient bound");
    box.lo.resize(static_cast<std::size_t>(d) + 1);
    box.hi.resize(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) {
        const long bk = to_long(b[static_cast<std::size_t>(d - i)], "census coefficient bound");
        long lo = -bk, hi = bk;
        if (i == d) lo = 1;
        if (i == 0 || i == d) {
            lo = std::max(lo, -box.u);
            hi = std::min(hi, box.u);
        }
        if (ranges) {
            lo = std::max(lo, (*ranges)[static_cast<std::size_t>(i)].first);
            hi = std::min(hi, (*ranges)[static_cast<std::size_t>(i)].second);
        }
        box.lo[static_cast<std::size_t>(i)] = lo;
        box.hi[static_cast<std::size_t>(i)] = hi;
    }
    return box;
}

struct LocalStats {
    long candidates = 0, passed = 0, irreducible = 0, accepted = 0;
};

// Scan flattened indices [begin, end) of the box (a_0 varies fastest).
std::vector<IntPoly> scan_range(const Box& box, const ThresholdSpec& n, long begin, long end, LocalStats& st) {
    const int d = box.d;
    const std::size_t m = static_cast<std::size_t>(d) + 1;
    std::vector<long> a(m);
    long idx = begin;
    for (std::size_t i = 0; i < m; ++i) {
        const long span = box.hi[i] - box.lo[i] + 1;
        a[i] = box.lo[i] + idx % span;
        idx /= span;
    }
    std::vector<IntPoly> out;
    for (long k = begin; k < end; ++k) {
        ++st.candidates;
        bool ok = !(d >= 2 && a[0] == 0);
        if (ok) {
            long p1 = 0, pm1 = 0;
            for (std::size_t i = 0; i < m; ++i) {
                p1 += a[i];
                pm1 += (i % 2 ? -a[i] : a[i]);
            }
            ok = std::labs(p1) <= box.v && std::labs(pm1) <= box.v;
        }
        if (ok) {
            long g = 0;
            for (auto c : a) g = std::gcd(g, c);
            ok = g == 1;
        }
        if (ok) {
            ++st.passed;
            std::vector<Integer> c(a.begin(), a.end());
            IntPoly p(std::move(c));
            if (d == 1 || is_irreducible(p).irreducible) {
                ++st.irreducible;
                if (poly_height_leq(p, n)) {
                    ++st.accepted;
                    out.push_back(std::move(p));
                }
            }
        }
        // odometer
        for (std::size_t i = 0; i < m; ++i) {
            if (++a[i] <= box.hi[i]) break;
            a[i] = box.lo[i];
        }
    }
    return out;
}

void add_stats(CensusStats& s, const LocalStats& l) {
    s.candidates += l.candidates;
    s.passed_filters += l.passed;
    s.irreducible += l.irreducible;
    s.accepted_polys += l.accepted;
}

std::vector<IntPoly> scan_parallel(const Box& box, const ThresholdSpec& n, unsigned workers, CensusStats& stats) {
    const Integer total_z = box.size();
    if (total_z == 0) return {};
    const long total = to_long(total_z, "census box");
    workers = std::max(1u, workers);
    const long chunk = std::max(256L, total / (static_cast<long>(workers) * 16) + 1);
    const long chunks = (total + chunk - 1) / chunk;
    std::vector<std::vector<IntPoly>> parts(static_cast<std::size_t>(chunks));
    std::vector<LocalStats> local(workers);
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::mutex fail_mu;
    auto run = [&](unsigned w) {
        try {
            for (long c = next++; c < chunks; c = next++) {
                const long b = c * chunk;
                parts[static_cast<std::size_t>(c)] = scan_range(box, n, b, std::min(total, b + chunk), local[w]);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(fail_mu);
            if (!failure) failure = std::current_exception();
            next = chunks;
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<IntPoly> out;
    for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    for (const auto& l : local) add_stats(stats, l);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Integer floor_exp_dn(int d, const ThresholdSpec& n) { return round_scaled_exp(d, n, Integer(1), false); }

std::vector<Integer> candidate_box(int d, const ThresholdSpec& n) {
    if (d < 1) throw DomainError("degree must be >= 1");
    std::vector<Integer> b;
    for (int k = 0; k <= d; ++k) b.push_back(round_scaled_exp(d, n, binomial(d, k), true));
    return b;
}

Integer candidate_count(int D, const ThresholdSpec& n) {
    Integer total = 0;
    for (int d = 1; d <= D; ++d) {
        const auto b = candidate_box(d, n);
        Integer c = b[0];
        for (int k = 1; k <= d; ++k) c *= 2 * b[static_cast<std::size_t>(k)] + 1;
        total += c;
    }
    return total;
}

std::vector<CoefficientRange> full_ranges(int d, const ThresholdSpec& n) {
    const Box box = make_box(d, n, nullptr);
    std::vector<CoefficientRange> r;
    for (std::size_t i = 0; i < box.lo.size(); ++i) r.emplace_back(box.lo[i], box.hi[i]);
    return r;
}

std::vector<IntPoly> scan_box(int d, const ThresholdSpec& n, const std::vector<CoefficientRange>& ranges, CensusStats* stats) {
    if (ranges.size() != static_cast<std::size_t>(d) + 1) throw DomainError("one coefficient range per coefficient expected");
    const Box box = make_box(d, n, &ranges);
    CensusStats local;
    auto out = scan_parallel(box, n, 1, local);
    if (stats) *stats = local;
    return out;
}

CensusResult enumerate_E(const CensusSpec& spec) {
    if (spec.D < 1) throw DomainError("D must be >= 1");
    if (spec.budget < 1) throw DomainError("budget must be >= 1");
    const Integer needed = candidate_count(spec.D, spec.N);
    if (needed > spec.budget) throw BudgetExceeded("census candidate box", needed.get_str(), spec.budget.get_str());
    CensusResult r;
    r.has_listing = spec.listing;
    for (int d = 1; d <= spec.D; ++d) {
        const Box box = make_box(d, spec.N, nullptr);
        auto polys = scan_parallel(box, spec.N, spec.workers, r.stats);
        r.by_degree[d] = Integer(static_cast<long>(polys.size())) * d;
        r.epsilon += r.by_degree[d];
        if (spec.listing) {
            for (const auto& p : polys) {
                auto roots = AlgebraicNumber::roots_of_irreducible(p);
                r.listing.insert(r.listing.end(), roots.begin(), roots.end());
            }
        }
        r.minpolys.insert(r.minpolys.end(), polys.begin(), polys.end());
    }
    return r;
}

Integer epsilon_degree_one(const ThresholdSpec& n) {
    const Integer h = floor_exp_dn(1, n);
    const long hh = to_long(h, "totient range");
    // totient sieve
    std::vector<long> phi(static_cast<std::size_t>(hh) + 1);
    std::iota(phi.begin(), phi.end(), 0L);
    for (long i = 2; i <= hh; ++i) {
        if (phi[static_cast<std::size_t>(i)] != i) continue;
        for (long j = i; j <= hh; j += i) phi[static_cast<std::size_t>(j)] -= phi[static_cast<std::size_t>(j)] / i;
    }
    Integer total = 0;
    for (long i = 1; i <= hh; ++i) total += phi[static_cast<std::size_t>(i)];
    return 1 + 2 * (2 * total - 1);
}

Integer epsilon(int D, const ThresholdSpec& n, const Integer& budget, unsigned workers) {
    if (D == 1) return epsilon_degree_one(n);
    CensusSpec spec{D, n, budget, workers, false};
    return enumerate_E(spec).epsilon;
}

Integer count_eisenstein(int D, const Integer& H) {
    if (D < 1 || H < 1) throw DomainError("count_eisenstein needs D >= 1 and H >= 1");
    Integer odd = 2 * floor_q(Rational(H + 1, 2));
    Integer even = 2 * floor_q(Rational(H, 2)) + 1;
    Integer constant = 2 * floor_q(Rational(H + 2, 4));
    Integer r = odd * constant;
    for (int i = 1; i < D; ++i) r *= even;
    return r;
}

Lemma1Report verify_lemma1(int D, const ThresholdSpec& n, const Integer& budget, unsigned workers) {
    Lemma1Report rep;
    rep.D = D;
    rep.N = n;
    rep.epsilon = epsilon(D, n, budget, workers);
    const long c = static_cast<long>(D) * (D + 1);
    rep.lower_exact = n.kind() == ThresholdSpec::Kind::Rational && n.value() == 1;
    bool lower_done = false, upper_done = false;
    if (rep.lower_exact) {
        rep.lower = {Dyadic(1), Dyadic(1)};
        rep.lower_ok = 1 < rep.epsilon;
        lower_done = true;
    }
    const Rational eps(rep.epsilon);
    for (mpfr_prec_t prec = 128; !(lower_done && upper_done); prec *= 2) {
        if (prec > precision_cap_bits()) throw PrecisionExhausted("counting bound comparison exceeded the precision cap");
        const Interval nn = n.enclose(prec);
        const Interval cc = Interval::of(c, prec);
        const Interval one = Interval::of(1L, prec);
        if (!lower_done) {
            const Interval lo = exp(cc * (nn - one));
            rep.lower = RealEnclosure::from(lo);
            const int s = compare(lo, eps);
            if (s != 0) {
                rep.lower_ok = s < 0;
                lower_done = true;
            }
        }
        if (!upper_done) {
            const Interval up = exp(cc * (nn + one));
            rep.upper = RealEnclosure::from(up);
            const int s = compare(up, eps);
            if (s != 0) {
                rep.upper_ok = s > 0;
                upper_done = true;
            }
        }
    }
    return rep;
}

}  // namespace hc
