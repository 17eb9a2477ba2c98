#include "heightcensus/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>

#include "heightcensus/linalg.hpp"

namespace hc {

// ---------------------------------------------------------------- ComplexBox

Dyadic ComplexBox::width() const {
    const Dyadic a = re_hi - re_lo;
    const Dyadic b = im_hi - im_lo;
    return a < b ? b : a;
}

bool ComplexBox::intersects(const ComplexBox& o) const {
    return re_lo <= o.re_hi && o.re_lo <= re_hi && im_lo <= o.im_hi && o.im_lo <= im_hi;
}

bool ComplexBox::contains(const ComplexBox& o) const {
    return re_lo <= o.re_lo && o.re_hi <= re_hi && im_lo <= o.im_lo && o.im_hi <= im_hi;
}

CInterval ComplexBox::to_interval(mpfr_prec_t prec) const {
    return {Interval::hull(re_lo, re_hi, prec), Interval::hull(im_lo, im_hi, prec)};
}

ComplexBox ComplexBox::from_interval(const CInterval& z) {
    return {z.re.lower(), z.re.upper(), z.im.lower(), z.im.upper()};
}

mpfr_prec_t starting_precision(const Dyadic& width) {
    const long bits = width.sign() > 0 ? std::max(0L, -width.ilog2()) : 0;
    return static_cast<mpfr_prec_t>(std::max(64L, bits + 64));
}

namespace {

using cd = std::complex<double>;

// ---------------------------------------------------------------- approximations

std::vector<cd> initial_guesses(const std::vector<double>& a) {
    const std::size_t n = a.size() - 1;
    double r = 1.0;
    if (a[0] != 0.0) r = std::pow(std::abs(a[0] / a[n]), 1.0 / static_cast<double>(n));
    if (!std::isfinite(r) || r == 0.0) r = 1.0;
    std::vector<cd> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.7;
        z[k] = std::polar(r * (1.0 + 0.05 * static_cast<double>(k % 3)), t);
    }
    return z;
}

// Aberth iteration in double precision; empty on overflow.
std::vector<cd> aberth_double(const IntPoly& p) {
    const std::size_t n = static_cast<std::size_t>(p.degree());
    std::vector<double> a(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        a[i] = p[i].get_d();
        if (!std::isfinite(a[i])) return {};
    }
    std::vector<cd> z = initial_guesses(a);
    for (int it = 0; it < 400; ++it) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cd v = a[n], dv = 0.0;
            for (std::size_t k = n; k-- > 0;) {
                dv = dv * z[i] + v;
                v = v * z[i] + a[k];
            }
            if (v == 0.0) continue;
            const cd ratio = v / dv;
            cd sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            }
            const cd w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return {};
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[i])));
        }
        if (worst < 1e-15) break;
    }
    return z;
}

struct MpC {
    Float re, im;
    explicit MpC(mpfr_prec_t p) : re(p), im(p) {}
};

// Aberth iteration at MPFR precision `prec`, in place.
void aberth_mp(const IntPoly& p, std::vector<MpC>& z, mpfr_prec_t prec, int max_iter) {
    const std::size_t n = static_cast<std::size_t>(p.degree());
    std::vector<Float> a;
    a.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        a.emplace_back(prec);
        mpfr_set_z(a.back().get(), p[i].get_mpz_t(), MPFR_RNDN);
    }
    Float vr(prec), vi(prec), dr(prec), di(prec), t1(prec), t2(prec), t3(prec);
    Float sr(prec), si(prec), qr(prec), qi(prec), den(prec), wr(prec), wi(prec), mag(prec);
    const auto R = MPFR_RNDN;
    // (xr + i xi) * (yr + i yi) -> (xr, xi)
    auto cmul = [&](Float& xr, Float& xi, mpfr_srcptr yr, mpfr_srcptr yi) {
        mpfr_mul(t1.get(), xr.get(), yr, R);
        mpfr_mul(t2.get(), xi.get(), yi, R);
        mpfr_mul(t3.get(), xr.get(), yi, R);
        mpfr_mul(xi.get(), xi.get(), yr, R);
        mpfr_add(xi.get(), xi.get(), t3.get(), R);
        mpfr_sub(xr.get(), t1.get(), t2.get(), R);
    };
    // (xr + i xi) / (yr + i yi) -> (xr, xi)
    auto cdiv = [&](Float& xr, Float& xi, mpfr_srcptr yr, mpfr_srcptr yi) {
        mpfr_sqr(den.get(), yr, R);
        mpfr_sqr(t1.get(), yi, R);
        mpfr_add(den.get(), den.get(), t1.get(), R);
        Float nyi(prec);
        mpfr_neg(nyi.get(), yi, R);
        cmul(xr, xi, yr, nyi.get());
        mpfr_div(xr.get(), xr.get(), den.get(), R);
        mpfr_div(xi.get(), xi.get(), den.get(), R);
    };
    for (auto& zi : z) {
        mpfr_prec_round(zi.re.get(), prec, R);
        mpfr_prec_round(zi.im.get(), prec, R);
    }
    const long target = -(static_cast<long>(prec) - 6);
    for (int it = 0; it < max_iter; ++it) {
        long worst = std::numeric_limits<long>::min();
        for (std::size_t i = 0; i < n; ++i) {
            // v = p(z_i), d = p'(z_i)
            mpfr_set(vr.get(), a[n].get(), R);
            mpfr_set_zero(vi.get(), 1);
            mpfr_set_zero(dr.get(), 1);
            mpfr_set_zero(di.get(), 1);
            for (std::size_t k = n; k-- > 0;) {
                cmul(dr, di, z[i].re.get(), z[i].im.get());
                mpfr_add(dr.get(), dr.get(), vr.get(), R);
                mpfr_add(di.get(), di.get(), vi.get(), R);
                cmul(vr, vi, z[i].re.get(), z[i].im.get());
                mpfr_add(vr.get(), vr.get(), a[k].get(), R);
            }
            if (mpfr_zero_p(vr.get()) && mpfr_zero_p(vi.get())) continue;
            if (mpfr_zero_p(dr.get()) && mpfr_zero_p(di.get())) continue;
            // q = v / d
            mpfr_set(qr.get(), vr.get(), R);
            mpfr_set(qi.get(), vi.get(), R);
            cdiv(qr, qi, dr.get(), di.get());
            // s = sum 1 / (z_i - z_j)
            mpfr_set_zero(sr.get(), 1);
            mpfr_set_zero(si.get(), 1);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                Float er(prec), ei(prec);
                mpfr_sub(er.get(), z[i].re.get(), z[j].re.get(), R);
                mpfr_sub(ei.get(), z[i].im.get(), z[j].im.get(), R);
                mpfr_sqr(den.get(), er.get(), R);
                mpfr_sqr(t1.get(), ei.get(), R);
                mpfr_add(den.get(), den.get(), t1.get(), R);
                if (mpfr_zero_p(den.get())) continue;
                mpfr_div(t1.get(), er.get(), den.get(), R);
                mpfr_add(sr.get(), sr.get(), t1.get(), R);
                mpfr_div(t1.get(), ei.get(), den.get(), R);
                mpfr_sub(si.get(), si.get(), t1.get(), R);
            }
            // w = q / (1 - q s)
            mpfr_set(wr.get(), qr.get(), R);
            mpfr_set(wi.get(), qi.get(), R);
            Float pr(prec), pi(prec);
            mpfr_set(pr.get(), qr.get(), R);
            mpfr_set(pi.get(), qi.get(), R);
            cmul(pr, pi, sr.get(), si.get());
            mpfr_si_sub(pr.get(), 1, pr.get(), R);
            mpfr_neg(pi.get(), pi.get(), R);
            if (mpfr_zero_p(pr.get()) && mpfr_zero_p(pi.get())) continue;
            cdiv(wr, wi, pr.get(), pi.get());
            if (!mpfr_number_p(wr.get()) || !mpfr_number_p(wi.get())) continue;
            mpfr_sub(z[i].re.get(), z[i].re.get(), wr.get(), R);
            mpfr_sub(z[i].im.get(), z[i].im.get(), wi.get(), R);
            // relative correction size, as an exponent
            mpfr_hypot(mag.get(), wr.get(), wi.get(), R);
            if (!mpfr_zero_p(mag.get())) {
                mpfr_hypot(t1.get(), z[i].re.get(), z[i].im.get(), R);
                long e = mpfr_get_exp(mag.get());
                if (mpfr_cmp_ui(t1.get(), 1) > 0) e -= mpfr_get_exp(t1.get());
                worst = std::max(worst, e);
            }
        }
        if (worst < target) break;
    }
}

// ---------------------------------------------------------------- certification

CInterval eval_interval(const std::vector<Interval>& a, const CInterval& z) {
    const mpfr_prec_t prec = z.prec();
    CInterval acc(a.back(), Interval(prec));
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        acc = acc * z;
        acc.re = acc.re + a[k];
    }
    return acc;
}

std::optional<std::vector<ComplexBox>> certify(const IntPoly& p, std::vector<MpC>& z, mpfr_prec_t prec,
                                               const Dyadic& width) {
    const std::size_t n = static_cast<std::size_t>(p.degree());
    // Snap to conjugate-symmetric centres.
    Float tol(prec), mag(prec);
    std::vector<std::size_t> reals, uppers, lowers;
    for (std::size_t i = 0; i < n; ++i) {
        mpfr_hypot(mag.get(), z[i].re.get(), z[i].im.get(), MPFR_RNDN);
        if (mpfr_cmp_ui(mag.get(), 1) < 0) mpfr_set_ui(mag.get(), 1, MPFR_RNDN);
        mpfr_mul_2si(tol.get(), mag.get(), -static_cast<long>(prec / 2), MPFR_RNDN);
        if (mpfr_cmpabs(z[i].im.get(), tol.get()) <= 0) {
            reals.push_back(i);
        } else if (mpfr_sgn(z[i].im.get()) > 0) {
            uppers.push_back(i);
        } else {
            lowers.push_back(i);
        }
    }
    if (uppers.size() != lowers.size()) return std::nullopt;
    std::vector<CInterval> centre;
    centre.reserve(n);
    auto point = [&](mpfr_srcptr re, mpfr_srcptr im, bool negate_im) {
        CInterval c(prec);
        mpfr_set(c.re.lo(), re, MPFR_RNDD);
        mpfr_set(c.re.hi(), re, MPFR_RNDU);
        if (im == nullptr) {
            mpfr_set_zero(c.im.lo(), 1);
            mpfr_set_zero(c.im.hi(), 1);
        } else if (negate_im) {
            mpfr_neg(c.im.lo(), im, MPFR_RNDD);
            mpfr_neg(c.im.hi(), im, MPFR_RNDU);
        } else {
            mpfr_set(c.im.lo(), im, MPFR_RNDD);
            mpfr_set(c.im.hi(), im, MPFR_RNDU);
        }
        return c;
    };
    for (auto i : reals) centre.push_back(point(z[i].re.get(), nullptr, false));
    for (auto i : uppers) centre.push_back(point(z[i].re.get(), z[i].im.get(), false));
    for (auto i : uppers) centre.push_back(point(z[i].re.get(), z[i].im.get(), true));
    // Keep the snapped centres as the next starting point.
    {
        std::vector<MpC> snapped;
        snapped.reserve(n);
        for (const auto& c : centre) {
            MpC m(prec);
            mpfr_set(m.re.get(), c.re.lo(), MPFR_RNDN);
            mpfr_set(m.im.get(), c.im.lo(), MPFR_RNDN);
            snapped.push_back(std::move(m));
        }
        z = std::move(snapped);
    }

    std::vector<Interval> a;
    a.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) a.push_back(Interval::of(p[i], prec));
    const Interval lead = a.back();
    const std::size_t owned = reals.size() + uppers.size();
    const Interval nm1 = Interval::of(static_cast<long>(n - 1), prec);

    std::vector<ComplexBox> boxes;
    boxes.reserve(n);
    for (std::size_t i = 0; i < owned; ++i) {
        CInterval den(lead, Interval(prec));
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) den = den * (centre[i] - centre[j]);
        }
        if (den.contains_zero()) return std::nullopt;
        const CInterval w = eval_interval(a, centre[i]) / den;
        const CInterval c = centre[i] - w;
        const Interval rho = nm1 * abs(w);
        if (!mpfr_number_p(rho.hi())) return std::nullopt;
        Interval re(prec), im(prec);
        mpfr_sub(re.lo(), c.re.lo(), rho.hi(), MPFR_RNDD);
        mpfr_add(re.hi(), c.re.hi(), rho.hi(), MPFR_RNDU);
        if (i < reals.size()) {
            Float m(prec);
            mpfr_max(m.get(), abs(c.im).hi(), abs(c.im).hi(), MPFR_RNDU);
            mpfr_add(im.hi(), m.get(), rho.hi(), MPFR_RNDU);
            mpfr_neg(im.lo(), im.hi(), MPFR_RNDD);
        } else {
            mpfr_sub(im.lo(), c.im.lo(), rho.hi(), MPFR_RNDD);
            mpfr_add(im.hi(), c.im.hi(), rho.hi(), MPFR_RNDU);
        }
        boxes.push_back(ComplexBox::from_interval(CInterval(std::move(re), std::move(im))));
    }
    for (std::size_t k = 0; k < uppers.size(); ++k) boxes.push_back(boxes[reals.size() + k].mirrored());

    for (const auto& b : boxes) {
        if (width < b.width()) return std::nullopt;
    }
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            if (boxes[i].intersects(boxes[j])) return std::nullopt;
        }
    }
    return boxes;
}

bool by_key(const ComplexBox& a, const ComplexBox& b) {
    if (a.re_lo != b.re_lo) return a.re_lo < b.re_lo;
    return a.im_lo < b.im_lo;
}

// Every pair is ordered by disjoint real ranges, or shares an identical real range (mirror pair).
bool order_certified(const std::vector<ComplexBox>& boxes) {
    for (std::size_t i = 0; i + 1 < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            const auto& a = boxes[i];
            const auto& b = boxes[j];
            const bool separated = a.re_hi < b.re_lo || b.re_hi < a.re_lo;
            const bool same = a.re_lo == b.re_lo && a.re_hi == b.re_hi;
            if (!separated && !same) return false;
        }
    }
    return true;
}

std::vector<ComplexBox> isolate_impl(const IntPoly& p, const Dyadic& width);

// Squarefree polynomial whose roots include r_a + r_b for all roots r_a, r_b of p
// (characteristic polynomial of the Kronecker sum of companion matrices).
IntPoly pair_sum_poly(const IntPoly& p) {
    const QMatrix c = companion(monic(to_rat(p)));
    const QMatrix id = QMatrix::identity(c.rows());
    return squarefree_part(primitive_integer_multiple(charpoly(kron(c, id) + kron(id, c))));
}

// Index of the only box meeting the real segment 2 Re(x), if unique.
std::optional<std::size_t> unique_hit(const std::vector<ComplexBox>& sboxes, const ComplexBox& x) {
    const ComplexBox seg{x.re_lo + x.re_lo, x.re_hi + x.re_hi, Dyadic(), Dyadic()};
    std::optional<std::size_t> hit;
    for (std::size_t k = 0; k < sboxes.size(); ++k) {
        if (!sboxes[k].intersects(seg)) continue;
        if (hit) return std::nullopt;
        hit = k;
    }
    return hit;
}

// 2 Re r = r + conj(r) is a real root of `sums`; two roots have equal real parts
// exactly when both sums land in the same isolating box. Returns the certified
// order, or nullopt when some pair is undecided or has distinct real parts.
std::optional<std::vector<ComplexBox>> order_with_equal_real_parts(const IntPoly& sums,
                                                                   const std::vector<ComplexBox>& boxes,
                                                                   const Dyadic& w) {
    const std::size_t n = boxes.size();
    std::vector<std::vector<char>> by_im(n, std::vector<char>(n, 0));
    std::vector<ComplexBox> sboxes;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& a = boxes[i];
            const auto& b = boxes[j];
            if (a.re_hi < b.re_lo || b.re_hi < a.re_lo) continue;
            if (a.re_lo == b.re_lo && a.re_hi == b.re_hi) {
                by_im[i][j] = by_im[j][i] = 1;
                continue;
            }
            if (!(a.im_hi < b.im_lo || b.im_hi < a.im_lo)) return std::nullopt;
            if (sboxes.empty()) sboxes = isolate_impl(sums, w);
            const auto ha = unique_hit(sboxes, a), hb = unique_hit(sboxes, b);
            if (!ha || !hb || *ha != *hb) return std::nullopt;
            by_im[i][j] = by_im[j][i] = 1;
        }
    }
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        if (by_im[i][j]) return boxes[i].im_lo < boxes[j].im_lo;
        return boxes[i].re_lo < boxes[j].re_lo;
    });
    std::vector<ComplexBox> out;
    out.reserve(n);
    for (auto i : idx) out.push_back(boxes[i]);
    return out;
}

std::vector<ComplexBox> isolate_linear(const IntPoly& p, const Dyadic& width) {
    Rational r(-p[0], p[1]);
    r.canonicalize();
    const Integer& d = r.get_den();
    if (mpz_popcount(d.get_mpz_t()) == 1) {
        const long e = -static_cast<long>(mpz_scan1(d.get_mpz_t(), 0));
        const Dyadic v(r.get_num(), e);
        return {ComplexBox{v, v, Dyadic(), Dyadic()}};
    }
    for (mpfr_prec_t prec = starting_precision(width);; prec *= 2) {
        if (prec > precision_cap_bits()) throw PrecisionExhausted("root isolation exceeded the precision cap");
        const Interval iv = Interval::of(r, prec);
        if (!(width < iv.width())) return {ComplexBox{iv.lower(), iv.upper(), Dyadic(), Dyadic()}};
    }
}

std::vector<ComplexBox> isolate_impl(const IntPoly& p, const Dyadic& width) {
    if (p.degree() < 1) throw DomainError("root isolation needs degree >= 1");
    if (width.sign() <= 0) throw DomainError("root isolation width must be positive");
    if (p.degree() == 1) return isolate_linear(p, width);
    const std::size_t n = static_cast<std::size_t>(p.degree());
    mpfr_prec_t prec = starting_precision(width);
    // The coefficient size feeds into conditioning.
    long coeff_bits = 0;
    for (const auto& c : p.coeffs()) coeff_bits = std::max<long>(coeff_bits, static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)));
    prec = std::max<mpfr_prec_t>(prec, static_cast<mpfr_prec_t>(coeff_bits + 64));
    if (prec > precision_cap_bits()) throw PrecisionExhausted("root isolation exceeded the precision cap");

    std::vector<MpC> z;
    z.reserve(n);
    {
        std::vector<cd> approx = aberth_double(p);
        if (approx.empty()) {
            std::vector<double> a(n + 1, 1.0);
            approx = initial_guesses(a);
        }
        for (const auto& v : approx) {
            MpC m(prec);
            mpfr_set_d(m.re.get(), v.real(), MPFR_RNDN);
            mpfr_set_d(m.im.get(), v.imag(), MPFR_RNDN);
            z.push_back(std::move(m));
        }
    }
    int iters = 40;
    while (true) {
        aberth_mp(p, z, prec, iters);
        if (auto boxes = certify(p, z, prec, width)) {
            std::sort(boxes->begin(), boxes->end(), by_key);
            return *boxes;
        }
        prec *= 2;
        iters = 80;
        if (prec > precision_cap_bits()) throw PrecisionExhausted("root isolation exceeded the precision cap");
    }
}

}  // namespace

std::vector<ComplexBox> isolate_roots_unchecked(const IntPoly& p, const Dyadic& width) {
    Dyadic w = width;
    std::optional<IntPoly> sums;
    while (true) {
        auto boxes = isolate_impl(p, w);
        if (order_certified(boxes)) return boxes;
        // Real ranges that keep overlapping after a refinement may belong to roots
        // with equal real parts; settle those exactly and order them by Im.
        if (w < width) {
            if (!sums) sums = pair_sum_poly(p);
            if (auto ordered = order_with_equal_real_parts(*sums, boxes, w)) return *ordered;
        }
        w = w * Dyadic::pow2(-24);
        if (starting_precision(w) > precision_cap_bits()) return boxes;
    }
}

std::vector<ComplexBox> isolate_roots(const IntPoly& p, const Dyadic& width) {
    if (p.degree() < 1) throw DomainError("root isolation needs degree >= 1");
    if (width.sign() <= 0) throw DomainError("root isolation width must be positive");
    if (!is_squarefree(p)) throw DomainError("root isolation needs a squarefree polynomial: " + p.str());
    return isolate_roots_unchecked(p, width);
}

ComplexBox refine_root(const IntPoly& p, const ComplexBox& target, const Dyadic& width) {
    Dyadic w = width;
    while (true) {
        const auto boxes = isolate_roots_unchecked(p, w);
        const ComplexBox* hit = nullptr;
        int hits = 0;
        for (const auto& b : boxes) {
            if (b.intersects(target)) {
                hit = &b;
                ++hits;
            }
        }
        if (hits == 0) throw DomainError("box holds no root of " + p.str());
        if (hits == 1) return *hit;
        w = w * Dyadic::pow2(-16);
    }
}

}  // namespace hc
