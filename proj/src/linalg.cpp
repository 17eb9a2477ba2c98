#include "heightcensus/linalg.hpp"

namespace hc {

std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(row, p);
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::vector<std::vector<Rational>> kernel(QMatrix m) {
    const auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b) {
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<Rational> x(m.cols(), Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

RatPoly charpoly(const QMatrix& a) {
    // Faddeev-LeVerrier: M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    const std::size_t n = a.rows();
    if (n != a.cols()) throw DomainError("charpoly of non-square matrix");
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    QMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = a * mk;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
        const QMatrix am = a * mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    return RatPoly(std::move(c));
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
    QMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return r;
}

QMatrix companion(const RatPoly& p) {
    const int n = p.degree();
    if (n < 1 || p.lead() != 1) throw DomainError("companion matrix needs a monic polynomial of degree >= 1");
    QMatrix c(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    // column j = coordinates of X * X^j
    for (int j = 0; j + 1 < n; ++j) c(static_cast<std::size_t>(j + 1), static_cast<std::size_t>(j)) = 1;
    for (int i = 0; i < n; ++i) c(static_cast<std::size_t>(i), static_cast<std::size_t>(n - 1)) = -p[static_cast<std::size_t>(i)];
    return c;
}

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational round_nearest(const Rational& q) {
    // floor(q + 1/2)
    Rational t = q + Rational(1, 2);
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return Rational(f);
}

}  // namespace

void lll_reduce(std::vector<std::vector<Integer>>& b) {
    const std::size_t n = b.size();
    if (n <= 1) return;
    const std::size_t m = b[0].size();
    auto as_rat = [&](std::size_t i) {
        std::vector<Rational> v(m);
        for (std::size_t j = 0; j < m; ++j) v[j] = b[i][j];
        return v;
    };
    std::vector<std::vector<Rational>> bs(n);
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> bn(n);
    {
        for (std::size_t i = 0; i < n; ++i) {
            const auto bi = as_rat(i);
            bs[i] = bi;
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(bi, bs[j]) / bn[j];
                for (std::size_t t = 0; t < m; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
            }
            bn[i] = dot(bs[i], bs[i]);
            if (bn[i] == 0) throw DomainError("LLL needs linearly independent rows");
        }
    }
    const Rational delta(3, 4);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            const Rational r = round_nearest(mu[k][j]);
            if (r == 0) continue;
            const Integer ri = r.get_num();
            for (std::size_t t = 0; t < m; ++t) b[k][t] -= ri * b[j][t];
            for (std::size_t t = 0; t < j; ++t) mu[k][t] -= r * mu[j][t];
            mu[k][j] -= r;
        }
        if (bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            const Rational u = mu[k][k - 1];
            const Rational big = bn[k] + u * u * bn[k - 1];
            mu[k][k - 1] = u * bn[k - 1] / big;
            bn[k] = bn[k - 1] * bn[k] / big;
            bn[k - 1] = big;
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k - 1][j], mu[k][j]);
            for (std::size_t i = k + 1; i < n; ++i) {
                const Rational t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - u * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
}

std::vector<std::vector<Integer>> integer_kernel(const ZMatrix& a) {
    // Unimodular column operations bring a to column echelon form; the columns of
    // the transform past the last pivot then span the integer kernel.
    const std::size_t m = a.rows(), n = a.cols();
    ZMatrix b = a;
    ZMatrix u = ZMatrix::identity(n);
    auto combine = [&](ZMatrix& x, std::size_t p, std::size_t c, const Integer& s, const Integer& t, const Integer& ag,
                       const Integer& bg) {
        for (std::size_t i = 0; i < x.rows(); ++i) {
            const Integer xp = x(i, p), xc = x(i, c);
            x(i, p) = s * xp + t * xc;
            x(i, c) = ag * xc - bg * xp;
        }
    };
    std::size_t lead = 0;
    for (std::size_t r = 0; r < m && lead < n; ++r) {
        for (std::size_t c = lead + 1; c < n; ++c) {
            if (b(r, c) == 0) continue;
            const Integer x = b(r, lead), y = b(r, c);
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            const Integer ag = x / g, bg = y / g;
            combine(b, lead, c, s, t, ag, bg);
            combine(u, lead, c, s, t, ag, bg);
        }
        if (b(r, lead) != 0) ++lead;
    }
    std::vector<std::vector<Integer>> basis;
    for (std::size_t c = lead; c < n; ++c) {
        std::vector<Integer> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = u(i, c);
        basis.push_back(std::move(v));
    }
    lll_reduce(basis);
    return basis;
}

}  // namespace hc
