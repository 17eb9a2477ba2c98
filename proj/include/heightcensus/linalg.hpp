#pragma once

// Dense exact matrices: row reduction and kernels over Q, characteristic
// polynomials, fraction-free determinants, and LLL reduction of integer bases.

#include <optional>
#include <vector>

#include "heightcensus/poly.hpp"

namespace hc {

template <class R>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, R(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = R(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    R& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw DomainError("matrix shape mismatch");
        Matrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }
    friend Matrix operator+(Matrix x, const Matrix& y) {
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }
    friend Matrix operator*(Matrix x, const R& s) {
        for (auto& v : x.a_) v *= s;
        return x;
    }
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<R> a_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

/// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
std::size_t rank(QMatrix m);
/// Basis of {x : m x = 0}, one vector per free column.
std::vector<std::vector<Rational>> kernel(QMatrix m);
/// Some solution of m x = b, if consistent.
std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b);
/// Monic det(X I - m).
RatPoly charpoly(const QMatrix& m);
/// Kronecker product.
QMatrix kron(const QMatrix& a, const QMatrix& b);
/// Companion matrix of a monic polynomial (acts as multiplication by X on 1, X, ..., X^{n-1}).
QMatrix companion(const RatPoly& monic_poly);

inline Integer exact_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
inline IntPoly exact_div(const IntPoly& a, const IntPoly& b) { return exact_quotient(a, b); }

/// Fraction-free (Bareiss) determinant over an integral domain with exact division.
template <class R>
R bareiss_det(Matrix<R> m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw DomainError("determinant of non-square matrix");
    if (n == 0) return R(1);
    R prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == R(0)) {
            std::size_t s = k + 1;
            while (s < n && m(s, k) == R(0)) ++s;
            if (s == n) return R(0);
            m.swap_rows(k, s);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
        prev = m(k, k);
    }
    R d = m(n - 1, n - 1);
    return negate ? R(0) - d : d;
}

/// LLL-reduces the rows of `basis` in place (exact rational Gram-Schmidt, delta = 3/4).
/// Rows must be linearly independent.
void lll_reduce(std::vector<std::vector<Integer>>& basis);

/// LLL-reduced basis of ker(a) intersected with Z^n (the saturated integer kernel).
std::vector<std::vector<Integer>> integer_kernel(const ZMatrix& a);

}  // namespace hc
