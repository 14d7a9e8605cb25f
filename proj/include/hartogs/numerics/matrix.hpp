#pragma once

// Dense row-major matrices over complex-like scalars, with the handful of
// factorizations the geometry needs: LU determinant and solves, Cholesky
// positivity tests, and inversion of the Hermitian metric.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "hartogs/errors.hpp"
#include "hartogs/numerics/complex.hpp"

namespace hartogs {

inline complex conj(const complex& z) { return std::conj(z); }

template <typename S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0.0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<S> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw DimensionError("matrix entry count does not match its shape");
  }
  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1.0);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<S>& entries() const { return data_; }
  std::vector<S>& entries() { return data_; }

  Matrix adjoint() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = conj((*this)(i, j));
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  template <typename T>
  friend Matrix operator*(const Matrix& a, const T& s)
    requires(!std::is_same_v<T, Matrix> && requires(S x, T y) { x* y; })
  {
    Matrix r = a;
    for (auto& x : r.data_) x = x * s;
    return r;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using CMatrix = Matrix<complex>;

inline double max_abs(const CMatrix& m) {
  double r = 0.0;
  for (const auto& x : m.entries()) r = std::max(r, std::abs(x));
  return r;
}

inline CVector operator*(const CMatrix& m, const CVector& v) {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
  CVector r(m.rows(), complex(0.0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

/// Determinant by LU with partial pivoting; 1x1 and 2x2 are closed-form.
template <typename S>
S det(const Matrix<S>& m) {
  if (!m.square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return S(1.0);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Matrix<S> a = m;
  S result(1.0);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = pivot_magnitude(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double mag = pivot_magnitude(a(i, k));
      if (mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (best == 0.0) return S(0.0);
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
      negate = !negate;
    }
    const S pivot = a(k, k);
    result = result * pivot;
    if (k + 1 == n) break;
    const S inv = S(1.0) / pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const S f = a(i, k) * inv;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return negate ? -result : result;
}

/// Largest |M - M^*| entry.
inline double hermitian_defect(const CMatrix& m) {
  if (!m.square()) throw DimensionError("Hermitian test of a non-square matrix");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

/// Cholesky factor L (lower, M = L L^*) of a Hermitian matrix; returns false
/// when a pivot is not strictly positive.
inline bool cholesky(const CMatrix& m, CMatrix* factor = nullptr) {
  const std::size_t n = m.rows();
  CMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      complex s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  if (factor) *factor = std::move(l);
  return true;
}

/// True iff the smallest eigenvalue of the Hermitian matrix exceeds margin,
/// decided by a Cholesky attempt on M - margin I.
inline bool is_positive_definite(const CMatrix& m, double margin = 0.0) {
  if (!m.square()) throw DimensionError("positivity test of a non-square matrix");
  const double scale = std::max(1.0, max_abs(m));
  if (hermitian_defect(m) > 1e-12 * scale) throw InvalidArgument("positivity test of a non-Hermitian matrix");
  CMatrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= margin;
  return cholesky(shifted);
}

/// LU factorization with partial pivoting for repeated solves.
class LuDecomposition {
 public:
  explicit LuDecomposition(const CMatrix& m) : lu_(m), perm_(m.rows()) {
    if (!m.square()) throw DimensionError("LU of a non-square matrix");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      double best = std::abs(lu_(k, k));
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(lu_(i, k)) > best) {
          best = std::abs(lu_(i, k));
          piv = i;
        }
      if (best == 0.0) throw NumericalError("singular matrix in LU factorization");
      if (piv != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
        std::swap(perm_[k], perm_[piv]);
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        lu_(i, k) /= lu_(k, k);
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= lu_(i, k) * lu_(k, j);
      }
    }
  }

  CVector solve(const CVector& b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw DimensionError("right-hand side length mismatch");
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
      complex s = b[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      complex s = x[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
      x[i] = s / lu_(i, i);
    }
    return x;
  }

  CMatrix inverse() const {
    const std::size_t n = lu_.rows();
    CMatrix inv(n, n);
    CVector e(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(e.begin(), e.end(), complex(0.0));
      e[j] = 1.0;
      const CVector col = solve(e);
      for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
  }

 private:
  CMatrix lu_;
  std::vector<std::size_t> perm_;
};

inline CMatrix inverse(const CMatrix& m) { return LuDecomposition(m).inverse(); }

/// Max-row-sum norm.
inline double norm_inf(const CMatrix& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
    r = std::max(r, s);
  }
  return r;
}

inline double norm2(const CVector& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

/// Hermitian product sum_i a_i conj(b_i).
inline complex dot(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector lengths differ");
  complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

/// Euclidean distance from v to the complex span of `basis`, by modified
/// Gram-Schmidt; linearly dependent basis vectors are skipped.
inline double span_residual(const std::vector<CVector>& basis, const CVector& v) {
  std::vector<CVector> q;
  for (const auto& b : basis) {
    CVector u = b;
    const double before = norm2(u);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : q) {
        const complex c = dot(u, e);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] -= c * e[i];
      }
    const double nu = norm2(u);
    if (nu <= 1e-12 * std::max(1.0, before)) continue;
    for (auto& x : u) x /= nu;
    q.push_back(std::move(u));
  }
  CVector r = v;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : q) {
      const complex c = dot(r, e);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * e[i];
    }
  return norm2(r);
}

}  // namespace hartogs
