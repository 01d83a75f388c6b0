#pragma once

// Exact dense linear algebra over the rationals: products, rank, nullspace
// and the inertia of symmetric matrices.

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

#include "acc/rational.hpp"

namespace acc {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      assert(row.size() == cols_);
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix&) const = default;

  std::vector<T> row(std::size_t r) const {
    return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_};
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  return t;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  assert(a.cols() == b.rows());
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

inline RationalVector operator*(const RationalMatrix& m, const RationalVector& v) {
  assert(m.cols() == v.size());
  RationalVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  assert(a.size() == b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_symmetric(const RationalMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

inline RationalMatrix principal_submatrix(const RationalMatrix& m,
                                          const std::vector<std::size_t>& idx) {
  RationalMatrix out(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
  return out;
}

namespace detail {

struct Echelon {
  Matrix<Integer> m;
  std::vector<std::size_t> pivot_cols;
};

// Bareiss fraction-free row echelon form of `a` after clearing each row's
// denominators. Every intermediate entry is a minor of the scaled input, so
// the divisions by the previous pivot are exact.
inline Echelon fraction_free_echelon(const RationalMatrix& a) {
  Matrix<Integer> m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Integer den = 1;
    for (std::size_t c = 0; c < a.cols(); ++c) den = lcm(den, denominator(a(r, c)));
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = numerator(a(r, c) * den);
  }
  Echelon out;
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      for (std::size_t j = col + 1; j < m.cols(); ++j) {
        Integer num = m(row, col) * m(i, j) - m(i, col) * m(row, j);
        assert(num % prev == 0);
        m(i, j) = num / prev;
      }
      m(i, col) = 0;
    }
    prev = m(row, col);
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.m = std::move(m);
  return out;
}

}  // namespace detail

inline std::size_t rank(const RationalMatrix& a) {
  return detail::fraction_free_echelon(a).pivot_cols.size();
}

/// Exact nullspace basis: one vector per free column in increasing column
/// order, each a primitive integer vector with positive first non-zero entry.
inline std::vector<RationalVector> kernel_basis(const RationalMatrix& a) {
  auto ech = detail::fraction_free_echelon(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    RationalVector x(n, Rational(0));
    x[free] = 1;
    for (std::size_t r = ech.pivot_cols.size(); r-- > 0;) {
      std::size_t pc = ech.pivot_cols[r];
      Rational s = 0;
      for (std::size_t c = pc + 1; c < n; ++c)
        if (x[c] != 0) s += Rational(ech.m(r, c)) * x[c];
      x[pc] = -s / Rational(ech.m(r, pc));
    }
    basis.push_back(primitive_integer(x));
  }
  return basis;
}

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  bool operator==(const Inertia&) const = default;
};

/// Signature of a symmetric rational matrix by congruence diagonalization
/// with symmetric pivoting. A zero diagonal with a non-zero off-diagonal
/// entry a_ij is handled by adding row/column j to row/column i first.
inline Inertia inertia(RationalMatrix a) {
  assert(is_symmetric(a));
  const std::size_t n = a.rows();
  std::vector<bool> active(n, true);
  Inertia out;
  for (std::size_t done = 0; done < n; ++done) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n && pivot == n; ++i)
      if (active[i] && a(i, i) != 0) pivot = i;
    if (pivot == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (active[i] && active[j] && a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        out.zero += n - done;
        break;
      }
      for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
      pivot = pi;
    }
    const Rational d = a(pivot, pivot);
    (d > 0 ? out.positive : out.negative) += 1;
    active[pivot] = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || a(i, pivot) == 0) continue;
      const Rational f = a(i, pivot) / d;
      for (std::size_t j = 0; j < n; ++j)
        if (active[j]) a(i, j) -= f * a(pivot, j);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (active[i]) a(i, pivot) = a(pivot, i) = 0;
  }
  return out;
}

inline RationalMatrix negate(RationalMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
  return m;
}

}  // namespace acc
