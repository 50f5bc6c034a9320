#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "msign/errors.hpp"

namespace msign {

/// Dense row-major matrix. Used for sign patterns, real and integer matrices.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DomainError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (const auto& r : rows) {
      if (r.size() != m.cols_) throw DomainError("ragged matrix rows");
      m.data_.insert(m.data_.end(), r.begin(), r.end());
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const T> values() const noexcept { return data_; }
  std::span<T> values() noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

  template <typename F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.values()[k] = f(data_[k]);
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using IntMatrix = Matrix<std::int64_t>;
using RealVector = std::vector<double>;

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <typename T>
Matrix<T> identity(std::size_t n, T one = T{1}) {
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
  return m;
}

/// Symmetric relabeling P^T A P where perm[k] is the original index placed at position k.
template <typename T>
Matrix<T> permute_symmetric(const Matrix<T>& a, std::span<const std::size_t> perm) {
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t k = 0; k < perm.size(); ++k)
    for (std::size_t l = 0; l < perm.size(); ++l) out(k, l) = a(perm[k], perm[l]);
  return out;
}

template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw DomainError("shape mismatch in product: " + std::to_string(a.cols()) + " vs " +
                      std::to_string(b.rows()));
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <typename T>
Matrix<T> add(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("shape mismatch in sum");
  Matrix<T> c = a;
  for (std::size_t k = 0; k < c.values().size(); ++k) c.values()[k] += b.values()[k];
  return c;
}

inline RealMatrix to_real(const IntMatrix& m) {
  return m.map([](std::int64_t x) { return static_cast<double>(x); });
}

inline double norm_inf(const RealMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double x : a.row(i)) s += std::abs(x);
    best = std::max(best, s);
  }
  return best;
}

inline double norm_inf(std::span<const double> v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

inline bool all_finite(const RealMatrix& a) {
  return std::all_of(a.values().begin(), a.values().end(),
                     [](double x) { return std::isfinite(x); });
}

inline bool is_metzler(const RealMatrix& a) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) < 0.0) return false;
  return true;
}

inline bool is_nonneg(const RealMatrix& a) {
  return std::all_of(a.values().begin(), a.values().end(), [](double x) { return x >= 0.0; });
}

/// v^T A as a row vector.
inline RealVector left_multiply(std::span<const double> v, const RealMatrix& a) {
  RealVector out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += v[i] * a(i, j);
  return out;
}

inline RealVector right_multiply(const RealMatrix& a, std::span<const double> x) {
  RealVector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  return out;
}

}  // namespace msign
