#pragma once

// Independent oracles and random generators shared by the unit and
// acceptance tests. Nothing here calls into the deciders under test.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "msign/matrix.hpp"
#include "msign/qual.hpp"

namespace msign::testing {

inline Eigen::MatrixXd to_eigen(const RealMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

/// Largest real part of the spectrum from a general eigensolver.
inline double eigen_abscissa(const RealMatrix& a) {
  if (a.rows() == 0) return -INFINITY;
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), false);
  return es.eigenvalues().real().maxCoeff();
}

inline double eigen_radius(const RealMatrix& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline RealMatrix eigen_inverse(const RealMatrix& a) {
  Eigen::MatrixXd inv = to_eigen(a).partialPivLu().inverse();
  RealMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = inv(i, j);
  return out;
}

using BoolMatrix = std::vector<std::vector<bool>>;

inline BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  const std::size_t n = a.size();
  BoolMatrix c(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (b[k][j]) c[i][j] = true;
  return c;
}

/// adj[j][i] for edge j -> i. Returns the union of adj^1 .. adj^n.
inline BoolMatrix bool_closure(const BoolMatrix& adj) {
  const std::size_t n = adj.size();
  BoolMatrix power = adj, acc = adj;
  for (std::size_t k = 1; k < n; ++k) {
    power = bool_product(power, adj);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (power[i][j]) acc[i][j] = true;
  }
  return acc;
}

/// Nilpotency of a nonnegative integer matrix through its zero pattern.
inline bool nonneg_nilpotent(const IntMatrix& a) {
  const std::size_t n = a.rows();
  BoolMatrix p(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p[i][j] = a(i, j) != 0;
  BoolMatrix power = p;
  for (std::size_t k = 1; k < n; ++k) power = bool_product(power, p);
  for (const auto& row : power)
    if (std::any_of(row.begin(), row.end(), [](bool x) { return x; })) return false;
  return true;
}

inline bool is_upper_triangular(const QualMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (a(i, j) != Sign::Zero) return false;
  return true;
}

inline QualMatrix random_sign_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                                     bool with_indef = false) {
  std::uniform_int_distribution<int> pick(0, with_indef ? 3 : 2);
  QualMatrix m(r, c);
  for (auto& s : m.values()) {
    const int k = pick(rng);
    s = k == 3 ? Sign::Indef : static_cast<Sign>(k - 1);
  }
  return m;
}

inline QualMatrix random_nonneg_pattern(std::mt19937_64& rng, std::size_t r, std::size_t c,
                                        double density) {
  std::bernoulli_distribution on(density);
  QualMatrix m(r, c, Sign::Zero);
  for (auto& s : m.values()) s = on(rng) ? Sign::Pos : Sign::Zero;
  return m;
}

/// Definite Metzler pattern. Half of the draws are permuted triangular
/// patterns, a third of which get one extra edge; the rest are unstructured.
/// Diagonals are mostly negative with occasional zero or positive entries.
inline QualMatrix random_metzler_pattern(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double density = 0.05 + 0.45 * unit(rng);
  QualMatrix a(n, n, Sign::Zero);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = unit(rng);
    a(i, i) = u < 0.85 ? Sign::Neg : (u < 0.95 ? Sign::Zero : Sign::Pos);
  }
  if (unit(rng) < 0.5) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (unit(rng) < density) a(order[p], order[q]) = Sign::Pos;
    if (n > 1 && unit(rng) < 0.3) {
      std::uniform_int_distribution<std::size_t> node(0, n - 1);
      const std::size_t i = node(rng), j = node(rng);
      if (i != j) a(i, j) = Sign::Pos;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && unit(rng) < density / 2) a(i, j) = Sign::Pos;
  }
  return a;
}

/// Sign-stable pattern: negative diagonal plus a permuted strictly
/// upper-triangular positive part.
inline QualMatrix random_sign_stable_pattern(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double density = 0.1 + 0.6 * unit(rng);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  QualMatrix a(n, n, Sign::Zero);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = Sign::Neg;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      if (unit(rng) < density) a(order[p], order[q]) = Sign::Pos;
  return a;
}

/// Random real Metzler matrix; about half are shifted to be Hurwitz.
inline RealMatrix random_metzler_real(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> mag(0.0, 3.0);
  std::bernoulli_distribution on(0.5);
  RealMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = i == j ? -mag(rng) : (on(rng) ? mag(rng) : 0.0);
  return a;
}

inline RealMatrix convex_combination(const std::vector<RealMatrix>& ms, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(ms.size());
  for (auto& x : w) x = e(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  RealMatrix out(ms.front().rows(), ms.front().cols());
  for (std::size_t k = 0; k < ms.size(); ++k)
    for (std::size_t i = 0; i < out.values().size(); ++i)
      out.values()[i] += w[k] / total * ms[k].values()[i];
  return out;
}

}  // namespace msign::testing
