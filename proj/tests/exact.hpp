#pragma once

// Exact rational checks for Metzler matrices. Every double is a dyadic
// rational, so these are free of rounding.

#include <gmpxx.h>

#include <vector>

#include "msign/matrix.hpp"

namespace msign::testing {

// For Metzler A: true iff every eigenvalue has real part < t. Equivalent to
// tI - A being a nonsingular M-matrix, i.e. all leading principal minors
// positive, i.e. all pivots of unpivoted elimination positive.
inline bool exact_abscissa_below(const RealMatrix& a, double t) {
  const std::size_t n = a.rows();
  std::vector<mpq_class> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i * n + j] = -mpq_class(a(i, j));
      if (i == j) m[i * n + j] += mpq_class(t);
    }
  for (std::size_t k = 0; k < n; ++k) {
    const mpq_class pivot = m[k * n + k];
    if (sgn(pivot) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(m[i * n + k]) == 0) continue;
      const mpq_class f = m[i * n + k] / pivot;
      for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
    }
  }
  return true;
}

}  // namespace msign::testing
