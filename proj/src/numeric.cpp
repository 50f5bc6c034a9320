#include "msign/numeric.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace msign {

void require_metzler(const RealMatrix& a, const char* what) {
  if (!a.square()) throw DomainError(std::string(what) + ": matrix is not square");
  if (!all_finite(a)) throw DomainError(std::string(what) + ": non-finite entry");
  if (!is_metzler(a)) throw DomainError(std::string(what) + ": not Metzler");
}

RealMatrix submatrix(const RealMatrix& a, std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc) {
  RealMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = a(r0 + i, c0 + j);
  return out;
}

std::optional<RealMatrix> try_real_inverse(const RealMatrix& a) {
  if (!a.square()) throw DomainError("real_inverse: matrix is not square");
  if (!all_finite(a)) throw DomainError("real_inverse: non-finite entry");
  const std::size_t n = a.rows();
  const double threshold = 1e-12 * norm_inf(a);
  RealMatrix w = a;
  RealMatrix x = identity<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(w(i, k)) > std::abs(w(p, k))) p = i;
    if (!(std::abs(w(p, k)) > threshold)) return std::nullopt;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(w(p, j), w(k, j));
        std::swap(x(p, j), x(k, j));
      }
    const double piv = w(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      w(k, j) /= piv;
      x(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = w(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) -= f * w(k, j);
        x(i, j) -= f * x(k, j);
      }
    }
  }
  RealMatrix r = multiply(a, x);
  for (std::size_t i = 0; i < n; ++i) r(i, i) -= 1.0;
  if (!(norm_inf(r) <= 1e-8 * static_cast<double>(std::max<std::size_t>(n, 1))))
    return std::nullopt;
  return x;
}

RealMatrix real_inverse(const RealMatrix& a) {
  auto inv = try_real_inverse(a);
  if (!inv) throw NumericalError("real_inverse: matrix is numerically singular");
  return *std::move(inv);
}

namespace {

// t I - A is a nonsingular M-matrix iff elimination without pivoting keeps
// every pivot positive.
bool above_abscissa(const RealMatrix& a, double t) {
  const std::size_t n = a.rows();
  RealMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = (i == j ? t : 0.0) - a(i, j);
  for (std::size_t k = 0; k < n; ++k) {
    const double piv = w(k, k);
    if (!(piv > 0.0)) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = w(i, k) / piv;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= f * w(k, j);
    }
  }
  return true;
}

}  // namespace

double spectral_abscissa_metzler(const RealMatrix& a) {
  require_metzler(a, "spectral_abscissa_metzler");
  const std::size_t n = a.rows();
  if (n > 200) throw DomainError("spectral_abscissa_metzler: size exceeds 200");
  if (n == 0) return -std::numeric_limits<double>::infinity();
  double lo = a(0, 0);
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    lo = std::max(lo, a(i, i));
    double s = 0.0;
    for (double x : a.row(i)) s += x;
    hi = std::max(hi, s);
  }
  if (hi <= lo) return lo;
  const double width = hi - lo;
  hi += 1e-12 * (1.0 + std::abs(hi)) + 1e-12 * width;
  while (!above_abscissa(a, hi)) hi += width + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (above_abscissa(a, mid) ? hi : lo) = mid;
    if (hi - lo <= 1e-14 * (1.0 + std::abs(lo) + std::abs(hi))) break;
  }
  return lo + 0.5 * (hi - lo);
}

HurwitzReport hurwitz_metzler(const RealMatrix& a) {
  require_metzler(a, "hurwitz_metzler");
  HurwitzReport rep;
  rep.lyapunov = lp_strict_feasible(transpose(a));
  rep.inverse = try_real_inverse(a);
  if (rep.inverse) {
    const double bound = 1e-12 * norm_inf(*rep.inverse);
    rep.inverse_nonpositive = std::all_of(rep.inverse->values().begin(),
                                          rep.inverse->values().end(),
                                          [bound](double x) { return x <= bound; });
  }
  rep.abscissa_estimate = spectral_abscissa_metzler(a);
  const bool by_lp = rep.lyapunov.has_value();
  const bool by_inverse = rep.inverse_nonpositive;
  if (by_lp != by_inverse)
    throw InconsistencyError(std::string("hurwitz_metzler: Lyapunov LP says ") +
                             (by_lp ? "Hurwitz" : "not Hurwitz") + ", inverse test says " +
                             (by_inverse ? "Hurwitz" : "not Hurwitz"));
  rep.verdict = by_lp;
  return rep;
}

bool schur_split_hurwitz(const RealMatrix& m, std::size_t n1) {
  require_metzler(m, "schur_split_hurwitz");
  const std::size_t n = m.rows();
  if (n1 == 0 || n1 >= n) throw DomainError("schur_split_hurwitz: split index out of range");
  const std::size_t n2 = n - n1;
  const RealMatrix m11 = submatrix(m, 0, 0, n1, n1);
  if (!hurwitz_metzler(m11).verdict)
    throw DomainError("schur_split_hurwitz: leading block is not Hurwitz");
  const RealMatrix m12 = submatrix(m, 0, n1, n1, n2);
  const RealMatrix m21 = submatrix(m, n1, 0, n2, n1);
  RealMatrix s = submatrix(m, n1, n1, n2, n2);
  const RealMatrix corr = multiply(m21, multiply(real_inverse(m11), m12));
  for (std::size_t k = 0; k < s.values().size(); ++k) s.values()[k] -= corr.values()[k];
  // The complement of a Metzler matrix over a Hurwitz block is Metzler; clear
  // rounding noise on the off-diagonal.
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      if (i != j && s(i, j) < 0.0) s(i, j) = 0.0;
  return hurwitz_metzler(s).verdict;
}

bool cholesky_positive_definite(const RealMatrix& s) {
  if (!s.square()) throw DomainError("cholesky: matrix is not square");
  const std::size_t n = s.rows();
  RealMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return false;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double x = s(i, j);
      for (std::size_t k = 0; k < j; ++k) x -= l(i, k) * l(j, k);
      l(i, j) = x / l(j, j);
    }
  }
  return true;
}

std::size_t numeric_rank(const RealMatrix& a, double rel_tol) {
  RealMatrix w = a;
  const double threshold = rel_tol * norm_inf(a);
  const std::size_t m = w.rows(), n = w.cols();
  std::size_t rank = 0;
  std::vector<bool> used_col(n, false);
  std::vector<bool> used_row(m, false);
  for (std::size_t step = 0; step < std::min(m, n); ++step) {
    std::size_t pr = m, pc = n;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (used_row[i]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!used_col[j] && std::abs(w(i, j)) > best) {
          best = std::abs(w(i, j));
          pr = i;
          pc = j;
        }
    }
    if (pr == m || !(best > threshold)) break;
    used_row[pr] = used_col[pc] = true;
    ++rank;
    for (std::size_t i = 0; i < m; ++i) {
      if (used_row[i]) continue;
      const double f = w(i, pc) / w(pr, pc);
      for (std::size_t j = 0; j < n; ++j) w(i, j) -= f * w(pr, j);
    }
  }
  return rank;
}

}  // namespace msign
