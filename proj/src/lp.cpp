#include "msign/lp.hpp"

#include <cmath>
#include <limits>

namespace msign {

namespace {

constexpr double kPivotEps = 1e-11;

// Dense tableau: rows 0..m-1 are constraints, the last column holds the
// right-hand side, the extra row holds phase-1 reduced costs.
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t cols) : m_(m), cols_(cols), t_((m + 1) * (cols + 1), 0.0), basis_(m) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(m_, c); }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t k = 0; k <= cols_; ++k) at(r, k) /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t k = 0; k <= cols_; ++k) at(i, k) -= f * at(r, k);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  // Bland's rule: lowest-index improving column, ties in the ratio test broken
  // by lowest basic index. Returns false if the iteration cap is hit.
  bool optimize(std::size_t max_iter) {
    for (std::size_t it = 0; it < max_iter; ++it) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c)
        if (cost(c) < -kPivotEps) {
          enter = c;
          break;
        }
      if (enter == cols_) return true;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r)
        if (at(r, enter) > kPivotEps) best = std::min(best, rhs(r) / at(r, enter));
      std::size_t leave = m_;
      const double slack = 1e-12 * (1.0 + std::abs(best));
      for (std::size_t r = 0; r < m_; ++r) {
        if (at(r, enter) <= kPivotEps || rhs(r) / at(r, enter) > best + slack) continue;
        if (leave == m_ || basis_[r] < basis_[leave]) leave = r;
      }
      if (leave == m_) return true;  // unbounded direction; cannot occur in phase 1
      pivot(leave, enter);
    }
    return false;
  }

 private:
  std::size_t m_, cols_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

void check_shape(const LpSystem& sys) {
  if (sys.rows.size() != sys.g.rows() || sys.vars.size() != sys.g.cols())
    throw DomainError("lp: row/variable kinds do not match the constraint matrix");
  if (!all_finite(sys.g)) throw DomainError("lp: non-finite constraint coefficient");
}

}  // namespace

double lp_tolerance(const LpSystem& sys) { return 1e-7 * (1.0 + norm_inf(sys.g)); }

std::optional<LpCertificate> lp_solve(const LpSystem& sys) {
  check_shape(sys);
  const std::size_t m = sys.g.rows();
  const std::size_t n = sys.g.cols();

  // Column layout: y (one per positive var, two per free var), slacks, artificials.
  std::vector<std::size_t> col_of(n);
  std::size_t ny = 0;
  for (std::size_t j = 0; j < n; ++j) {
    col_of[j] = ny;
    ny += sys.vars[j] == VarKind::Free ? 2 : 1;
  }
  std::vector<std::size_t> slack_of(m, 0);
  std::size_t ns = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (sys.rows[i] != RowKind::Equal) slack_of[i] = ny + ns++;
  const std::size_t art0 = ny + ns;
  const std::size_t cols = art0 + m;

  Tableau t(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    double b = sys.rows[i] == RowKind::Strict ? -1.0 : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double gij = sys.g(i, j);
      if (sys.vars[j] == VarKind::Positive) {
        t.at(i, col_of[j]) = gij;
        b -= gij;
      } else {
        t.at(i, col_of[j]) = gij;
        t.at(i, col_of[j] + 1) = -gij;
      }
    }
    if (sys.rows[i] != RowKind::Equal) t.at(i, slack_of[i]) = 1.0;
    if (b < 0.0) {
      for (std::size_t c = 0; c < art0; ++c) t.at(i, c) = -t.at(i, c);
      b = -b;
    }
    t.at(i, art0 + i) = 1.0;
    t.rhs(i) = b;
    t.basis()[i] = art0 + i;
  }
  for (std::size_t c = 0; c <= cols; ++c) {
    if (c >= art0 && c < cols) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += t.at(i, c);
    t.at(m, c) = -s;
  }

  const std::size_t cap = 200 * (m + cols) + 1000;
  if (!t.optimize(cap)) throw NumericalError("lp: simplex iteration cap reached");

  double infeas = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis()[i] >= art0) infeas += t.rhs(i);
  const double tol = lp_tolerance(sys);
  if (infeas > tol) return std::nullopt;

  std::vector<double> y(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) y[t.basis()[i]] = std::max(0.0, t.rhs(i));
  LpCertificate cert;
  cert.point.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    cert.point[j] = sys.vars[j] == VarKind::Positive ? 1.0 + y[col_of[j]]
                                                     : y[col_of[j]] - y[col_of[j] + 1];

  double margin = std::numeric_limits<double>::infinity();
  const RealVector gx = right_multiply(sys.g, cert.point);
  for (std::size_t i = 0; i < m; ++i)
    if (sys.rows[i] == RowKind::Strict) margin = std::min(margin, -gx[i]);
  for (std::size_t j = 0; j < n; ++j)
    if (sys.vars[j] == VarKind::Positive) margin = std::min(margin, cert.point[j]);
  cert.margin = std::isfinite(margin) ? margin : 1.0;

  if (!lp_validate(sys, cert, tol * (1.0 + norm_inf(cert.point)))) throw NumericalError("lp: solver point fails substitution");
  return cert;
}

std::optional<LpCertificate> lp_strict_feasible(const RealMatrix& g) {
  LpSystem sys{g, std::vector<RowKind>(g.rows(), RowKind::Strict),
               std::vector<VarKind>(g.cols(), VarKind::Positive)};
  if (g.rows() == 0) {
    if (!all_finite(g)) throw DomainError("lp: non-finite constraint coefficient");
    return LpCertificate{RealVector(g.cols(), 1.0), 1.0};
  }
  return lp_solve(sys);
}

bool lp_validate(const LpSystem& sys, const LpCertificate& cert, double tol) {
  if (cert.point.size() != sys.g.cols()) return false;
  if (!(cert.margin > 0.0)) return false;
  const RealVector gx = right_multiply(sys.g, cert.point);
  for (std::size_t i = 0; i < gx.size(); ++i) {
    switch (sys.rows[i]) {
      case RowKind::Strict:
        if (-gx[i] < cert.margin - tol) return false;
        break;
      case RowKind::NonStrict:
        if (gx[i] > tol) return false;
        break;
      case RowKind::Equal:
        if (std::abs(gx[i]) > tol) return false;
        break;
    }
  }
  for (std::size_t j = 0; j < cert.point.size(); ++j)
    if (sys.vars[j] == VarKind::Positive && cert.point[j] < cert.margin - tol) return false;
  return true;
}

}  // namespace msign
