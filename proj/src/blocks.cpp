#include "msign/blocks.hpp"

#include <string>

#include "msign/numeric.hpp"

namespace msign {

namespace {

using Key = std::pair<std::size_t, std::size_t>;

std::string key_name(const Key& k) {
  return "(" + std::to_string(k.first + 1) + "," + std::to_string(k.second + 1) + ")";
}

template <typename T, typename DiagCheck, typename NonNeg>
void validate_impl(const BlockSystem<T>& sys, DiagCheck diag_ok, NonNeg nonneg) {
  if (sys.diag.empty()) throw DomainError("block system has no diagonal blocks");
  for (std::size_t i = 0; i < sys.diag.size(); ++i) diag_ok(sys.diag[i], i);
  for (const auto& [k, cp] : sys.couplings) {
    const auto [i, j] = k;
    if (i >= sys.diag.size() || j >= sys.diag.size() || i == j)
      throw DomainError("coupling " + key_name(k) + " does not index an off-diagonal block");
    if (cp.b.rows() != sys.diag[i].rows() || cp.c.cols() != sys.diag[j].rows() ||
        cp.b.cols() != cp.c.rows())
      throw DomainError("coupling " + key_name(k) + " has inconsistent dimensions");
    if (!nonneg(cp.b) || !nonneg(cp.c))
      throw DomainError("coupling " + key_name(k) + " has a negative entry");
  }
}

template <typename T, typename Product>
Matrix<T> assemble_impl(const BlockSystem<T>& sys, Product product) {
  std::vector<std::size_t> off(sys.diag.size() + 1, 0);
  for (std::size_t i = 0; i < sys.diag.size(); ++i) off[i + 1] = off[i] + sys.diag[i].rows();
  Matrix<T> out(off.back(), off.back());
  auto place = [&](const Matrix<T>& blk, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < blk.rows(); ++r)
      for (std::size_t c = 0; c < blk.cols(); ++c) out(r0 + r, c0 + c) = blk(r, c);
  };
  for (std::size_t i = 0; i < sys.diag.size(); ++i) place(sys.diag[i], off[i], off[i]);
  for (const auto& [k, cp] : sys.couplings) place(product(cp.b, cp.c), off[k.first], off[k.second]);
  return out;
}

struct Layout {
  std::vector<std::size_t> v_off;
  std::map<Key, std::size_t> ell_off;
  std::size_t vars = 0;
};

Layout layout_of(const MultiplierProblem& p) {
  Layout l;
  for (const auto& a : p.a) {
    l.v_off.push_back(l.vars);
    l.vars += a.rows();
  }
  for (const auto& [k, cp] : p.couplings) {
    l.ell_off[k] = l.vars;
    l.vars += cp.b.cols();
  }
  return l;
}

LpSystem to_lp(const MultiplierProblem& p, const Layout& l) {
  for (const auto& a : p.a)
    if (!a.square()) throw DomainError("multiplier problem: diagonal block not square");
  for (const auto& [k, cp] : p.couplings) {
    if (k.first >= p.a.size() || k.second >= p.a.size() || k.first == k.second ||
        cp.b.rows() != p.a[k.first].rows() || cp.c.cols() != p.a[k.second].rows() ||
        cp.b.cols() != cp.c.rows())
      throw DomainError("multiplier problem: coupling " + key_name(k) + " is inconsistent");
  }
  std::size_t rows = 0;
  for (const auto& a : p.a) rows += a.cols();
  for (const auto& [k, cp] : p.couplings) rows += cp.b.cols();

  LpSystem sys;
  sys.g = RealMatrix(rows, l.vars);
  sys.vars.assign(l.vars, VarKind::Free);
  for (std::size_t i = 0; i < p.a.size(); ++i)
    for (std::size_t r = 0; r < p.a[i].rows(); ++r) sys.vars[l.v_off[i] + r] = VarKind::Positive;

  std::size_t row = 0;
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    const RealMatrix& a = p.a[i];
    for (std::size_t c = 0; c < a.cols(); ++c, ++row) {
      for (std::size_t r = 0; r < a.rows(); ++r) sys.g(row, l.v_off[i] + r) = a(r, c);
      for (const auto& [k, cp] : p.couplings) {
        if (k.second != i) continue;
        for (std::size_t q = 0; q < cp.c.rows(); ++q) sys.g(row, l.ell_off.at(k) + q) = cp.c(q, c);
      }
      sys.rows.push_back(RowKind::Strict);
    }
  }
  for (const auto& [k, cp] : p.couplings) {
    for (std::size_t q = 0; q < cp.b.cols(); ++q, ++row) {
      for (std::size_t r = 0; r < cp.b.rows(); ++r) sys.g(row, l.v_off[k.first] + r) = cp.b(r, q);
      sys.g(row, l.ell_off.at(k) + q) = -1.0;
      sys.rows.push_back(p.b_rows_strict ? RowKind::Strict : RowKind::NonStrict);
    }
  }
  return sys;
}

RealMatrix unit_real(const QualMatrix& a) { return to_real(unit_sign(a)); }

}  // namespace

void validate(const RealBlockSystem& sys) {
  validate_impl(
      sys,
      [](const RealMatrix& a, std::size_t i) {
        require_metzler(a, ("diagonal block " + std::to_string(i + 1)).c_str());
      },
      [](const RealMatrix& m) { return all_finite(m) && is_nonneg(m); });
}

void validate(const QualBlockSystem& sys) {
  validate_impl(
      sys,
      [](const QualMatrix& a, std::size_t i) {
        require_metzler(a, ("diagonal block " + std::to_string(i + 1)).c_str());
      },
      [](const QualMatrix& m) { return is_definite(m) && is_nonneg(m); });
}

RealMatrix assemble(const RealBlockSystem& sys) {
  validate(sys);
  return assemble_impl(sys, [](const RealMatrix& b, const RealMatrix& c) { return multiply(b, c); });
}

QualMatrix assemble(const QualBlockSystem& sys) {
  validate(sys);
  return assemble_impl(sys, [](const QualMatrix& b, const QualMatrix& c) { return qual_mul(b, c); });
}

std::optional<MultiplierCertificate> solve(const MultiplierProblem& p) {
  const Layout l = layout_of(p);
  const LpSystem sys = to_lp(p, l);
  auto lp = lp_solve(sys);
  if (!lp) return std::nullopt;
  MultiplierCertificate cert;
  cert.margin = lp->margin;
  cert.b_rows_strict = p.b_rows_strict;
  for (std::size_t i = 0; i < p.a.size(); ++i)
    cert.v.emplace_back(lp->point.begin() + static_cast<std::ptrdiff_t>(l.v_off[i]),
                        lp->point.begin() + static_cast<std::ptrdiff_t>(l.v_off[i] + p.a[i].rows()));
  for (const auto& [k, cp] : p.couplings) {
    const std::size_t o = l.ell_off.at(k);
    cert.ell[k] = RealVector(lp->point.begin() + static_cast<std::ptrdiff_t>(o),
                             lp->point.begin() + static_cast<std::ptrdiff_t>(o + cp.b.cols()));
  }
  return cert;
}

bool validate(const MultiplierProblem& p, const MultiplierCertificate& cert, double tol) {
  if (cert.v.size() != p.a.size() || cert.ell.size() != p.couplings.size()) return false;
  const Layout l = layout_of(p);
  const LpSystem sys = to_lp(p, l);
  LpCertificate flat{RealVector(l.vars, 0.0), cert.margin};
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    if (cert.v[i].size() != p.a[i].rows()) return false;
    std::copy(cert.v[i].begin(), cert.v[i].end(), flat.point.begin() + static_cast<std::ptrdiff_t>(l.v_off[i]));
  }
  for (const auto& [k, cp] : p.couplings) {
    auto it = cert.ell.find(k);
    if (it == cert.ell.end() || it->second.size() != cp.b.cols()) return false;
    std::copy(it->second.begin(), it->second.end(),
              flat.point.begin() + static_cast<std::ptrdiff_t>(l.ell_off.at(k)));
  }
  return lp_validate(sys, flat, tol);
}

std::optional<MultiplierCertificate> block_hurwitz(const RealBlockSystem& sys) {
  validate(sys);
  MultiplierProblem p{sys.diag, sys.couplings, false};
  return solve(p);
}

MultiplierProblem multiplier_problem(const QualBlockSystem& sys, BlockVariant variant) {
  validate(sys);
  MultiplierProblem p;
  p.b_rows_strict = true;
  for (const auto& a : sys.diag) p.a.push_back(unit_real(a));
  for (const auto& [k, cp] : sys.couplings) {
    if (variant == BlockVariant::ProductCoupling) {
      const std::size_t nj = sys.diag[k.second].rows();
      p.couplings[k] = {unit_real(qual_mul(cp.b, cp.c)), identity<double>(nj)};
    } else {
      p.couplings[k] = {unit_real(cp.b), unit_real(cp.c)};
    }
  }
  return p;
}

Verdict qc_product_equality(const QualMatrix& b, const QualMatrix& c) {
  if (b.cols() != c.rows()) throw DomainError("qc_product_equality: shape mismatch");
  if (!is_definite(b) || !is_definite(c) || !is_nonneg(b) || !is_nonneg(c))
    throw DomainError("qc_product_equality: factors must be nonnegative sign-matrices");
  auto nonzeros = [](std::span<const Sign> s) {
    return std::count_if(s.begin(), s.end(), [](Sign x) { return x != Sign::Zero; });
  };
  if (nonzeros(b.values()) <= 1 || nonzeros(c.values()) <= 1) return Verdict::Holds;
  const QualMatrix bt = transpose(b);
  for (std::size_t k = 0; k < bt.rows(); ++k)
    if (nonzeros(bt.row(k)) > 1) return Verdict::Unknown;
  for (std::size_t k = 0; k < c.rows(); ++k)
    if (nonzeros(c.row(k)) > 1) return Verdict::Unknown;
  return Verdict::Holds;
}

bool sgn_product_equality(const QualMatrix& b, const QualMatrix& c) {
  if (b.cols() != c.rows()) throw DomainError("sgn_product_equality: shape mismatch");
  if (!is_definite(b) || !is_definite(c) || !is_nonneg(b) || !is_nonneg(c))
    throw DomainError("sgn_product_equality: factors must be nonnegative sign-matrices");
  const IntMatrix prod = multiply(unit_sign(b), unit_sign(c));
  return std::all_of(prod.values().begin(), prod.values().end(),
                     [](std::int64_t x) { return x <= 1; });
}

BlockSignVerdict block_sign_stable(const QualBlockSystem& sys, BlockVariant variant) {
  const MultiplierProblem p = multiplier_problem(sys, variant);
  BlockSignVerdict out;
  out.hypotheses_hold = true;
  for (const auto& [k, cp] : sys.couplings) {
    if (qc_product_equality(cp.b, cp.c) != Verdict::Holds) out.hypotheses_hold = false;
    if (variant == BlockVariant::FactoredCoupling && !sgn_product_equality(cp.b, cp.c))
      out.hypotheses_hold = false;
  }
  out.certificate = solve(p);
  const bool feasible = out.certificate.has_value();
  if (out.hypotheses_hold) {
    out.assembled_sign_stable = sign_stable(assemble(sys)).verdict;
    if (*out.assembled_sign_stable != feasible)
      throw InconsistencyError(std::string("block_sign_stable: multiplier LP is ") +
                               (feasible ? "feasible" : "infeasible") +
                               " but the assembled matrix is " +
                               (*out.assembled_sign_stable ? "sign-stable" : "not sign-stable"));
    out.verdict = from_bool(feasible);
  } else {
    out.verdict = feasible ? Verdict::Holds : Verdict::Unknown;
  }
  return out;
}

}  // namespace msign
