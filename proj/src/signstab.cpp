#include "msign/signstab.hpp"

#include <string>

#include "msign/numeric.hpp"

namespace msign {

namespace {

std::optional<std::size_t> first_diagonal_not(const QualMatrix& a, Sign wanted) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (a(i, i) != wanted) return i;
  return std::nullopt;
}

bool triangular_with_diagonal(const QualMatrix& p, Sign diag) {
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (p(i, i) != diag) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (p(i, j) != Sign::Zero) return false;
  }
  return true;
}

// Shared driver for the Hurwitz and Schur variants; they differ only in the
// required diagonal sign and the matrix fed to the Lyapunov LP.
SignStabilityVerdict decide(const QualMatrix& a, Sign diag, const RealMatrix& lp_matrix,
                            const SignStabilityOptions& opt, const char* what) {
  SignStabilityVerdict v;
  const Digraph g = digraph_of(a);
  v.bad_diagonal = first_diagonal_not(a, diag);
  v.cycle = find_cycle(g);
  v.by_graph = !v.bad_diagonal && !v.cycle;

  if (opt.full_check) {
    v.lyapunov = lp_strict_feasible(transpose(lp_matrix));
    v.by_lp = v.lyapunov.has_value();

    bool perm_ok = false;
    if (!v.cycle) {
      auto perm = topo_permutation(g);
      perm_ok = triangular_with_diagonal(permute_symmetric<Sign>(a, perm), diag);
      if (perm_ok) v.permutation = std::move(perm);
    }
    v.by_permutation = perm_ok;

    if (*v.by_lp != *v.by_graph || *v.by_permutation != *v.by_graph)
      throw InconsistencyError(std::string(what) + ": statements disagree (lp=" +
                               (*v.by_lp ? "true" : "false") + ", graph=" +
                               (*v.by_graph ? "true" : "false") + ", permutation=" +
                               (*v.by_permutation ? "true" : "false") + ")");
  } else if (*v.by_graph) {
    v.permutation = topo_permutation(g);
  }
  v.verdict = *v.by_graph;
  return v;
}

}  // namespace

SignStabilityVerdict sign_stable(const QualMatrix& a, const SignStabilityOptions& opt) {
  require_metzler(a, "sign_stable");
  return decide(a, Sign::Neg, to_real(unit_sign(a)), opt, "sign_stable");
}

SignStabilityVerdict schur_sign_stable(const QualMatrix& a, const SignStabilityOptions& opt) {
  require_square(a, "schur_sign_stable");
  require_definite(a, "schur_sign_stable");
  if (!is_nonneg(a)) throw DomainError("schur_sign_stable: negative entry present");
  RealMatrix shifted = to_real(unit_sign(a));
  for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= 1.0;
  return decide(a, Sign::Zero, shifted, opt, "schur_sign_stable");
}

PotentialStability potentially_sign_stable(const QualMatrix& a) {
  require_metzler(a, "potentially_sign_stable");
  PotentialStability out;
  if (first_diagonal_not(a, Sign::Neg)) return out;
  const std::size_t n = a.rows();
  double eps = 1.0;
  for (int k = 0; k < 64; ++k, eps *= 0.5) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = i == j ? -1.0 : (a(i, j) == Sign::Pos ? eps : 0.0);
    if (hurwitz_metzler(m).verdict) {
      out.holds = true;
      out.witness = std::move(m);
      out.epsilon = eps;
      return out;
    }
  }
  throw NumericalError("potentially_sign_stable: no Hurwitz member found by halving");
}

const char* to_string(Violation::Kind k) noexcept {
  switch (k) {
    case Violation::Kind::NonnegativeDiagonal: return "nonnegative_diagonal";
    case Violation::Kind::MutualPositivePair: return "mutual_positive_pair";
    case Violation::Kind::Cycle: return "cycle";
    case Violation::Kind::Irreducible: return "irreducible";
  }
  return "unknown";
}

std::vector<Violation> necessary_violations(const QualMatrix& a) {
  require_metzler(a, "necessary_violations");
  std::vector<Violation> out;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (a(i, i) != Sign::Neg) out.push_back({Violation::Kind::NonnegativeDiagonal, i, i, {}});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a(i, j) == Sign::Pos && a(j, i) == Sign::Pos)
        out.push_back({Violation::Kind::MutualPositivePair, i, j, {}});
  const Digraph g = digraph_of(a);
  if (auto c = find_cycle(g)) out.push_back({Violation::Kind::Cycle, 0, 0, *c});
  if (n >= 2 && strongly_connected(g)) out.push_back({Violation::Kind::Irreducible, 0, 0, {}});
  return out;
}

RealMatrix instability_witness(const QualMatrix& a) {
  require_metzler(a, "instability_witness");
  const Digraph g = digraph_of(a);
  const auto cycle = find_cycle(g);
  const auto bad = first_diagonal_not(a, Sign::Neg);
  if (!bad && !cycle) throw DomainError("instability_witness: matrix is sign-stable");

  constexpr double tiny = 1e-3;
  auto value = [](Sign s, double pos, double neg) {
    return s == Sign::Pos ? pos : (s == Sign::Neg ? neg : 0.0);
  };

  if (bad && a(*bad, *bad) == Sign::Pos) {
    return a.map([&](Sign s) { return value(s, tiny, -1.0); });
  }
  if (cycle) {
    RealMatrix m = a.map([&](Sign s) { return value(s, tiny, -1.0); });
    for (std::size_t k = 0; k + 1 < cycle->size(); ++k) m((*cycle)[k + 1], (*cycle)[k]) = 1.0;
    const std::size_t r = (*cycle)[1], c = (*cycle)[0];
    for (double t = 1.0; t < 1e300; t *= 2.0) {
      m(r, c) = t;
      if (spectral_abscissa_metzler(m) >= 1e-6) return m;
    }
    throw NumericalError("instability_witness: cycle gain search diverged");
  }
  // Zero diagonal entry, no cycle and no positive diagonal: every member is
  // triangularizable with a zero eigenvalue, so abscissa 0 is the best possible.
  return a.map([&](Sign s) { return value(s, tiny, -1.0); });
}

}  // namespace msign
