#include "msign/mixed.hpp"

#include <cmath>
#include <limits>

#include "msign/kernel.hpp"
#include "msign/numeric.hpp"

namespace msign {

void validate(const MixedSystem& s) {
  require_metzler(s.sigma, "A_sigma");
  require_metzler(s.phi, "A_phi");
  const std::size_t ns = s.sigma.rows(), np = s.phi.rows();
  if (s.b_phi.rows() != np || s.b_phi.cols() != ns)
    throw DomainError("B_phi must be n_phi x n_sigma");
  if (s.c_phi.rows() != ns || s.c_phi.cols() != np)
    throw DomainError("C_phi must be n_sigma x n_phi");
  if (!all_finite(s.b_phi) || !all_finite(s.c_phi) || !is_nonneg(s.b_phi) || !is_nonneg(s.c_phi))
    throw DomainError("coupling blocks must be finite and nonnegative");
}

MixedMatrix assemble(const MixedSystem& s) {
  validate(s);
  const std::size_t ns = s.sigma.rows(), n = ns + s.phi.rows();
  MixedMatrix m(n, n, MixedEntry{0.0});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i < ns && j < ns)
        m(i, j) = s.sigma(i, j);
      else if (i < ns)
        m(i, j) = s.c_phi(i, j - ns);
      else if (j < ns)
        m(i, j) = s.b_phi(i - ns, j);
      else
        m(i, j) = s.phi(i - ns, j - ns);
    }
  return m;
}

std::size_t infer_sigma_size(const MixedMatrix& m) {
  if (!m.square()) throw DomainError("mixed matrix is not square");
  std::size_t k = 0;
  while (k < m.rows()) {
    bool signs = true;
    for (std::size_t t = 0; t <= k && signs; ++t)
      signs = is_sign_entry(m(k, t)) && is_sign_entry(m(t, k));
    if (!signs) break;
    ++k;
  }
  return k;
}

MixedSystem split_mixed(const MixedMatrix& m, std::size_t ns) {
  if (!m.square()) throw DomainError("mixed matrix is not square");
  if (ns > m.rows()) throw DomainError("n_sigma exceeds the matrix size");
  const std::size_t n = m.rows(), np = n - ns;
  MixedMatrix sig(ns, ns), phi(np, np), b(np, ns), c(ns, np);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const MixedEntry& e = m(i, j);
      if (i < ns && j < ns)
        sig(i, j) = e;
      else if (i < ns)
        c(i, j - ns) = e;
      else if (j < ns)
        b(i - ns, j) = e;
      else
        phi(i - ns, j - ns) = e;
    }
  MixedSystem s{to_qual(sig), to_real(phi), to_real(b), to_real(c)};
  validate(s);
  return s;
}

RealMatrix realize(const MixedSystem& s, const RealMatrix& sv) {
  validate(s);
  const std::size_t ns = s.sigma.rows(), n = ns + s.phi.rows();
  if (sv.rows() != ns || sv.cols() != ns) throw DomainError("realize: sigma block has wrong shape");
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i < ns && j < ns)
        m(i, j) = sv(i, j);
      else if (i < ns)
        m(i, j) = s.c_phi(i, j - ns);
      else if (j < ns)
        m(i, j) = s.b_phi(i - ns, j);
      else
        m(i, j) = s.phi(i - ns, j - ns);
    }
  return m;
}

RealMatrix m_phi(const MixedSystem& s) {
  validate(s);
  if (!hurwitz_metzler(s.phi).verdict) throw DomainError("m_phi: A_phi is not Hurwitz");
  return multiply(s.c_phi, multiply(real_inverse(s.phi), s.b_phi));
}

IntMatrix m_sigma(const MixedSystem& s) {
  validate(s);
  return unit_sign(sign_inverse(s.sigma));
}

namespace {

QualMatrix nonzero_pattern(const RealMatrix& m, double threshold) {
  return m.map([threshold](double x) { return std::abs(x) > threshold ? Sign::Pos : Sign::Zero; });
}

// Nonzero pattern of C (-A)^{-1} B. Every term is nonnegative, so an entry is
// nonzero exactly when some C(i,k) B(l,j) pair is joined by a path l -> k.
QualMatrix coupling_pattern(const MixedSystem& s) {
  const auto reach = reachability(digraph_of(s.phi));
  const std::size_t ns = s.sigma.rows(), np = s.phi.rows();
  QualMatrix out(ns, ns, Sign::Zero);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < ns; ++j)
      for (std::size_t k = 0; k < np && out(i, j) == Sign::Zero; ++k) {
        if (s.c_phi(i, k) == 0.0) continue;
        for (std::size_t l = 0; l < np; ++l)
          if (s.b_phi(l, j) != 0.0 && (k == l || reach[l][k])) {
            out(i, j) = Sign::Pos;
            break;
          }
      }
  return out;
}

}  // namespace

MixedVerdict mixed_sign_stable(const MixedSystem& s, const SignStabilityOptions& opt) {
  validate(s);
  MixedVerdict out;
  out.sigma_sign_stable = sign_stable(s.sigma, opt).verdict;
  out.phi_hurwitz = hurwitz_metzler(s.phi).verdict;
  if (!out.sigma_sign_stable || !out.phi_hurwitz) {
    out.by_nilpotency = false;
    if (opt.full_check) {
      out.by_bipartite = false;
      out.by_lp = false;
    }
    return out;
  }

  out.m_phi = m_phi(s);
  out.m_sigma = m_sigma(s);
  out.product = multiply(to_real(*out.m_sigma), *out.m_phi);
  for (double& x : out.product->values())
    if (x < 0.0) x = 0.0;
  out.rho = spectral_abscissa_metzler(*out.product);

  const QualMatrix phi_pat = coupling_pattern(s);
  const QualMatrix sig_pat = nonzero_pattern(to_real(*out.m_sigma), 0.5);
  out.product_pattern = qual_mul(sig_pat, phi_pat);
  out.sigma_pattern = sig_pat;
  out.phi_pattern = phi_pat;

  out.by_nilpotency = schur_sign_stable(*out.product_pattern, opt).verdict;

  if (opt.full_check) {
    const auto bip = bipartite_cycle_free(sig_pat, phi_pat);
    out.by_bipartite = bip.cycle_free;
    out.bipartite_cycle = bip.cycle;

    const std::size_t ns = s.sigma.rows(), np = s.phi.rows();
    RealMatrix z = to_real(unit_sign(qual_mul(phi_pat, sig_pat)));
    for (std::size_t i = 0; i < ns; ++i) z(i, i) -= 1.0;
    const RealMatrix us = to_real(unit_sign(s.sigma));
    LpSystem sys;
    sys.g = RealMatrix(2 * ns + np, 2 * ns + np);
    for (std::size_t i = 0; i < ns; ++i)
      for (std::size_t j = 0; j < ns; ++j) {
        sys.g(j, i) = us(i, j);
        sys.g(ns + np + j, ns + np + i) = z(i, j);
      }
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j) sys.g(ns + j, ns + i) = s.phi(i, j);
    sys.rows.assign(sys.g.rows(), RowKind::Strict);
    sys.vars.assign(sys.g.cols(), VarKind::Positive);
    out.lp = lp_solve(sys);
    out.by_lp = out.lp.has_value();

    if (*out.by_bipartite != *out.by_nilpotency || *out.by_lp != *out.by_nilpotency)
      throw InconsistencyError("mixed_sign_stable: equivalent statements disagree");
  }
  out.verdict = *out.by_nilpotency;
  return out;
}

RealMatrix mixed_instability_witness(const MixedSystem& s) {
  const MixedVerdict v = mixed_sign_stable(s);
  if (!v.sigma_sign_stable || !v.phi_hurwitz)
    throw DomainError("mixed_instability_witness: needs sign-stable A_sigma and Hurwitz A_phi");
  if (v.verdict) throw DomainError("mixed_instability_witness: system is sign-stable");
  double delta = 1.0;
  std::optional<RealMatrix> best;
  double best_abscissa = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 400; ++k, delta *= 0.5) {
    const RealMatrix sv = s.sigma.map([delta](Sign x) {
      return x == Sign::Pos ? 1.0 : (x == Sign::Neg ? -delta : 0.0);
    });
    RealMatrix m = realize(s, sv);
    const double abscissa = spectral_abscissa_metzler(m);
    if (abscissa >= 1e-6) return m;
    if (abscissa > best_abscissa) {
      best_abscissa = abscissa;
      best = std::move(m);
    }
  }
  if (best && best_abscissa >= -1e-9) return *best;
  throw NumericalError("mixed_instability_witness: diagonal search did not cross the axis");
}

}  // namespace msign
