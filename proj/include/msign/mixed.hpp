#pragma once

// Matrices [[A_sigma, C_phi], [B_phi, A_phi]] with a sign block A_sigma and
// real blocks elsewhere.

#include <optional>

#include "msign/graph.hpp"
#include "msign/lp.hpp"
#include "msign/qual.hpp"
#include "msign/signstab.hpp"

namespace msign {

struct MixedSystem {
  QualMatrix sigma;  // n_sigma x n_sigma, Metzler
  RealMatrix phi;    // n_phi x n_phi, Metzler
  RealMatrix b_phi;  // n_phi x n_sigma, nonnegative
  RealMatrix c_phi;  // n_sigma x n_phi, nonnegative
};

void validate(const MixedSystem& sys);

MixedMatrix assemble(const MixedSystem& sys);
/// Splits a square mixed matrix after the first n_sigma rows and columns.
MixedSystem split_mixed(const MixedMatrix& m, std::size_t n_sigma);
/// Largest leading block made only of sign tokens, used when n_sigma is not given.
std::size_t infer_sigma_size(const MixedMatrix& m);

/// Real matrix obtained by substituting a member of Q(A_sigma).
RealMatrix realize(const MixedSystem& sys, const RealMatrix& sigma_value);

/// C_phi A_phi^{-1} B_phi. Throws DomainError unless A_phi is Hurwitz.
RealMatrix m_phi(const MixedSystem& sys);
/// sgn(A_sigma^{-1}). Throws DomainError unless A_sigma is sign-stable.
IntMatrix m_sigma(const MixedSystem& sys);

struct MixedVerdict {
  bool verdict = false;
  bool sigma_sign_stable = false;
  bool phi_hurwitz = false;

  std::optional<bool> by_nilpotency;
  std::optional<bool> by_bipartite;
  std::optional<bool> by_lp;

  std::optional<RealMatrix> m_phi;
  std::optional<IntMatrix> m_sigma;
  /// M_sigma M_phi and its zero/nonzero pattern.
  std::optional<RealMatrix> product;
  std::optional<QualMatrix> product_pattern;
  /// Nonzero patterns of M_sigma and M_phi feeding the bipartite graph.
  std::optional<QualMatrix> sigma_pattern;
  std::optional<QualMatrix> phi_pattern;
  /// Spectral radius of M_sigma M_phi, diagnostic only.
  std::optional<double> rho;
  std::optional<CycleWitness> bipartite_cycle;
  std::optional<LpCertificate> lp;
};

MixedVerdict mixed_sign_stable(const MixedSystem& sys, const SignStabilityOptions& opt = {});

/// Realization obtained by shrinking the diagonal of A_sigma until the spectral
/// abscissa reaches 1e-6, or the best one found if that never happens (at
/// least -1e-9). Requires sign-stable A_sigma, Hurwitz A_phi and a mixed
/// matrix that is not sign-stable.
RealMatrix mixed_instability_witness(const MixedSystem& sys);

}  // namespace msign
