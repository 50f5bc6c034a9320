#pragma once

// Structural stability tests for delay, switched, impulsive, nonlinear
// positive systems and reaction networks, expressed through the core deciders.

#include <optional>
#include <vector>

#include "msign/hull.hpp"
#include "msign/kernel.hpp"
#include "msign/signstab.hpp"
#include "msign/verdict.hpp"

namespace msign {

struct SamplingOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  double scale = 1.0;
  bool full_check = false;
};

struct DelayVerdict {
  Verdict verdict = Verdict::Fails;
  Summability summability;
  std::optional<QualMatrix> sum;
  std::optional<SignStabilityVerdict> sum_verdict;
};

/// x' = M0 x + sum_i Mi x(t - h_i) for all delays.
DelayVerdict delay_ct_structural(const QualMatrix& m0, const std::vector<QualMatrix>& delayed,
                                 const SignStabilityOptions& opt = {});

/// x(k+1) = sum_i Mi x(k - h_i) for all delays.
DelayVerdict delay_dt_structural(const std::vector<QualMatrix>& terms,
                                 const SignStabilityOptions& opt = {});

struct SwitchedCertificate {
  std::vector<RealMatrix> modes;
  RealVector v;
  RealVector q;
  bool valid = false;
};

struct SwitchedVerdict {
  HullVerdict hull;
  std::vector<SwitchedCertificate> certificates;
};

/// Stability under arbitrary switching among the given mode patterns. Common
/// Lyapunov functions are built and checked for opt.samples mode tuples.
SwitchedVerdict switched_structural(const std::vector<QualMatrix>& modes,
                                    const SamplingOptions& opt = {});

struct ImpulsiveCertificate {
  RealMatrix a;
  RealMatrix j;
  RealVector lambda;
  bool valid = false;
};

struct ImpulsiveVerdict {
  Verdict verdict = Verdict::Fails;
  bool flow_diagonal_negative = false;
  bool jump_diagonal_zero = false;
  std::optional<SignStabilityVerdict> sum_verdict;
  std::vector<ImpulsiveCertificate> certificates;
};

/// x' = A x between jumps, x(t+) = J x(t) at jumps, with A in Q(MA), J in Q(MJ).
ImpulsiveVerdict impulsive_structural(const QualMatrix& ma, const QualMatrix& mj,
                                      const SamplingOptions& opt = {});

struct KernelCertificate {
  RealMatrix a;
  RealVector v;
  /// Largest epsilon with v^T A <= -epsilon v^T.
  double epsilon = 0.0;
  double residual = 0.0;
  bool valid = false;
};

struct StructuralKernelVerdict {
  Verdict verdict = Verdict::Unknown;
  bool sign_stable = false;
  std::optional<QualMatrix> y;
  std::vector<std::pair<std::size_t, std::size_t>> indefinite_positions;
  std::optional<LplusResult> lplus;
  std::vector<KernelCertificate> certificates;
  /// Reaction networks only: irreducibility as declared by the caller.
  std::optional<bool> irreducible_declared;
};

/// Forward invariance and attractivity of the positive kernel set of B^T for
/// x' = M x + B u(x).
StructuralKernelVerdict nonlinear_invariance_structural(const QualMatrix& m, const IntMatrix& b,
                                                        const SamplingOptions& opt = {});

struct ReactionNetworkSigns {
  QualMatrix z;    // pattern of S_u W
  IntMatrix s_b;   // bimolecular stoichiometry, n x l
};

StructuralKernelVerdict ergodicity_structural(const ReactionNetworkSigns& net, bool irreducible,
                                              const SamplingOptions& opt = {});

}  // namespace msign
