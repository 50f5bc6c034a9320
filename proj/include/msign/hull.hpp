#pragma once

// Convex hulls of Metzler sign-matrices and common Lyapunov functions.

#include <optional>
#include <vector>

#include "msign/signstab.hpp"
#include "msign/verdict.hpp"

namespace msign {

using Family = std::vector<QualMatrix>;

struct Summability {
  bool summable = true;
  /// Diagonal position whose nonzero entries disagree in sign.
  std::optional<std::size_t> conflict;
};

Summability sign_summable(const Family& f);

struct HullOptions {
  /// Also evaluate the subset-sum statement; limited to 16 members.
  bool full_check = false;
};

struct HullVerdict {
  Verdict verdict = Verdict::Fails;
  Summability summability;
  bool diagonals_negative = false;
  /// Member and position of the first non-negative diagonal entry.
  std::optional<std::pair<std::size_t, std::size_t>> bad_diagonal;
  std::optional<QualMatrix> sum;
  std::optional<SignStabilityVerdict> sum_verdict;
  std::optional<bool> by_subsets;
  /// Bitmask of a subset whose sum is not sign-stable.
  std::optional<std::uint32_t> failing_subset;
};

HullVerdict hull_sign_stable(const Family& f, const HullOptions& opt = {});

/// Vector v > 0 with v^T A < 0 for every sample. Throws DomainError when the
/// samples are not simultaneously permutable to upper-triangular form with a
/// negative diagonal.
RealVector common_linear_lyapunov(const std::vector<RealMatrix>& samples);

/// Positive diagonal of Q with A^T Q + Q A negative definite for every sample.
/// Each q_k starts at q_{k-1} and doubles; more than 100 doublings throws.
RealVector common_quadratic_lyapunov(const std::vector<RealMatrix>& samples);

/// v^T A < 0 entrywise.
bool validates_linear(const RealVector& v, const RealMatrix& a);
/// -(A^T Q + Q A) passes Cholesky.
bool validates_quadratic(const RealVector& q, const RealMatrix& a);

}  // namespace msign
