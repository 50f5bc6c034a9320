#pragma once

// Sign inverses, sign-qualitative expansion, L+ matrices and
// Ker+(B)-sign-stability.

#include <cstdint>
#include <optional>
#include <vector>

#include "msign/lp.hpp"
#include "msign/qual.hpp"

namespace msign {

/// Sign pattern shared by the inverses of all members of Q(A), for a
/// sign-stable A. Throws DomainError otherwise.
QualMatrix sign_inverse(const QualMatrix& a);

/// All definite matrices obtained by replacing each indefinite entry by
/// -, 0 or +, in odometer order over row-major indefinite positions.
std::vector<QualMatrix> sq_expand(const QualMatrix& a, std::size_t cap = 12);

std::size_t indefinite_count(const QualMatrix& a);

struct LplusResult {
  bool holds = false;
  /// Diagonal of the first scaling D with no nonzero nonnegative column in D R.
  std::optional<std::vector<int>> failing_d;
  std::uint64_t checked = 0;
};

LplusResult is_lplus(const QualMatrix& r, std::size_t cap = 16);

/// Sign of B^T A^{-T} by collecting the sign of every contribution
/// B_ki [A^{-1}]_jk. Mixed contributions give an indefinite entry.
QualMatrix signs_of_real_times_signinv(const RealMatrix& b, const QualMatrix& ainv);

/// (3^l - 1) * 3^p.
std::uint64_t lplus_complexity_estimate(std::size_t ell, std::size_t indefinite);

/// Member R' of Q(R) whose kernel contains no positive vector, built from a
/// failing scaling D: y = -D 1 satisfies y^T R' >= 0 and y^T R' != 0.
struct LplusCounterexample {
  RealMatrix r;
  RealVector y;
};
LplusCounterexample lplus_counterexample(const QualMatrix& r, const std::vector<int>& d);

/// Feasibility of {R v = 0, v >= 1}.
std::optional<LpCertificate> positive_kernel_vector(const RealMatrix& r);

enum class KerBStatus { SufficientYes, Unknown };
const char* to_string(KerBStatus s) noexcept;

struct KerBOptions {
  std::size_t cap_sq = 12;
  std::size_t cap_lplus = 16;
  /// Number of Q(A) samples for which a certificate is produced.
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double scale = 1.0;
};

struct KerBCertificate {
  RealMatrix a;  // sampled member of Q(A)
  RealVector v;
  double decay = 0.0;     // min_j -(v^T A)_j
  double residual = 0.0;  // ||v^T B||_inf
  bool valid = false;
};

struct KerBVerdict {
  KerBStatus status = KerBStatus::Unknown;
  QualMatrix y;
  std::vector<std::pair<std::size_t, std::size_t>> indefinite_positions;
  std::vector<QualMatrix> members;
  std::vector<LplusResult> member_results;
  std::size_t checked_count = 0;
  std::vector<KerBCertificate> certificates;
};

KerBVerdict ker_b_sign_stable(const QualMatrix& a, const RealMatrix& b, const KerBOptions& opt = {});

/// Certificate for one realization: v = -A^{-T} w with w from
/// {(A^{-1} B)^T w = 0, w >= 1}. Absent if that LP is infeasible.
std::optional<KerBCertificate> ker_b_certificate(const RealMatrix& a, const RealMatrix& b);

}  // namespace msign
