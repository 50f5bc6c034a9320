#pragma once

// Feasibility of homogeneous linear inequality systems by phase-1 simplex.

#include <optional>
#include <vector>

#include "msign/matrix.hpp"

namespace msign {

enum class RowKind { Strict, NonStrict, Equal };
enum class VarKind { Positive, Free };

/// Rows of g act on x. Strict rows read (g x)_i <= -1, non-strict (g x)_i <= 0,
/// equality rows (g x)_i = 0. Positive variables satisfy x_j >= 1.
struct LpSystem {
  RealMatrix g;
  std::vector<RowKind> rows;
  std::vector<VarKind> vars;
};

struct LpCertificate {
  RealVector point;
  /// Smallest slack over strict rows and positive variables.
  double margin = 0.0;
};

/// Returns a feasible point or nullopt. Throws DomainError on non-finite or
/// inconsistent input and NumericalError when the pivoting breaks down.
std::optional<LpCertificate> lp_solve(const LpSystem& sys);

/// x >= 1 with g x <= -1.
std::optional<LpCertificate> lp_strict_feasible(const RealMatrix& g);

/// Substitution check. Strict rows and positive variables need slack at least
/// margin - tol, non-strict rows slack >= -tol, equality rows |residual| <= tol.
bool lp_validate(const LpSystem& sys, const LpCertificate& cert, double tol);

/// Tolerance used internally to accept solver output.
double lp_tolerance(const LpSystem& sys);

}  // namespace msign
