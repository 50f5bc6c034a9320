#pragma once

// Dense kernels for real Metzler matrices.

#include <optional>

#include "msign/lp.hpp"
#include "msign/matrix.hpp"

namespace msign {

/// Gaussian elimination with partial pivoting. Throws NumericalError when a
/// pivot falls below 1e-12 * ||A||_inf or the residual ||A X - I||_inf exceeds 1e-8 * n.
RealMatrix real_inverse(const RealMatrix& a);

/// Same as real_inverse, reporting nullopt instead of throwing on singularity.
std::optional<RealMatrix> try_real_inverse(const RealMatrix& a);

/// Largest real eigenvalue of a Metzler matrix, found by bisection on the
/// M-matrix test for t I - A. Requires n <= 200.
double spectral_abscissa_metzler(const RealMatrix& a);

struct HurwitzReport {
  bool verdict = false;
  /// v > 0 with v^T A < 0 when the verdict holds.
  std::optional<LpCertificate> lyapunov;
  /// A^{-1} when A is nonsingular.
  std::optional<RealMatrix> inverse;
  bool inverse_nonpositive = false;
  double abscissa_estimate = 0.0;
};

/// Hurwitz test for a Metzler matrix by two independent routes (Lyapunov LP and
/// inverse sign). Throws InconsistencyError if they disagree.
HurwitzReport hurwitz_metzler(const RealMatrix& a);

/// Decides Hurwitz stability of M through the Schur complement of the leading
/// n1 x n1 block. Throws DomainError unless that block is Hurwitz.
bool schur_split_hurwitz(const RealMatrix& m, std::size_t n1);

/// True iff the symmetric matrix s is positive definite.
bool cholesky_positive_definite(const RealMatrix& s);

/// Numerical rank by elimination with full pivoting.
std::size_t numeric_rank(const RealMatrix& a, double rel_tol);

/// Copy of rows [r0, r0+nr) and columns [c0, c0+nc).
RealMatrix submatrix(const RealMatrix& a, std::size_t r0, std::size_t c0, std::size_t nr,
                     std::size_t nc);

void require_metzler(const RealMatrix& a, const char* what);

}  // namespace msign
