#pragma once

// Block-structured Metzler matrices with factored couplings B_ij C_ij.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "msign/lp.hpp"
#include "msign/qual.hpp"
#include "msign/signstab.hpp"
#include "msign/verdict.hpp"

namespace msign {

template <typename T>
struct Coupling {
  Matrix<T> b;  // n_i x n_ij
  Matrix<T> c;  // n_ij x n_j
};

template <typename T>
struct BlockSystem {
  std::vector<Matrix<T>> diag;
  /// Keyed by 0-based (i, j), i != j. Absent pairs are zero blocks.
  std::map<std::pair<std::size_t, std::size_t>, Coupling<T>> couplings;

  std::size_t block_count() const noexcept { return diag.size(); }
  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (const auto& a : diag) n += a.rows();
    return n;
  }
};

using RealBlockSystem = BlockSystem<double>;
using QualBlockSystem = BlockSystem<Sign>;

void validate(const RealBlockSystem& sys);
void validate(const QualBlockSystem& sys);

RealMatrix assemble(const RealBlockSystem& sys);
QualMatrix assemble(const QualBlockSystem& sys);

/// Joint multiplier inequalities over (v_i, l_ij):
///   v_i^T A_i + sum_j l_ji^T C_ji < 0
///   v_i^T B_ij - l_ij^T <= 0   (or < 0 when b_rows_strict)
/// with v_i > 0 and l_ij free.
struct MultiplierProblem {
  std::vector<RealMatrix> a;
  std::map<std::pair<std::size_t, std::size_t>, Coupling<double>> couplings;
  bool b_rows_strict = false;
};

struct MultiplierCertificate {
  std::vector<RealVector> v;
  std::map<std::pair<std::size_t, std::size_t>, RealVector> ell;
  double margin = 0.0;
  bool b_rows_strict = false;
};

std::optional<MultiplierCertificate> solve(const MultiplierProblem& p);

/// Substitution check: strict rows need slack >= margin, non-strict rows >= 0,
/// both up to tol; every v_i entry must be at least margin.
bool validate(const MultiplierProblem& p, const MultiplierCertificate& cert, double tol = 1e-9);

std::optional<MultiplierCertificate> block_hurwitz(const RealBlockSystem& sys);

enum class BlockVariant { ProductCoupling, FactoredCoupling };

/// Problem used by block_sign_stable for the given variant. ProductCoupling
/// couples through sgn(B C) with identity right factors; FactoredCoupling uses
/// sgn(B) and sgn(C) separately. All rows are strict in both.
MultiplierProblem multiplier_problem(const QualBlockSystem& sys, BlockVariant variant);

/// Holds under a sufficient structural condition for Q(BC) = Q(B)Q(C),
/// Unknown otherwise.
Verdict qc_product_equality(const QualMatrix& b, const QualMatrix& c);

/// Exact test of sgn(BC) = sgn(B) sgn(C).
bool sgn_product_equality(const QualMatrix& b, const QualMatrix& c);

struct BlockSignVerdict {
  Verdict verdict = Verdict::Unknown;
  bool hypotheses_hold = false;
  std::optional<MultiplierCertificate> certificate;
  /// sign_stable of the assembled matrix, evaluated when the hypotheses hold.
  std::optional<bool> assembled_sign_stable;
};

BlockSignVerdict block_sign_stable(const QualBlockSystem& sys, BlockVariant variant);

}  // namespace msign
