#pragma once

#include <optional>
#include <vector>

#include "msign/graph.hpp"
#include "msign/lp.hpp"
#include "msign/qual.hpp"

namespace msign {

struct SignStabilityOptions {
  /// Compute every equivalent statement and require agreement. When false only
  /// the graph statement is evaluated.
  bool full_check = false;
};

struct SignStabilityVerdict {
  bool verdict = false;

  // Per-statement results; absent when the statement was not evaluated.
  std::optional<bool> by_lp;
  std::optional<bool> by_graph;
  std::optional<bool> by_permutation;

  std::optional<LpCertificate> lyapunov;
  std::optional<std::vector<std::size_t>> permutation;

  /// First diagonal index violating the diagonal condition.
  std::optional<std::size_t> bad_diagonal;
  std::optional<CycleWitness> cycle;
};

/// Sign-stability of a definite Metzler sign-matrix. Throws DomainError for
/// non-Metzler or indefinite input and InconsistencyError if the evaluated
/// statements disagree.
SignStabilityVerdict sign_stable(const QualMatrix& a, const SignStabilityOptions& opt = {});

struct PotentialStability {
  bool holds = false;
  /// Hurwitz member of Q(A): -1 on the diagonal, epsilon on positive slots.
  std::optional<RealMatrix> witness;
  double epsilon = 0.0;
};

PotentialStability potentially_sign_stable(const QualMatrix& a);

struct Violation {
  enum class Kind { NonnegativeDiagonal, MutualPositivePair, Cycle, Irreducible };
  Kind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  CycleWitness cycle;
};

const char* to_string(Violation::Kind k) noexcept;

/// Necessary conditions for sign-stability that fail. A nonempty list refutes
/// sign-stability; an empty one proves nothing.
std::vector<Violation> necessary_violations(const QualMatrix& a);

/// Schur-type sign-stability of a nonnegative sign-matrix: every member has
/// spectral radius below one.
SignStabilityVerdict schur_sign_stable(const QualMatrix& a, const SignStabilityOptions& opt = {});

/// Member of Q(A) with the largest spectral abscissa the construction can
/// reach. Throws DomainError when A is sign-stable.
RealMatrix instability_witness(const QualMatrix& a);

}  // namespace msign
