#pragma once

// Sign algebra and qualitative matrix classes.

#include <cstdint>
#include <string>
#include <variant>

#include "msign/matrix.hpp"

namespace msign {

/// Entry of a (possibly indefinite) sign-matrix. Definite values are ordered
/// Neg < Zero < Pos through their underlying integers; Indef is unordered.
enum class Sign : std::int8_t { Neg = -1, Zero = 0, Pos = 1, Indef = 2 };

constexpr bool is_definite(Sign s) noexcept { return s != Sign::Indef; }

/// Sum of two sign entries. Pos + Neg is Indef, Zero is the identity.
constexpr Sign sign_add(Sign a, Sign b) noexcept {
  if (a == Sign::Zero) return b;
  if (b == Sign::Zero) return a;
  if (a == b) return a;
  return Sign::Indef;
}

/// Product of two sign entries. Zero annihilates, including Zero * Indef.
constexpr Sign sign_mul(Sign a, Sign b) noexcept {
  if (a == Sign::Zero || b == Sign::Zero) return Sign::Zero;
  if (a == Sign::Indef || b == Sign::Indef) return Sign::Indef;
  return a == b ? Sign::Pos : Sign::Neg;
}

constexpr Sign sign_of(double x) noexcept {
  return x > 0.0 ? Sign::Pos : (x < 0.0 ? Sign::Neg : Sign::Zero);
}

constexpr Sign negate(Sign s) noexcept {
  switch (s) {
    case Sign::Neg: return Sign::Pos;
    case Sign::Pos: return Sign::Neg;
    default: return s;
  }
}

/// ASCII token used by the matrix file format: '-', '0', '+', '?'.
char to_char(Sign s) noexcept;

using QualMatrix = Matrix<Sign>;

/// Builds a sign-matrix from rows of ASCII tokens, e.g. {"-+", "0-"}.
QualMatrix qual_from_strings(std::initializer_list<std::string_view> rows);
std::string to_string(const QualMatrix& a);

bool is_definite(const QualMatrix& a);
bool is_metzler(const QualMatrix& a);
bool is_nonneg(const QualMatrix& a);

QualMatrix qual_add(const QualMatrix& a, const QualMatrix& b);
QualMatrix qual_mul(const QualMatrix& a, const QualMatrix& b);

/// Sign pattern of a real matrix.
QualMatrix sign_pattern(const RealMatrix& m);

/// The {-1,0,1} representative of a definite sign-matrix.
IntMatrix unit_sign(const QualMatrix& a);

bool in_qualitative_class(const RealMatrix& m, const QualMatrix& a);

/// Deterministic draw from Q(A). Nonzero magnitudes are log-uniform in
/// [0.1/scale, 10*scale].
RealMatrix sample_qual(const QualMatrix& a, std::uint64_t seed, double scale = 1.0);

/// Per-sample seed used by every Monte-Carlo routine.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return seed ^ index;
}

void require_square(const QualMatrix& a, const char* what);
void require_definite(const QualMatrix& a, const char* what);
void require_metzler(const QualMatrix& a, const char* what);

/// Entry of a matrix mixing sign and real entries.
using MixedEntry = std::variant<Sign, double>;
using MixedMatrix = Matrix<MixedEntry>;

bool is_sign_entry(const MixedEntry& e) noexcept;
/// True when the entry is nonzero under every realization convention used by D_A.
bool is_nonzero(const MixedEntry& e) noexcept;

/// Sign part of a mixed matrix; real entries are rejected unless exactly zero.
QualMatrix to_qual(const MixedMatrix& m);
/// Real part of a mixed matrix; the sign token 0 is accepted as 0.0.
RealMatrix to_real(const MixedMatrix& m);
MixedMatrix to_mixed(const QualMatrix& a);
MixedMatrix to_mixed(const RealMatrix& a);

}  // namespace msign
