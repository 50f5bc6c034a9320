#include "msign/qual.hpp"

#include <cmath>
#include <random>

namespace msign {

char to_char(Sign s) noexcept {
  switch (s) {
    case Sign::Neg: return '-';
    case Sign::Zero: return '0';
    case Sign::Pos: return '+';
    case Sign::Indef: return '?';
  }
  return '?';
}

QualMatrix qual_from_strings(std::initializer_list<std::string_view> rows) {
  std::vector<std::vector<Sign>> grid;
  for (auto r : rows) {
    std::vector<Sign> row;
    for (char c : r) {
      switch (c) {
        case '-': row.push_back(Sign::Neg); break;
        case '0': row.push_back(Sign::Zero); break;
        case '+': row.push_back(Sign::Pos); break;
        case '?': row.push_back(Sign::Indef); break;
        case ' ': break;
        default: throw DomainError(std::string("unknown sign character '") + c + "'");
      }
    }
    grid.push_back(std::move(row));
  }
  return QualMatrix::from_rows(grid);
}

std::string to_string(const QualMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) out += '/';
    for (Sign s : a.row(i)) out += to_char(s);
  }
  return out;
}

bool is_definite(const QualMatrix& a) {
  return std::none_of(a.values().begin(), a.values().end(),
                      [](Sign s) { return s == Sign::Indef; });
}

bool is_metzler(const QualMatrix& a) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) != Sign::Zero && a(i, j) != Sign::Pos) return false;
  return true;
}

bool is_nonneg(const QualMatrix& a) {
  return std::all_of(a.values().begin(), a.values().end(),
                     [](Sign s) { return s == Sign::Zero || s == Sign::Pos; });
}

void require_square(const QualMatrix& a, const char* what) {
  if (!a.square())
    throw DomainError(std::string(what) + ": matrix is not square (" + std::to_string(a.rows()) +
                      "x" + std::to_string(a.cols()) + ")");
}

void require_definite(const QualMatrix& a, const char* what) {
  if (!is_definite(a)) throw DomainError(std::string(what) + ": indefinite entry present");
}

void require_metzler(const QualMatrix& a, const char* what) {
  require_square(a, what);
  require_definite(a, what);
  if (!is_metzler(a)) throw DomainError(std::string(what) + ": not Metzler");
}

QualMatrix qual_add(const QualMatrix& a, const QualMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError("qual_add: shape mismatch");
  QualMatrix c(a.rows(), a.cols());
  for (std::size_t k = 0; k < c.values().size(); ++k)
    c.values()[k] = sign_add(a.values()[k], b.values()[k]);
  return c;
}

QualMatrix qual_mul(const QualMatrix& a, const QualMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("qual_mul: shape mismatch");
  QualMatrix c(a.rows(), b.cols(), Sign::Zero);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Sign acc = Sign::Zero;
      for (std::size_t k = 0; k < a.cols(); ++k) acc = sign_add(acc, sign_mul(a(i, k), b(k, j)));
      c(i, j) = acc;
    }
  return c;
}

QualMatrix sign_pattern(const RealMatrix& m) {
  return m.map([](double x) { return sign_of(x); });
}

IntMatrix unit_sign(const QualMatrix& a) {
  require_definite(a, "unit_sign");
  return a.map([](Sign s) { return static_cast<std::int64_t>(s); });
}

bool in_qualitative_class(const RealMatrix& m, const QualMatrix& a) {
  if (m.rows() != a.rows() || m.cols() != a.cols())
    throw DomainError("in_qualitative_class: shape mismatch");
  require_definite(a, "in_qualitative_class");
  for (std::size_t k = 0; k < m.values().size(); ++k)
    if (sign_of(m.values()[k]) != a.values()[k]) return false;
  return true;
}

RealMatrix sample_qual(const QualMatrix& a, std::uint64_t seed, double scale) {
  require_definite(a, "sample_qual");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw DomainError("sample_qual: scale must be positive");
  const double lo = std::log(std::min(0.1 / scale, 10.0 * scale));
  const double hi = std::log(std::max(0.1 / scale, 10.0 * scale));
  // Raw engine output is fully specified by the standard, unlike the
  // distribution adaptors, so draws are identical across platforms.
  std::mt19937_64 gen(seed);
  RealMatrix m(a.rows(), a.cols());
  for (std::size_t k = 0; k < m.values().size(); ++k) {
    const Sign s = a.values()[k];
    if (s == Sign::Zero) continue;
    const double u = static_cast<double>(gen() >> 11) * 0x1p-53;
    const double mag = std::exp(lo + u * (hi - lo));
    m.values()[k] = s == Sign::Pos ? mag : -mag;
  }
  return m;
}

bool is_sign_entry(const MixedEntry& e) noexcept { return std::holds_alternative<Sign>(e); }

bool is_nonzero(const MixedEntry& e) noexcept {
  if (const Sign* s = std::get_if<Sign>(&e)) return *s != Sign::Zero;
  return std::get<double>(e) != 0.0;
}

QualMatrix to_qual(const MixedMatrix& m) {
  return m.map([](const MixedEntry& e) {
    if (const Sign* s = std::get_if<Sign>(&e)) return *s;
    if (std::get<double>(e) == 0.0) return Sign::Zero;
    throw DomainError("expected a sign entry, found a real number");
  });
}

RealMatrix to_real(const MixedMatrix& m) {
  return m.map([](const MixedEntry& e) {
    if (const double* x = std::get_if<double>(&e)) return *x;
    if (std::get<Sign>(e) == Sign::Zero) return 0.0;
    throw DomainError("expected a real entry, found a sign");
  });
}

MixedMatrix to_mixed(const QualMatrix& a) {
  return a.map([](Sign s) { return MixedEntry{s}; });
}

MixedMatrix to_mixed(const RealMatrix& a) {
  return a.map([](double x) { return MixedEntry{x}; });
}

}  // namespace msign
