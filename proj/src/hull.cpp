#include "msign/hull.hpp"

#include <string>

#include "msign/numeric.hpp"

namespace msign {

namespace {

void check_family(const Family& f) {
  if (f.empty()) throw DomainError("family is empty");
  for (const auto& a : f) {
    require_metzler(a, "family member");
    if (a.rows() != f.front().rows()) throw DomainError("family members differ in size");
  }
}

std::vector<std::size_t> common_triangular_order(const std::vector<RealMatrix>& samples) {
  if (samples.empty()) throw DomainError("no samples given");
  const std::size_t n = samples.front().rows();
  RealMatrix pattern(n, n);
  for (const auto& s : samples) {
    require_metzler(s, "sample");
    if (s.rows() != n) throw DomainError("samples differ in size");
    for (std::size_t k = 0; k < s.values().size(); ++k)
      if (s.values()[k] != 0.0) pattern.values()[k] = 1.0;
  }
  const Digraph g = digraph_of(pattern);
  if (find_cycle(g)) throw DomainError("samples are not simultaneously triangularizable");
  auto perm = topo_permutation(g);
  for (const auto& s : samples)
    for (std::size_t i = 0; i < n; ++i)
      if (!(s(i, i) < 0.0)) throw DomainError("sample has a non-negative diagonal entry");
  return perm;
}

}  // namespace

Summability sign_summable(const Family& f) {
  check_family(f);
  Summability out;
  for (std::size_t j = 0; j < f.front().rows(); ++j) {
    Sign seen = Sign::Zero;
    for (const auto& a : f) {
      if (a(j, j) == Sign::Zero) continue;
      if (seen == Sign::Zero) {
        seen = a(j, j);
      } else if (seen != a(j, j)) {
        out.summable = false;
        out.conflict = j;
        return out;
      }
    }
  }
  return out;
}

HullVerdict hull_sign_stable(const Family& f, const HullOptions& opt) {
  HullVerdict out;
  out.summability = sign_summable(f);
  if (!out.summability.summable) return out;

  QualMatrix sum = f.front();
  for (std::size_t i = 1; i < f.size(); ++i) sum = qual_add(sum, f[i]);
  out.sum = sum;
  out.sum_verdict = sign_stable(sum, {opt.full_check});

  out.diagonals_negative = true;
  for (std::size_t i = 0; i < f.size() && out.diagonals_negative; ++i)
    for (std::size_t j = 0; j < f[i].rows(); ++j)
      if (f[i](j, j) != Sign::Neg) {
        out.diagonals_negative = false;
        out.bad_diagonal = {{i, j}};
        break;
      }
  const bool by_c = out.diagonals_negative && out.sum_verdict->verdict;

  if (opt.full_check) {
    if (f.size() > 16) throw DomainError("hull_sign_stable: subset enumeration limited to 16 members");
    bool all = true;
    const std::uint32_t count = 1u << f.size();
    for (std::uint32_t mask = 1; mask < count && all; ++mask) {
      std::optional<QualMatrix> s;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask & (1u << i)) s = s ? qual_add(*s, f[i]) : f[i];
      if (!sign_stable(*s).verdict) {
        all = false;
        out.failing_subset = mask;
      }
    }
    out.by_subsets = all;
    if (all != by_c)
      throw InconsistencyError("hull_sign_stable: subset enumeration disagrees with the sum test");
  }
  out.verdict = from_bool(by_c);
  return out;
}

RealVector common_linear_lyapunov(const std::vector<RealMatrix>& samples) {
  const auto perm = common_triangular_order(samples);
  const std::size_t n = perm.size();
  RealVector v(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double need = 0.0;
    for (const auto& s : samples) {
      double acc = 0.0;
      for (std::size_t i = 0; i < j; ++i) acc += v[i] * s(perm[i], perm[j]);
      need = std::max(need, acc / -s(perm[j], perm[j]));
    }
    v[j] = 2.0 * need + 1.0;
  }
  RealVector out(n);
  for (std::size_t k = 0; k < n; ++k) out[perm[k]] = v[k];
  return out;
}

bool validates_linear(const RealVector& v, const RealMatrix& a) {
  if (v.size() != a.rows()) return false;
  for (double x : v)
    if (!(x > 0.0)) return false;
  const RealVector r = left_multiply(v, a);
  return std::all_of(r.begin(), r.end(), [](double x) { return x < 0.0; });
}

namespace {

RealMatrix neg_lyap(const RealMatrix& a, std::span<const double> q, std::size_t k) {
  RealMatrix s(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) s(i, j) = -(a(j, i) * q[j] + q[i] * a(i, j));
  return s;
}

}  // namespace

RealVector common_quadratic_lyapunov(const std::vector<RealMatrix>& samples) {
  const auto perm = common_triangular_order(samples);
  const std::size_t n = perm.size();
  std::vector<RealMatrix> tri;
  for (const auto& s : samples) tri.push_back(permute_symmetric<double>(s, perm));
  RealVector q(n, 1.0);
  for (std::size_t k = 1; k < n; ++k) {
    q[k] = q[k - 1];
    int doublings = 0;
    auto ok = [&] {
      return std::all_of(tri.begin(), tri.end(), [&](const RealMatrix& t) {
        return cholesky_positive_definite(neg_lyap(t, q, k + 1));
      });
    };
    while (!ok()) {
      if (++doublings > 100) throw NumericalError("common_quadratic_lyapunov: scaling exceeded 2^100");
      q[k] *= 2.0;
    }
  }
  RealVector out(n);
  for (std::size_t k = 0; k < n; ++k) out[perm[k]] = q[k];
  return out;
}

bool validates_quadratic(const RealVector& q, const RealMatrix& a) {
  if (q.size() != a.rows()) return false;
  for (double x : q)
    if (!(x > 0.0)) return false;
  return cholesky_positive_definite(neg_lyap(a, q, a.rows()));
}

}  // namespace msign
