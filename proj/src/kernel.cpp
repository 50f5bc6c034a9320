#include "msign/kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "msign/graph.hpp"
#include "msign/numeric.hpp"
#include "msign/parallel.hpp"
#include "msign/signstab.hpp"

namespace msign {

QualMatrix sign_inverse(const QualMatrix& a) {
  if (!sign_stable(a).verdict) throw DomainError("sign_inverse: matrix is not sign-stable");
  const std::size_t n = a.rows();
  const auto reach = reachability(digraph_of(a));
  QualMatrix inv(n, n, Sign::Zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i == j || reach[j][i]) inv(i, j) = Sign::Neg;
  return inv;
}

std::size_t indefinite_count(const QualMatrix& a) {
  return static_cast<std::size_t>(
      std::count(a.values().begin(), a.values().end(), Sign::Indef));
}

std::vector<QualMatrix> sq_expand(const QualMatrix& a, std::size_t cap) {
  std::vector<std::size_t> slots;
  for (std::size_t k = 0; k < a.values().size(); ++k)
    if (a.values()[k] == Sign::Indef) slots.push_back(k);
  if (slots.size() > cap)
    throw DomainError("sq_expand: " + std::to_string(slots.size()) +
                      " indefinite entries exceed the cap of " + std::to_string(cap));
  constexpr Sign digits[3] = {Sign::Neg, Sign::Zero, Sign::Pos};
  std::vector<int> odo(slots.size(), 0);
  std::vector<QualMatrix> out;
  for (;;) {
    QualMatrix m = a;
    for (std::size_t s = 0; s < slots.size(); ++s) m.values()[slots[s]] = digits[odo[s]];
    out.push_back(std::move(m));
    std::size_t s = slots.size();
    while (s > 0 && ++odo[s - 1] == 3) odo[--s] = 0;
    if (s == 0) break;
  }
  return out;
}

namespace {

std::uint64_t pow3(std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= 3;
  return r;
}

std::vector<int> scaling_of(std::uint64_t index, std::size_t ell) {
  std::vector<int> d(ell);
  for (std::size_t r = 0; r < ell; ++r, index /= 3) {
    const int digit = static_cast<int>(index % 3);
    d[r] = digit == 2 ? -1 : digit;
  }
  return d;
}

bool has_good_column(const IntMatrix& u, const std::vector<int>& d) {
  for (std::size_t c = 0; c < u.cols(); ++c) {
    bool nonneg = true, nonzero = false;
    for (std::size_t r = 0; r < u.rows() && nonneg; ++r) {
      const std::int64_t x = d[r] * u(r, c);
      if (x < 0) nonneg = false;
      if (x > 0) nonzero = true;
    }
    if (nonneg && nonzero) return true;
  }
  return false;
}

}  // namespace

LplusResult is_lplus(const QualMatrix& r, std::size_t cap) {
  require_definite(r, "is_lplus");
  const std::size_t ell = r.rows();
  if (ell > cap)
    throw DomainError("is_lplus: " + std::to_string(ell) + " rows exceed the cap of " +
                      std::to_string(cap));
  LplusResult out;
  for (std::size_t i = 0; i < ell; ++i) {
    if (std::all_of(r.row(i).begin(), r.row(i).end(), [](Sign s) { return s == Sign::Zero; })) {
      std::vector<int> d(ell, 0);
      d[i] = 1;
      out.failing_d = std::move(d);
      return out;
    }
  }
  const IntMatrix u = unit_sign(r);
  const std::uint64_t total = pow3(ell) - 1;
  const std::size_t first_bad = parallel_find_first(
      total, [&](std::size_t idx) { return !has_good_column(u, scaling_of(idx + 1, ell)); });
  if (first_bad == total) {
    out.holds = true;
    out.checked = total;
  } else {
    out.failing_d = scaling_of(first_bad + 1, ell);
    out.checked = first_bad + 1;
  }
  return out;
}

QualMatrix signs_of_real_times_signinv(const RealMatrix& b, const QualMatrix& ainv) {
  if (!ainv.square() || b.rows() != ainv.rows())
    throw DomainError("signs_of_real_times_signinv: shape mismatch");
  if (!all_finite(b)) throw DomainError("signs_of_real_times_signinv: non-finite entry");
  const std::size_t n = ainv.rows(), ell = b.cols();
  QualMatrix y(ell, n, Sign::Zero);
  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Sign acc = Sign::Zero;
      for (std::size_t k = 0; k < n; ++k) acc = sign_add(acc, sign_mul(sign_of(b(k, i)), ainv(j, k)));
      y(i, j) = acc;
    }
  return y;
}

std::uint64_t lplus_complexity_estimate(std::size_t ell, std::size_t indefinite) {
  return (pow3(ell) - 1) * pow3(indefinite);
}

LplusCounterexample lplus_counterexample(const QualMatrix& r, const std::vector<int>& d) {
  require_definite(r, "lplus_counterexample");
  if (d.size() != r.rows()) throw DomainError("lplus_counterexample: scaling size mismatch");
  const double big = static_cast<double>(r.rows()) + 1.0;
  LplusCounterexample out{RealMatrix(r.rows(), r.cols()), RealVector(r.rows())};
  for (std::size_t i = 0; i < r.rows(); ++i) {
    out.y[i] = -d[i];
    for (std::size_t j = 0; j < r.cols(); ++j) {
      const int s = static_cast<int>(r(i, j));
      out.r(i, j) = s * (d[i] * s < 0 ? big : 1.0);
    }
  }
  return out;
}

std::optional<LpCertificate> positive_kernel_vector(const RealMatrix& r) {
  LpSystem sys{r, std::vector<RowKind>(r.rows(), RowKind::Equal),
               std::vector<VarKind>(r.cols(), VarKind::Positive)};
  return lp_solve(sys);
}

const char* to_string(KerBStatus s) noexcept {
  return s == KerBStatus::SufficientYes ? "sufficient_yes" : "unknown";
}

std::optional<KerBCertificate> ker_b_certificate(const RealMatrix& a, const RealMatrix& b) {
  const RealMatrix ainv = real_inverse(a);
  KerBCertificate cert;
  cert.a = a;
  RealVector w(a.rows(), 1.0);
  if (b.cols() > 0) {
    auto lp = positive_kernel_vector(transpose(multiply(ainv, b)));
    if (!lp) return std::nullopt;
    w = lp->point;
  } else {
    auto lp = lp_strict_feasible(transpose(a));
    if (!lp) return std::nullopt;
    cert.v = lp->point;
  }
  if (b.cols() > 0) {
    cert.v = left_multiply(w, transpose(ainv));
    for (double& x : cert.v) x = -x;
  }
  const RealVector va = left_multiply(cert.v, a);
  cert.decay = std::numeric_limits<double>::infinity();
  for (double x : va) cert.decay = std::min(cert.decay, -x);
  const RealVector vb = left_multiply(cert.v, b);
  cert.residual = norm_inf(vb);
  const bool positive = std::all_of(cert.v.begin(), cert.v.end(), [](double x) { return x > 0.0; });
  cert.valid = positive && cert.decay > 0.0 &&
               cert.residual <= 1e-8 * norm_inf(cert.v) * std::max(norm_inf(b), 1.0);
  return cert;
}

KerBVerdict ker_b_sign_stable(const QualMatrix& a, const RealMatrix& b, const KerBOptions& opt) {
  require_metzler(a, "ker_b_sign_stable");
  if (!sign_stable(a).verdict) throw DomainError("ker_b_sign_stable: A is not sign-stable");
  const std::size_t n = a.rows();
  const std::size_t ell = b.cols();
  if (b.rows() != n && !(ell == 0 && b.rows() == 0))
    throw DomainError("ker_b_sign_stable: B must have as many rows as A");
  if (!all_finite(b)) throw DomainError("ker_b_sign_stable: non-finite entry in B");
  if (ell > 0 && (ell >= n || numeric_rank(b, 1e-10) != ell))
    throw DomainError("ker_b_sign_stable: B must have full column rank below n");

  KerBVerdict out;
  const RealMatrix bb = ell == 0 ? RealMatrix(n, 0) : b;
  if (ell == 0) {
    out.status = KerBStatus::SufficientYes;
    out.y = QualMatrix(0, n);
  } else {
    out.y = signs_of_real_times_signinv(bb, sign_inverse(a));
    for (std::size_t i = 0; i < out.y.rows(); ++i)
      for (std::size_t j = 0; j < out.y.cols(); ++j)
        if (out.y(i, j) == Sign::Indef) out.indefinite_positions.emplace_back(i, j);
    out.members = sq_expand(out.y, opt.cap_sq);
    bool all = true;
    for (const auto& m : out.members) {
      out.member_results.push_back(is_lplus(m, opt.cap_lplus));
      all = all && out.member_results.back().holds;
    }
    out.checked_count = out.members.size();
    out.status = all ? KerBStatus::SufficientYes : KerBStatus::Unknown;
  }

  if (out.status == KerBStatus::SufficientYes && opt.samples > 0) {
    out.certificates.resize(opt.samples);
    parallel_for(opt.samples, [&](std::size_t s) {
      const RealMatrix sample = sample_qual(a, derive_seed(opt.seed, s), opt.scale);
      auto cert = ker_b_certificate(sample, bb);
      if (!cert || !cert->valid)
        throw InconsistencyError("ker_b_sign_stable: no certificate for sample " + std::to_string(s));
      out.certificates[s] = std::move(*cert);
    });
  }
  return out;
}

}  // namespace msign
