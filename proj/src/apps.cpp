#include "msign/apps.hpp"

#include <limits>

#include "msign/numeric.hpp"
#include "msign/parallel.hpp"

namespace msign {

namespace {

void same_shape(const QualMatrix& a, const QualMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError(std::string(what) + ": matrices differ in shape");
}

void require_nonneg(const QualMatrix& a, const char* what) {
  require_square(a, what);
  require_definite(a, what);
  if (!is_nonneg(a)) throw DomainError(std::string(what) + ": negative entry present");
}

}  // namespace

DelayVerdict delay_ct_structural(const QualMatrix& m0, const std::vector<QualMatrix>& delayed,
                                 const SignStabilityOptions& opt) {
  require_metzler(m0, "delay_ct_structural");
  Family fam{m0};
  for (const auto& m : delayed) {
    require_nonneg(m, "delay_ct_structural");
    same_shape(m0, m, "delay_ct_structural");
    fam.push_back(m);
  }
  DelayVerdict out;
  out.summability = sign_summable(fam);
  if (!out.summability.summable) return out;
  QualMatrix sum = m0;
  for (const auto& m : delayed) sum = qual_add(sum, m);
  out.sum_verdict = sign_stable(sum, opt);
  out.sum = std::move(sum);
  out.verdict = from_bool(out.sum_verdict->verdict);
  return out;
}

DelayVerdict delay_dt_structural(const std::vector<QualMatrix>& terms,
                                 const SignStabilityOptions& opt) {
  if (terms.empty()) throw DomainError("delay_dt_structural: no terms given");
  for (const auto& m : terms) {
    require_nonneg(m, "delay_dt_structural");
    same_shape(terms.front(), m, "delay_dt_structural");
  }
  DelayVerdict out;
  QualMatrix sum = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) sum = qual_add(sum, terms[i]);
  out.sum_verdict = schur_sign_stable(sum, opt);
  out.sum = std::move(sum);
  out.verdict = from_bool(out.sum_verdict->verdict);
  return out;
}

SwitchedVerdict switched_structural(const std::vector<QualMatrix>& modes,
                                    const SamplingOptions& opt) {
  SwitchedVerdict out;
  out.hull = hull_sign_stable(modes, {opt.full_check});
  if (out.hull.verdict != Verdict::Holds) return out;
  out.certificates.resize(opt.samples);
  parallel_for(opt.samples, [&](std::size_t s) {
    SwitchedCertificate& c = out.certificates[s];
    for (std::size_t i = 0; i < modes.size(); ++i)
      c.modes.push_back(sample_qual(modes[i], derive_seed(opt.seed, s * modes.size() + i), opt.scale));
    c.v = common_linear_lyapunov(c.modes);
    c.q = common_quadratic_lyapunov(c.modes);
    c.valid = std::all_of(c.modes.begin(), c.modes.end(), [&](const RealMatrix& a) {
      return validates_linear(c.v, a) && validates_quadratic(c.q, a);
    });
  });
  return out;
}

ImpulsiveVerdict impulsive_structural(const QualMatrix& ma, const QualMatrix& mj,
                                      const SamplingOptions& opt) {
  require_metzler(ma, "impulsive_structural");
  require_nonneg(mj, "impulsive_structural");
  same_shape(ma, mj, "impulsive_structural");
  ImpulsiveVerdict out;
  out.flow_diagonal_negative = true;
  out.jump_diagonal_zero = true;
  for (std::size_t i = 0; i < ma.rows(); ++i) {
    out.flow_diagonal_negative = out.flow_diagonal_negative && ma(i, i) == Sign::Neg;
    out.jump_diagonal_zero = out.jump_diagonal_zero && mj(i, i) == Sign::Zero;
  }
  if (!out.flow_diagonal_negative || !out.jump_diagonal_zero) return out;
  out.sum_verdict = sign_stable(qual_add(ma, mj), {opt.full_check});
  out.verdict = from_bool(out.sum_verdict->verdict);
  if (out.verdict != Verdict::Holds) return out;

  out.certificates.resize(opt.samples);
  parallel_for(opt.samples, [&](std::size_t s) {
    ImpulsiveCertificate& c = out.certificates[s];
    c.a = sample_qual(ma, derive_seed(opt.seed, 2 * s), opt.scale);
    c.j = sample_qual(mj, derive_seed(opt.seed, 2 * s + 1), opt.scale);
    RealMatrix jump = c.j;
    for (std::size_t i = 0; i < jump.rows(); ++i) jump(i, i) -= 1.0;
    c.lambda = common_linear_lyapunov({c.a, jump});
    c.valid = validates_linear(c.lambda, c.a) && validates_linear(c.lambda, jump);
  });
  return out;
}

namespace {

StructuralKernelVerdict structural_kernel(const QualMatrix& m, const IntMatrix& b,
                                          const SamplingOptions& opt, const char* what) {
  require_metzler(m, what);
  StructuralKernelVerdict out;
  out.sign_stable = sign_stable(m, {opt.full_check}).verdict;
  if (!out.sign_stable) {
    out.verdict = Verdict::Fails;
    return out;
  }
  const std::size_t n = m.rows();
  const std::size_t ell = b.cols();
  if (ell > 0 && b.rows() != n)
    throw DomainError(std::string(what) + ": B must have as many rows as the matrix");
  const RealMatrix bb = ell == 0 ? RealMatrix(n, 0) : to_real(b);
  if (ell > 0 && (ell >= n || numeric_rank(bb, 1e-10) != ell))
    throw DomainError(std::string(what) + ": B must have full column rank below n");

  if (ell == 0) {
    out.verdict = Verdict::Holds;
  } else {
    out.y = signs_of_real_times_signinv(bb, sign_inverse(m));
    for (std::size_t i = 0; i < out.y->rows(); ++i)
      for (std::size_t j = 0; j < out.y->cols(); ++j)
        if ((*out.y)(i, j) == Sign::Indef) out.indefinite_positions.emplace_back(i, j);
    if (!out.indefinite_positions.empty()) {
      out.verdict = Verdict::Unknown;
      return out;
    }
    out.lplus = is_lplus(*out.y);
    out.verdict = out.lplus->holds ? Verdict::Holds : Verdict::Unknown;
  }
  if (out.verdict != Verdict::Holds) return out;

  out.certificates.resize(opt.samples);
  parallel_for(opt.samples, [&](std::size_t s) {
    const RealMatrix a = sample_qual(m, derive_seed(opt.seed, s), opt.scale);
    auto kc = ker_b_certificate(a, bb);
    if (!kc) throw InconsistencyError(std::string(what) + ": no certificate for a sampled realization");
    KernelCertificate& c = out.certificates[s];
    c.a = a;
    c.v = kc->v;
    c.residual = kc->residual;
    const RealVector va = left_multiply(c.v, a);
    c.epsilon = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) c.epsilon = std::min(c.epsilon, -va[i] / c.v[i]);
    c.valid = kc->valid && c.epsilon > 0.0;
  });
  return out;
}

}  // namespace

StructuralKernelVerdict nonlinear_invariance_structural(const QualMatrix& m, const IntMatrix& b,
                                                        const SamplingOptions& opt) {
  return structural_kernel(m, b, opt, "nonlinear_invariance_structural");
}

StructuralKernelVerdict ergodicity_structural(const ReactionNetworkSigns& net, bool irreducible,
                                              const SamplingOptions& opt) {
  auto out = structural_kernel(net.z, net.s_b, opt, "ergodicity_structural");
  out.irreducible_declared = irreducible;
  return out;
}

}  // namespace msign
