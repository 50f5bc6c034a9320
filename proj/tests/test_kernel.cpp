#include <gtest/gtest.h>

#include <random>

#include "msign/kernel.hpp"
#include "msign/signstab.hpp"
#include "support.hpp"

namespace msign {
namespace {

bool sign_matches(const RealMatrix& m, const QualMatrix& pattern, double zero_tol) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double x = m(i, j);
      switch (pattern(i, j)) {
        case Sign::Neg: if (!(x < -zero_tol)) return false; break;
        case Sign::Pos: if (!(x > zero_tol)) return false; break;
        case Sign::Zero: if (std::abs(x) > zero_tol) return false; break;
        case Sign::Indef: return false;
      }
    }
  return true;
}

TEST(SignInverse, Examples) {
  EXPECT_EQ(sign_inverse(qual_from_strings({"-0", "0-"})), qual_from_strings({"-0", "0-"}));
  const QualMatrix chain = qual_from_strings({"-+0", "0-+", "00-"});
  const QualMatrix inv = sign_inverse(chain);
  EXPECT_EQ(inv, qual_from_strings({"---", "0--", "00-"}));
  for (std::uint64_t k = 0; k < 100; ++k) {
    const RealMatrix ref = testing::eigen_inverse(sample_qual(chain, k, k % 2 ? 100.0 : 0.01));
    EXPECT_TRUE(sign_matches(ref, inv, 1e-10 * norm_inf(ref)));
  }
  EXPECT_THROW(sign_inverse(qual_from_strings({"-+", "+-"})), DomainError);
}

TEST(SignInverse, RandomPatternsMatchNumericInverse) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const QualMatrix a = testing::random_sign_stable_pattern(rng, 1 + rng() % 7);
    const QualMatrix inv = sign_inverse(a);
    for (std::uint64_t k = 0; k < 20; ++k) {
      const RealMatrix ref = testing::eigen_inverse(sample_qual(a, rng()));
      EXPECT_TRUE(sign_matches(ref, inv, 1e-10 * norm_inf(ref))) << to_string(a);
    }
  }
}

TEST(SqExpand, Examples) {
  const auto one = sq_expand(qual_from_strings({"-?"}));
  ASSERT_EQ(one.size(), 3u);
  EXPECT_EQ(one[0], qual_from_strings({"--"}));
  EXPECT_EQ(one[1], qual_from_strings({"-0"}));
  EXPECT_EQ(one[2], qual_from_strings({"-+"}));

  const QualMatrix def = qual_from_strings({"-+", "0-"});
  EXPECT_EQ(sq_expand(def), std::vector<QualMatrix>{def});

  const QualMatrix two = qual_from_strings({"?+", "0?"});
  const auto nine = sq_expand(two);
  ASSERT_EQ(nine.size(), 9u);
  for (const auto& m : nine) {
    EXPECT_TRUE(is_definite(m));
    EXPECT_EQ(m(0, 1), Sign::Pos);
    EXPECT_EQ(m(1, 0), Sign::Zero);
  }
  std::set<std::string> distinct;
  for (const auto& m : nine) distinct.insert(to_string(m));
  EXPECT_EQ(distinct.size(), 9u);

  EXPECT_THROW(sq_expand(QualMatrix(1, 3, Sign::Indef), 2), DomainError);
}

TEST(Lplus, Examples) {
  EXPECT_TRUE(is_lplus(qual_from_strings({"-+"})).holds);
  const auto pp = is_lplus(qual_from_strings({"++"}));
  EXPECT_FALSE(pp.holds);
  EXPECT_EQ(pp.failing_d, (std::vector<int>{-1}));
  EXPECT_FALSE(is_lplus(qual_from_strings({"-+", "00"})).holds);
  EXPECT_THROW(is_lplus(QualMatrix(3, 2, Sign::Pos), 2), DomainError);
}

TEST(Lplus, NegPosRowHasPositiveKernelOnSamples) {
  const QualMatrix r = qual_from_strings({"-+"});
  for (std::uint64_t k = 0; k < 100; ++k)
    EXPECT_TRUE(positive_kernel_vector(sample_qual(r, k)).has_value());
}

// Brute-force oracle for the scaling condition: every nonzero D in {-1,0,1}^l
// leaves a nonzero nonnegative column in D R.
bool lplus_oracle(const QualMatrix& r) {
  const std::size_t ell = r.rows();
  std::vector<int> d(ell, -1);
  for (;;) {
    if (std::any_of(d.begin(), d.end(), [](int x) { return x != 0; })) {
      bool good = false;
      for (std::size_t c = 0; c < r.cols() && !good; ++c) {
        bool nonneg = true, nonzero = false;
        for (std::size_t i = 0; i < ell; ++i) {
          const int x = d[i] * static_cast<int>(r(i, c));
          nonneg = nonneg && x >= 0;
          nonzero = nonzero || x > 0;
        }
        good = nonneg && nonzero;
      }
      if (!good) return false;
    }
    std::size_t i = 0;
    while (i < ell && d[i] == 1) d[i++] = -1;
    if (i == ell) return true;
    ++d[i];
  }
}

TEST(Lplus, AgreesWithKernelLp) {
  std::mt19937_64 rng(79);
  int holds = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const QualMatrix r = testing::random_sign_matrix(rng, 1 + rng() % 4, 1 + rng() % 6);
    const auto res = is_lplus(r);
    EXPECT_EQ(res.holds, lplus_oracle(r)) << to_string(r);
    if (res.holds) {
      ++holds;
      for (std::uint64_t k = 0; k < 20; ++k)
        EXPECT_TRUE(positive_kernel_vector(sample_qual(r, rng())).has_value()) << to_string(r);
    } else {
      ASSERT_TRUE(res.failing_d.has_value());
      const auto zero_row = std::find_if(res.failing_d->begin(), res.failing_d->end(),
                                         [](int x) { return x != 0; });
      const std::size_t i = static_cast<std::size_t>(zero_row - res.failing_d->begin());
      if (std::all_of(r.row(i).begin(), r.row(i).end(), [](Sign s) { return s == Sign::Zero; })) {
        EXPECT_EQ(std::count(res.failing_d->begin(), res.failing_d->end(), 0),
                  static_cast<long>(r.rows()) - 1);
        continue;
      }
      const auto ce = lplus_counterexample(r, *res.failing_d);
      EXPECT_TRUE(in_qualitative_class(ce.r, r));
      const RealVector yr = left_multiply(ce.y, ce.r);
      EXPECT_TRUE(std::all_of(yr.begin(), yr.end(), [](double x) { return x >= 0.0; }));
      EXPECT_GT(norm_inf(yr), 0.0);
      EXPECT_FALSE(positive_kernel_vector(ce.r).has_value());
    }
  }
  EXPECT_GT(holds, 10);
}

TEST(SignsOfProduct, Examples) {
  const QualMatrix ainv = sign_inverse(qual_from_strings({"-0", "0-"}));
  EXPECT_EQ(signs_of_real_times_signinv(RealMatrix{{1}, {-1}}, ainv), qual_from_strings({"-+"}));
  EXPECT_EQ(signs_of_real_times_signinv(RealMatrix{{1}, {1}}, ainv), qual_from_strings({"--"}));
  EXPECT_EQ(signs_of_real_times_signinv(RealMatrix{{0}, {0}}, ainv), qual_from_strings({"00"}));
  const QualMatrix lower = sign_inverse(qual_from_strings({"-0", "+-"}));
  EXPECT_EQ(signs_of_real_times_signinv(RealMatrix{{1}, {-1}}, lower), qual_from_strings({"-?"}));
}

TEST(SignsOfProduct, DefiniteEntriesMatchSamples) {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    const QualMatrix a = testing::random_sign_stable_pattern(rng, n);
    RealMatrix b(n, 1 + rng() % (n - 1));
    for (auto& x : b.values()) x = rng() % 3 ? std::round(u(rng)) : 0.0;
    const QualMatrix y = signs_of_real_times_signinv(b, sign_inverse(a));
    for (std::uint64_t k = 0; k < 10; ++k) {
      const RealMatrix inv = testing::eigen_inverse(sample_qual(a, rng()));
      const RealMatrix prod = transpose(multiply(inv, b));
      for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) {
          const double x = prod(i, j), tol = 1e-10 * (1 + norm_inf(prod));
          if (y(i, j) == Sign::Pos) EXPECT_GT(x, tol);
          if (y(i, j) == Sign::Neg) EXPECT_LT(x, -tol);
          if (y(i, j) == Sign::Zero) EXPECT_LE(std::abs(x), tol);
        }
    }
  }
}

TEST(Complexity, Examples) {
  EXPECT_EQ(lplus_complexity_estimate(2, 0), 8u);
  EXPECT_EQ(lplus_complexity_estimate(1, 1), 6u);
  EXPECT_EQ(lplus_complexity_estimate(0, 3), 0u);
}

TEST(KerB, SufficientYesWithCertificates) {
  const QualMatrix a = qual_from_strings({"-0", "0-"});
  const RealMatrix b{{1}, {-1}};
  const auto v = ker_b_sign_stable(a, b, {.samples = 100, .seed = 5});
  EXPECT_EQ(v.status, KerBStatus::SufficientYes);
  ASSERT_EQ(v.certificates.size(), 100u);
  for (const auto& c : v.certificates) {
    EXPECT_TRUE(c.valid);
    EXPECT_NEAR(c.v[0], c.v[1], 1e-9 * norm_inf(c.v));
    EXPECT_TRUE(in_qualitative_class(c.a, a));
  }
  for (std::uint64_t k = 0; k < 100; ++k) {
    const RealVector one{1, 1};
    for (double x : left_multiply(one, sample_qual(a, k))) EXPECT_LT(x, 0.0);
    EXPECT_EQ(norm_inf(left_multiply(one, b)), 0.0);
  }
}

TEST(KerB, UnknownWhenNoPositiveKernel) {
  const auto v = ker_b_sign_stable(qual_from_strings({"-0", "0-"}), RealMatrix{{1}, {1}});
  EXPECT_EQ(v.status, KerBStatus::Unknown);
  EXPECT_EQ(v.y, qual_from_strings({"--"}));
  ASSERT_EQ(v.member_results.size(), 1u);
  EXPECT_FALSE(v.member_results[0].holds);
}

TEST(KerB, EmptyBReducesToSignStability) {
  const auto v = ker_b_sign_stable(qual_from_strings({"-+", "0-"}), RealMatrix(2, 0), {.samples = 10});
  EXPECT_EQ(v.status, KerBStatus::SufficientYes);
  for (const auto& c : v.certificates) EXPECT_TRUE(c.valid);
  EXPECT_THROW(ker_b_sign_stable(qual_from_strings({"-+", "+-"}), RealMatrix(2, 0)), DomainError);
}

TEST(KerB, Preconditions) {
  const QualMatrix a = qual_from_strings({"-00", "0-0", "00-"});
  EXPECT_THROW(ker_b_sign_stable(a, RealMatrix{{1, 2}, {2, 4}, {3, 6}}), DomainError);
  EXPECT_THROW(ker_b_sign_stable(a, RealMatrix{{1}, {1}}), DomainError);
}

}  // namespace
}  // namespace msign
