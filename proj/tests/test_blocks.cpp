#include <gtest/gtest.h>

#include <random>

#include "msign/blocks.hpp"
#include "msign/numeric.hpp"
#include "support.hpp"

namespace msign {
namespace {

QualBlockSystem two_block_system(bool modified) {
  QualBlockSystem s;
  s.diag = {qual_from_strings({"-0", "+-"}),
            modified ? qual_from_strings({"-+", "0-"}) : qual_from_strings({"-0", "0-"})};
  s.couplings[{0, 1}] = {qual_from_strings({"+", "0"}), qual_from_strings({"+0"})};
  s.couplings[{1, 0}] = {qual_from_strings({"0", "+"}), qual_from_strings({"0+"})};
  return s;
}

MultiplierCertificate printed_certificate() {
  MultiplierCertificate c;
  c.v = {{5, 3}, {7, 1}};
  c.ell[{0, 1}] = {6};
  c.ell[{1, 0}] = {2};
  c.margin = 1.0;
  c.b_rows_strict = true;
  return c;
}

TEST(BlockSign, PrintedCertificateValidates) {
  const auto p = multiplier_problem(two_block_system(false), BlockVariant::FactoredCoupling);
  EXPECT_TRUE(validate(p, printed_certificate(), 0.0));
  MultiplierCertificate off = printed_certificate();
  off.ell[{0, 1}] = {7};
  EXPECT_FALSE(validate(p, off, 0.0));
}

TEST(BlockSign, TwoBlockExample) {
  for (auto variant : {BlockVariant::FactoredCoupling, BlockVariant::ProductCoupling}) {
    const auto v = block_sign_stable(two_block_system(false), variant);
    EXPECT_EQ(v.verdict, Verdict::Holds);
    EXPECT_TRUE(v.hypotheses_hold);
    ASSERT_TRUE(v.certificate.has_value());
    EXPECT_TRUE(validate(multiplier_problem(two_block_system(false), variant), *v.certificate));
    EXPECT_EQ(v.assembled_sign_stable, true);

    const auto m = block_sign_stable(two_block_system(true), variant);
    EXPECT_EQ(m.verdict, Verdict::Fails);
    EXPECT_FALSE(m.certificate.has_value());
    EXPECT_EQ(m.assembled_sign_stable, false);
  }
}

TEST(BlockSign, SingleBlockMatchesSignStable) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    QualBlockSystem s;
    s.diag = {testing::random_metzler_pattern(rng, 1 + rng() % 5)};
    const auto v = block_sign_stable(s, BlockVariant::FactoredCoupling);
    EXPECT_EQ(v.verdict, from_bool(sign_stable(s.diag[0]).verdict));
  }
}

TEST(Assemble, Layouts) {
  QualBlockSystem one;
  one.diag = {qual_from_strings({"-+", "0-"})};
  EXPECT_EQ(assemble(one), one.diag[0]);

  EXPECT_EQ(assemble(two_block_system(false)),
            qual_from_strings({"-0+0", "+-00", "00-0", "0+0-"}));

  RealBlockSystem three;
  three.diag = {RealMatrix{{-1}}, RealMatrix{{-2}}, RealMatrix{{-3}}};
  three.couplings[{0, 2}] = {RealMatrix{{2}}, RealMatrix{{3}}};
  three.couplings[{2, 1}] = {RealMatrix{{1, 1}}, RealMatrix{{1}, {4}}};
  EXPECT_EQ(assemble(three), (RealMatrix{{-1, 0, 6}, {0, -2, 0}, {0, 5, -3}}));

  RealBlockSystem bad = three;
  bad.couplings[{0, 1}] = {RealMatrix{{1, 2}}, RealMatrix{{1}}};
  EXPECT_THROW(assemble(bad), DomainError);
}

TEST(ProductConditions, Examples) {
  const QualMatrix col = qual_from_strings({"+", "+"});
  EXPECT_EQ(qc_product_equality(col, qual_from_strings({"+0"})), Verdict::Holds);
  EXPECT_EQ(qc_product_equality(col, qual_from_strings({"++"})), Verdict::Unknown);
  EXPECT_EQ(qc_product_equality(QualMatrix(2, 2, Sign::Zero), qual_from_strings({"++", "++"})),
            Verdict::Holds);

  EXPECT_FALSE(sgn_product_equality(qual_from_strings({"++", "0+"}), col));
  EXPECT_TRUE(sgn_product_equality(col, qual_from_strings({"+0"})));
  EXPECT_TRUE(sgn_product_equality(QualMatrix(2, 2, Sign::Zero), col));
  EXPECT_THROW(sgn_product_equality(qual_from_strings({"-"}), qual_from_strings({"+"})), DomainError);
}

TEST(BlockHurwitz, SingleBlockIsLyapunovLp) {
  const RealBlockSystem s{{RealMatrix{{-1, 2}, {1, -5}}}, {}};
  const auto cert = block_hurwitz(s);
  ASSERT_TRUE(cert.has_value());
  for (double y : left_multiply(cert->v[0], s.diag[0])) EXPECT_LT(y, 0.0);
  EXPECT_FALSE(block_hurwitz(RealBlockSystem{{RealMatrix{{-1, 2}, {1, -1}}}, {}}).has_value());
}

RealBlockSystem random_real_blocks(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.0, 2.0);
  std::bernoulli_distribution on(0.4);
  RealBlockSystem s;
  const std::size_t n_blocks = 1 + rng() % 4;
  for (std::size_t i = 0; i < n_blocks; ++i) {
    RealMatrix a = testing::random_metzler_real(rng, 1 + rng() % 4);
    for (std::size_t k = 0; k < a.rows(); ++k) a(k, k) -= 0.5;
    s.diag.push_back(a);
  }
  for (std::size_t i = 0; i < n_blocks; ++i)
    for (std::size_t j = 0; j < n_blocks; ++j) {
      if (i == j || !on(rng)) continue;
      const std::size_t nij = 1 + rng() % 3;
      RealMatrix b(s.diag[i].rows(), nij), c(nij, s.diag[j].rows());
      for (auto& x : b.values()) x = on(rng) ? mag(rng) : 0.0;
      for (auto& x : c.values()) x = on(rng) ? mag(rng) : 0.0;
      s.couplings[{i, j}] = {b, c};
    }
  return s;
}

TEST(BlockHurwitz, EquivalentToAssembledTest) {
  std::mt19937_64 rng(59);
  int feasible = 0, compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const RealBlockSystem s = random_real_blocks(rng);
    const RealMatrix full = assemble(s);
    const double ref = testing::eigen_abscissa(full);
    if (std::abs(ref) < 1e-7) continue;
    ++compared;
    const auto cert = block_hurwitz(s);
    EXPECT_EQ(cert.has_value(), ref < 0.0) << "trial " << trial;
    EXPECT_EQ(cert.has_value(), hurwitz_metzler(full).verdict);
    if (cert) {
      ++feasible;
      MultiplierProblem p{s.diag, s.couplings, false};
      EXPECT_TRUE(validate(p, *cert, 1e-7));
    }
  }
  EXPECT_GT(compared, 450);
  EXPECT_GT(feasible, 50);
}

QualBlockSystem random_sign_blocks(std::mt19937_64& rng) {
  QualBlockSystem s;
  const std::size_t n_blocks = 1 + rng() % 3;
  for (std::size_t i = 0; i < n_blocks; ++i)
    s.diag.push_back(testing::random_metzler_pattern(rng, 1 + rng() % 3));
  std::bernoulli_distribution on(0.4);
  for (std::size_t i = 0; i < n_blocks; ++i)
    for (std::size_t j = 0; j < n_blocks; ++j) {
      if (i == j || !on(rng)) continue;
      const std::size_t nij = 1 + rng() % 2;
      s.couplings[{i, j}] = {testing::random_nonneg_pattern(rng, s.diag[i].rows(), nij, 0.4),
                             testing::random_nonneg_pattern(rng, nij, s.diag[j].rows(), 0.4)};
    }
  return s;
}

TEST(BlockSign, AgreesWithAssembledWhenHypothesesHold) {
  std::mt19937_64 rng(61);
  int exact = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const QualBlockSystem s = random_sign_blocks(rng);
    for (auto variant : {BlockVariant::FactoredCoupling, BlockVariant::ProductCoupling}) {
      const auto v = block_sign_stable(s, variant);
      const bool assembled = sign_stable(assemble(s)).verdict;
      if (v.hypotheses_hold) {
        ++exact;
        EXPECT_EQ(v.verdict, from_bool(assembled));
      } else if (v.verdict == Verdict::Holds) {
        EXPECT_TRUE(assembled);
      }
      if (v.certificate) EXPECT_TRUE(validate(multiplier_problem(s, variant), *v.certificate, 1e-7));
    }
  }
  EXPECT_GT(exact, 100);
}

}  // namespace
}  // namespace msign
