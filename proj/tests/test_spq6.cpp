#include <gtest/gtest.h>

#include "qweyl/spq6.hpp"

namespace qweyl {
namespace {

TEST(RMatrix, EntryCountAndSamples) {
  const RMatrix r = braided_r();
  // 36 diagonal-type entries, 15 swaps, 15 * 2 conjugate-pair entries minus
  // the 3 where both land on the same slot.
  EXPECT_EQ(r.entries().size(), 63u);
  EXPECT_EQ(r.at(1, 1, 1, 1), laurent::q(1));
  EXPECT_EQ(r.at(2, 1, 1, 2), LaurentQ(1));
  EXPECT_EQ(r.at(6, 1, 1, 6), laurent::q(-1));
  EXPECT_EQ(r.at(1, 2, 1, 2), laurent::q(1) - laurent::q(-1));
  EXPECT_THROW(RMatrix().add(0, 1, 1, 1, LaurentQ(1)), UsageError);
}

TEST(RMatrix, BraidIdentity) { EXPECT_TRUE(braid_defect(braided_r()).is_zero()); }

TEST(RMatrix, CubicIdentity) { EXPECT_TRUE(cubic_defect(braided_r()).is_zero()); }

TEST(RMatrix, UnbraidedFormFailsCubic) {
  EXPECT_FALSE(cubic_defect(symplectic_r()).is_zero());
}

TEST(Metric, Values) {
  const auto c = symplectic_metric();
  EXPECT_EQ(c.size(), 6u);
  EXPECT_EQ(c.at({6, 1}), laurent::q(3));
  EXPECT_EQ(c.at({1, 6}), LaurentQ(-1) * laurent::q(-3));
  EXPECT_EQ(c.at({3, 4}), LaurentQ(-1) * laurent::q(-1));
}

TEST(Proposition, AllPairsVanish) {
  const auto rs = proposition_residuals();
  ASSERT_EQ(rs.size(), 36u);
  for (const auto& r : rs) EXPECT_TRUE(r.pass()) << r.i << "," << r.j << ": " << r.residual;
}

TEST(Proposition, ScaleCovariance) {
  const LaurentQ two_alpha = LaurentQ(2) * laurent::alpha();
  for (const auto& r : proposition_residuals(braided_r(), symplectic_metric(), two_alpha))
    EXPECT_TRUE(r.pass()) << r.i << "," << r.j;
}

TEST(Proposition, MetricIsNeeded) {
  int failing = 0;
  for (const auto& r : proposition_residuals(braided_r(), {})) failing += !r.pass();
  EXPECT_EQ(failing, 6);
}

TEST(Proposition, EveryEntryMutationIsDetected) {
  const RMatrix base = braided_r();
  const auto metric = symplectic_metric();
  for (const auto& [key, v] : base.entries()) {
    RMatrix mutated = base;
    mutated.add(key[0], key[1], key[2], key[3], laurent::q(1));
    bool any = false;
    for (const auto& r : proposition_residuals(mutated, metric)) any = any || !r.pass();
    EXPECT_TRUE(any) << key[0] << key[1] << key[2] << key[3];
  }
}

TEST(Proposition, InverseParameterFails) {
  auto invert_q = [](const LaurentQ& v) {
    LaurentQ out;
    for (const auto& [e, c] : v.terms()) {
      auto flipped = e;
      flipped[laurent::q_index] = -e[laurent::q_index];
      out += LaurentQ::monomial(flipped, c);
    }
    return out;
  };
  const RMatrix base = braided_r();
  RMatrix inverse;
  for (const auto& [key, v] : base.entries())
    inverse.add(key[0], key[1], key[2], key[3], invert_q(v));
  bool any = false;
  for (const auto& r : proposition_residuals(inverse, symplectic_metric())) any = any || !r.pass();
  EXPECT_TRUE(any);
}

TEST(ReducedRelation, BothReadingsAreReported) {
  EXPECT_EQ(reduced_relation_indices(PartnerReading::four_minus_j), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(reduced_relation_indices(PartnerReading::seven_minus_j), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(reduced_relation_residual(1, PartnerReading::seven_minus_j).str(), "-alpha*q^-1");
  EXPECT_EQ(reduced_relation_residual(1, PartnerReading::four_minus_j).str(),
            "-alpha^2*q^3*d1*d3 + alpha^2*q^4*d1*d3");
  EXPECT_THROW(reduced_relation_residual(4, PartnerReading::four_minus_j), UsageError);
}

TEST(ReducedRelation, ClassicalLimit) {
  for (int j = 1; j <= 3; ++j) {
    EXPECT_TRUE(reduced_relation_residual(j, PartnerReading::four_minus_j)
                    .substitute(laurent::q_index, GaussianRational(1))
                    .is_zero());
    EXPECT_EQ(reduced_relation_residual(j, PartnerReading::seven_minus_j)
                  .substitute(laurent::q_index, GaussianRational(1)),
              AqElement(LaurentQ(-1) * laurent::alpha()));
  }
}

}  // namespace
}  // namespace qweyl
