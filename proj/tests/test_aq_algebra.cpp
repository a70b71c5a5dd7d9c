#include <gtest/gtest.h>

#include "qweyl/aq_algebra.hpp"

namespace qweyl {
namespace {

AqElement aq(std::string_view text) { return AqElement::parse(text); }

TEST(Rewrite, SwapOfCoordinates) {
  EXPECT_EQ(normal_form({x_letter(2), x_letter(1)}), aq("q^-1*X1*X2"));
  EXPECT_EQ(normal_form({d_letter(3), d_letter(1)}), aq("q*d1*d3"));
  EXPECT_EQ(normal_form({d_letter(2), x_letter(3)}), aq("q*X3*d2"));
  EXPECT_EQ(normal_form({d_letter(3), x_letter(1)}), aq("q*X1*d3"));
}

TEST(Rewrite, InhomogeneousRelation) {
  EXPECT_EQ(normal_form({d_letter(1), x_letter(1)}),
            aq("1 + q^2*X1*d1 + (q^2-1)*(X2*d2 + X3*d3)"));
  EXPECT_EQ(normal_form({d_letter(3), x_letter(3)}), aq("1 + q^2*X3*d3"));
  EXPECT_EQ(normal_form({d_letter(1), x_letter(1)}).str(),
            "1 + q^2*X1*d1 - X2*d2 + q^2*X2*d2 - X3*d3 + q^2*X3*d3");
}

TEST(Rewrite, GeneratedRuleForLargerRank) {
  // rank 4: d_2 X_2 picks up X_3 d_3 and X_4 d_4.
  const RewriteResult r = rewrite_rule(4 + 1, 1, 4);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[2].second, (AqWord{2, 6}));
  EXPECT_EQ(r[3].second, (AqWord{3, 7}));
  EXPECT_THROW(rewrite_rule(1, 2), UsageError);
}

TEST(Rewrite, NormalWordIsFixed) {
  RewriteStats stats;
  const AqWord w{0, 0, 1, 3, 5, 5};
  EXPECT_EQ(normal_form(w, LaurentQ(1), RewriteStrategy::leftmost, &stats),
            AqElement::monomial(monomial_of_normal_word(w), LaurentQ(1)));
  EXPECT_EQ(stats.steps, 0u);
  EXPECT_THROW(normal_form({6}), UsageError);
}

TEST(Rewrite, MeasureDecreases) {
  EXPECT_LT(rewrite_measure({0, 3}), rewrite_measure({3, 0}));
  EXPECT_LT(rewrite_measure({}), rewrite_measure({3, 0}));
  EXPECT_LT(rewrite_measure({1, 4}), rewrite_measure({3, 0}));
}

TEST(Multiply, NumberOperatorSquared) {
  const AqElement n1 = aq("X1*d1");
  // Frozen from a hand reduction of X1 d1 X1 d1.
  const AqElement expected = aq("X1*d1 + q^2*X1^2*d1^2 + (q^3-q)*(X1*X2*d1*d2 + X1*X3*d1*d3)");
  EXPECT_EQ(multiply(n1, n1), expected);
  EXPECT_EQ(normal_form({0, 3, 0, 3}), expected);
  EXPECT_EQ(multiply(AqElement(1), n1), n1);
  EXPECT_EQ(multiply(n1, AqElement(1)), n1);
}

TEST(Multiply, BothStrategiesAgree) {
  const AqWord w{5, 4, 3, 2, 1, 0};
  RewriteStats left, right;
  const AqElement a = normal_form(w, LaurentQ(1), RewriteStrategy::leftmost, &left);
  const AqElement b = normal_form(w, LaurentQ(1), RewriteStrategy::rightmost, &right);
  EXPECT_EQ(a, b);
  EXPECT_GT(left.steps, 0u);
}

TEST(ClassicalLimit, MatchesWeylCompose) {
  const AqElement a = aq("d1*X1*d2 + alpha*q*X3");
  const AqElement b = aq("X1^2*X2 - q^-1*d3");
  const auto classical = [](std::string_view t) {
    return parse_diff_op<GaussianRational>(t, GaussianScalarBuilder{});
  };
  EXPECT_EQ(classical_limit(a), classical("d1*x1*d2 + x3"));
  EXPECT_EQ(classical_limit(a * b), compose(classical_limit(a), classical_limit(b)));
}

TEST(Text, RoundTrip) {
  const AqElement a = aq("(q^2-1)*X2*d2 + alpha*q^-3 - d1*X3");
  EXPECT_EQ(a.str(), "alpha*q^-3 - X2*d2 + q^2*X2*d2 - q*X3*d1");
  EXPECT_EQ(aq(a.str()), a);
  EXPECT_EQ(aq("0"), AqElement());
  EXPECT_EQ(AqElement().str(), "0");
  EXPECT_THROW(aq("X4"), ParseError);
  EXPECT_THROW(aq("X1^-1"), ParseError);
}

TEST(Text, PowersAndSubstitution) {
  EXPECT_EQ(pow(aq("d1"), 2) * aq("X1"), aq("d1*d1*X1"));
  EXPECT_EQ(aq("(q^2-1)*X2*d2").substitute(laurent::q_index, GaussianRational(1)), AqElement());
  EXPECT_THROW(pow(aq("d1"), -1), UsageError);
}

}  // namespace
}  // namespace qweyl
