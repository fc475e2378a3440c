#include "matchdiff/kseries.hpp"

#include <gtest/gtest.h>

using namespace matchdiff;

namespace {

// Value of a scalar ISeries at i = i0 and numeric n.
Rat eval_at(const ISeries& s, int i0, const Rat& n) {
  ISeries fixed = s.subst_j(Int(i0));
  Rat total = 0;
  for (int h = 0; h <= fixed.order(); ++h) total += fixed.coeff(0, h).coeff(0) / pow(n, static_cast<unsigned long>(h));
  return total;
}

}  // namespace

TEST(KSeries, BernoulliNumbers) {
  std::vector<Rat> want{Rat(1), Rat(-1, 2), Rat(1, 6), Rat(0), Rat(-1, 30), Rat(0), Rat(1, 42), Rat(0), Rat(-1, 30)};
  EXPECT_EQ(bernoulli(8), want);
}

TEST(KSeries, StirlingConstants) {
  EXPECT_EQ(stirling_c(1), Rat(-1, 24));
  EXPECT_EQ(stirling_c(3), Rat(1, 2880));
  EXPECT_THROW(stirling_c(2), std::exception);
}

TEST(KSeries, GTopCoefficients) {
  const int order = 5;
  ISeries g = build_G(order);
  for (int h = 1; h <= order; ++h) {
    const JPoly& p = g.at(h);
    EXPECT_EQ(p.degree(), h + 1) << h;
    EXPECT_EQ(p.coeff(h + 1).coeff(0), ratio(2, h * (h + 1))) << h;
  }
}

TEST(KSeries, VanishesAtZeroAndOne) {
  ISeries k = build_K(5);
  for (int i : {0, 1})
    for (int h = 0; h <= 5; ++h) EXPECT_TRUE(k.subst_j(Int(i)).at(h).is_zero()) << "i=" << i << " h=" << h;
}

TEST(KSeries, ExactValues) {
  EXPECT_EQ(k_exact(6, 0), Rat(1));
  EXPECT_EQ(k_exact(6, 1), Rat(1));
  // (v-1)^2 (v-2*2)! (2n)^2 / v! at v = 6: 25 * 2 * 36 / 720
  EXPECT_EQ(k_exact(6, 2), Rat(5, 2));
}

class KSeriesConvergence : public ::testing::TestWithParam<int> {};

TEST_P(KSeriesConvergence, TruncationErrorScales) {
  const int i = GetParam();
  const int order = 4;
  ISeries k = build_K(order) + ISeries::one(order);
  auto scaled_error = [&](long n) {
    Rat diff = k_exact(2 * n, i) - eval_at(k, i, Rat(n));
    return Rat(diff * pow(Rat(n), static_cast<unsigned long>(order + 1))).get_d();
  };
  double a = scaled_error(4000), b = scaled_error(8000);
  EXPECT_NEAR(a, b, 0.01 * std::abs(b) + 1e-9) << "i=" << i;
}

INSTANTIATE_TEST_SUITE_P(SmallI, KSeriesConvergence, ::testing::Values(2, 3, 4));
