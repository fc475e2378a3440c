#include "matchdiff/error.hpp"
#include "matchdiff/positivity.hpp"
#include "matchdiff/rng.hpp"

#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>

using namespace matchdiff;

namespace {

// sum_l (-1)^(k-l) C(k,l) ln rho_{i+l} at 256 bits.
int oracle_sign(const std::vector<Rat>& rho, int i, int k, double* magnitude) {
  mpfr_t acc, term, x;
  mpfr_inits2(256, acc, term, x, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(acc, 1);
  for (int l = 0; l <= k; ++l) {
    const Rat& v = rho[static_cast<size_t>(i + l)];
    mpfr_set_q(x, v.get_mpq_t(), MPFR_RNDN);
    mpfr_log(term, x, MPFR_RNDN);
    Int c = binomial(k, l);
    mpfr_mul_z(term, term, c.get_mpz_t(), MPFR_RNDN);
    if ((k - l) % 2 == 0)
      mpfr_add(acc, acc, term, MPFR_RNDN);
    else
      mpfr_sub(acc, acc, term, MPFR_RNDN);
  }
  *magnitude = std::fabs(mpfr_get_d(acc, MPFR_RNDN));
  int s = mpfr_sgn(acc);
  mpfr_clears(acc, term, x, static_cast<mpfr_ptr>(nullptr));
  return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

}  // namespace

TEST(Positivity, RhoOfK33) {
  auto rho = rho_vector(complete_bipartite(3));
  EXPECT_EQ(rho, (std::vector<Rat>{Rat(1), Rat(1), Rat(10, 9), Rat(50, 27)}));
  EXPECT_EQ(alpha0_exact(complete_bipartite(3), 1, 1), Rat(1, 9));
  EXPECT_EQ(alpha0_exact(rho, 0, 2), Rat(10, 9) - 1);
}

TEST(Positivity, FourCycleIsPositive) {
  DProfile p = delta_table(even_cycle(2));
  EXPECT_EQ(p.rho, (std::vector<Rat>{Rat(1), Rat(1), Rat(3, 2)}));
  EXPECT_TRUE(graph_positive(p));
  EXPECT_EQ(p.sign[2][0], 1);
  EXPECT_NEAR(p.delta(0, 2).value, std::log(1.5), 1e-15);
}

TEST(Positivity, FirstTwoValuesVanish) {
  for (int s = 0; s < 100; ++s) {
    int r = 3 + s % 2, n = r + 1 + s % (13 - r);
    BipGraph g = gen_regular_bipartite(n, r, derive_seed(51, static_cast<std::uint64_t>(s)));
    DProfile p = delta_table(g);
    EXPECT_EQ(p.rho[0], 1);
    EXPECT_EQ(p.rho[1], 1);
    EXPECT_EQ(p.d(0).value, 0.0);
    EXPECT_EQ(p.d(1).value, 0.0);
    EXPECT_EQ(p.sign[0][0], 0);
    EXPECT_EQ(p.sign[0][1], 0);
  }
}

TEST(Positivity, SignsAgreeWithHighPrecisionLogs) {
  Rng rng(52);
  int checked = 0;
  while (checked < 1000) {
    int r = 3 + static_cast<int>(rng.below(2));
    int n = r + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(12 - r)));
    BipGraph g = gen_regular_bipartite(n, r, rng.next());
    auto rho = rho_vector(g);
    int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
    int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - k + 1)));
    double magnitude = 0;
    int want = oracle_sign(rho, i, k, &magnitude);
    int got = delta_sign(rho, i, k);
    if (magnitude < 1e-60)
      EXPECT_EQ(got, 0) << g.id() << " i=" << i << " k=" << k;
    else
      EXPECT_EQ(got, want) << g.id() << " i=" << i << " k=" << k;
    ++checked;
  }
}

TEST(Positivity, CertifiedLogEnclosesValue) {
  CertifiedLog l = certified_log(Rat(10, 9));
  EXPECT_LE(std::fabs(static_cast<long double>(l.value) - 0.10536051565782630122750098084L), l.error_bound);
  EXPECT_LT(l.error_bound, 1e-16);
  EXPECT_EQ(l.decimal.substr(0, 12), "0.1053605156");
  EXPECT_THROW(certified_log(Rat(0)), Error);
}

TEST(Positivity, EnsembleIsReproducible) {
  EnsembleStats a = ensemble_run(3, 8, 200, 2, 2, 9);
  EnsembleStats b = ensemble_run(3, 8, 200, 2, 2, 9);
  EXPECT_EQ(a.csv_row(), b.csv_row());
  EXPECT_EQ(a.alpha0, b.alpha0);
  EnsembleStats c = ensemble_run(3, 8, 200, 2, 2, 10);
  EXPECT_NE(a.alpha0, c.alpha0);
}

TEST(Positivity, SingleSampleHasZeroVariance) {
  EnsembleStats st = ensemble_run(3, 8, 1, 1, 3, 4);
  EXPECT_EQ(st.beta_hat, 0);
  EXPECT_EQ(st.samples, 1);
}

TEST(Positivity, MomentsMatchRecomputation) {
  SampleSet set = sample_graphs(3, 10, 300, 5);
  ASSERT_EQ(set.rho.size(), 300u);
  for (int s = 0; s < 300; s += 37) {
    BipGraph g = gen_regular_bipartite(10, 3, derive_seed(5, static_cast<std::uint64_t>(s)));
    EXPECT_EQ(set.rho[static_cast<size_t>(s)], rho_vector(g));
    EXPECT_EQ(set.positive[static_cast<size_t>(s)], graph_positive(delta_table(g)));
  }
  for (auto [i, k] : {std::pair{2, 2}, std::pair{1, 3}, std::pair{3, 4}}) {
    EnsembleStats st = ensemble_stats(set, i, k);
    Rat sum = 0, sum_sq = 0;
    int violations = 0;
    for (const auto& rho : set.rho) {
      Rat a = alpha0_exact(rho, i, k);
      sum += a;
      sum_sq += a * a;
      if (a < 0) ++violations;
    }
    Rat mean = sum / 300;
    EXPECT_EQ(st.alpha_hat, mean);
    EXPECT_EQ(st.beta_hat, sum_sq / 300 - mean * mean);
    EXPECT_EQ(st.p_violation, ratio(violations, 300));
    EXPECT_GE(st.beta_hat, 0);
  }
}

TEST(Positivity, LowOrderAlphaIsGraphIndependent) {
  SampleSet set = sample_graphs(3, 9, 100, 6);
  for (int i = 0; i <= 3; ++i)
    for (int k = 0; i + k <= 3; ++k) {
      EnsembleStats st = ensemble_stats(set, i, k);
      EXPECT_EQ(st.beta_hat, 0) << i << " " << k;
      EXPECT_EQ(st.p_violation, 0) << i << " " << k;
    }
}

TEST(Positivity, ZeroOrderLowIndexNeverViolates) {
  for (int i = 0; i <= 1; ++i) {
    EnsembleStats st = ensemble_run(4, 7, 50, i, 0, 3);
    EXPECT_EQ(st.p_violation, 0);
    EXPECT_EQ(st.alpha_hat, 0);
  }
}

TEST(Positivity, TrendReportAndGuards) {
  std::vector<int> ns{6, 8};
  TrendReport rep = trend_report(3, ns, 100, 1, 2, 1);
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_NE(rep.summary().find("p_violation"), std::string::npos);
  EXPECT_EQ(EnsembleStats::csv_header().substr(0, 8), "r,n,samp");
  EXPECT_THROW(ensemble_run(3, 6, 10, 4, 3, 1), Error);
  EXPECT_THROW(sample_graphs(3, kFullPolynomialCap + 1, 1, 1), BudgetError);
}
