#include "matchdiff/error.hpp"
#include "matchdiff/identities.hpp"
#include "matchdiff/rng.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace matchdiff;

namespace {

const ATable& table() {
  static const ATable t = import_atable(std::filesystem::path(MATCHDIFF_TEST_DATA_DIR) / "atable_default.txt");
  return t;
}

// (1/((h+1)h))(r^{-h} - 2) as a Laurent polynomial in r.
RLaurent log_coefficient(int h) {
  RWindow w{-h, 0};
  return (RLaurent(Rat(-2), w) + RLaurent::monomial(Rat(1), -h, w)) * ratio(1, (h + 1) * h);
}

ATable corrupted_a2() {
  ATable bad;
  bad.set_symbolic(1, table().symbolic(1), {});
  RWindow w = table().symbolic(2).window();
  JPoly extra = JPoly::falling_factorial(3, RLaurent(Rat(1, 7), w)) * JPoly::monomial(RLaurent(Rat(1), w), 1);
  bad.set_symbolic(2, table().symbolic(2) + extra, {});
  return bad;
}

}  // namespace

TEST(Identities, LSplit) {
  auto [p3, m3] = lsplit(3);
  EXPECT_EQ(p3, (std::vector<int>{1, 3}));
  EXPECT_EQ(m3, (std::vector<int>{0, 2}));
  auto [p0, m0] = lsplit(0);
  EXPECT_EQ(p0, std::vector<int>{0});
  EXPECT_TRUE(m0.empty());
}

TEST(Identities, LogCoefficientsOfH) {
  for (int h = 1; h <= 2; ++h) {
    CheckReport rep = check_3_4_3_5(table(), h);
    EXPECT_TRUE(rep.pass) << rep.line();
    ASSERT_EQ(rep.extracted.size(), 1u);
    EXPECT_EQ(rep.extracted[0], log_coefficient(h));
  }
  CheckReport rep3 = check_3_4_3_5(table().at_r(3), 3);
  EXPECT_TRUE(rep3.pass) << rep3.line();
  EXPECT_EQ(rep3.extracted[0].coeff(0), Rat(1, 12) * (Rat(1, 27) - 2));
}

TEST(Identities, TopCoefficientOfLogF) {
  for (int k = 2; k <= 3; ++k) {
    CheckReport rep = check_thm72(table(), k);
    EXPECT_TRUE(rep.pass) << rep.line();
    RWindow w{-(k - 1), 0};
    EXPECT_EQ(rep.extracted[0], RLaurent::monomial(ratio(factorial(k - 2), factorial(k)), -(k - 1), w));
  }
  CheckReport rep4 = check_thm72(table().at_r(3), 4);
  EXPECT_TRUE(rep4.pass) << rep4.line();
  EXPECT_EQ(rep4.extracted[0].coeff(0), Rat(1, 324));
}

TEST(Identities, ClosedFormAtKThree) {
  CheckReport rep = check_eq75(table());
  EXPECT_TRUE(rep.pass) << rep.line();
  EXPECT_FALSE(check_eq75(corrupted_a2()).pass);
}

TEST(Identities, FiniteDifferenceOfMonomials) {
  for (int k = 0; k <= 6; ++k)
    for (int d = 0; d <= k; ++d) EXPECT_TRUE(check_fd_monomial(k, d).pass) << k << " " << d;
  EXPECT_EQ(check_fd_monomial(4, 4).value, "24");
}

TEST(Identities, FirstIdentity) {
  for (int r : {3, 4, 5})
    for (int k = 2; k <= 3; ++k)
      for (int i = 0; i <= 3; ++i) {
        CheckReport rep = check_first_identity(table(), r, i, k);
        EXPECT_TRUE(rep.pass) << rep.line();
        EXPECT_EQ(rep.value, rat_str(Rat(factorial(k - 2)) / pow(Rat(r), static_cast<unsigned long>(k - 1))));
      }
  CheckReport four = check_first_identity(table(), 3, 0, 4);
  EXPECT_TRUE(four.pass) << four.line();
  EXPECT_EQ(four.value, "2/27");
}

TEST(Identities, TCancellation) {
  for (int i = 0; i <= 3; ++i) {
    EXPECT_TRUE(check_t_cancellation(table(), 4, i, 3).pass);
    EXPECT_TRUE(check_t_cancellation(table().at_r(3), 3, i, 4).pass);
  }
}

TEST(Identities, AlphaZeroSeries) {
  for (int r : {3, 4, 5})
    for (int i = 0; i <= 3; ++i) {
      CheckReport k1 = check_alpha0_series(table(), r, i, 1, 1);
      EXPECT_TRUE(k1.pass) << k1.line();
      EXPECT_EQ(k1.value, rat_str(ratio(i, r)));
      CheckReport k0 = check_alpha0_series(table(), r, i, 0);
      EXPECT_TRUE(k0.pass) << k0.line();
      EXPECT_EQ(k0.value, rat_str(ratio(i * (i - 1), 2 * r)));
      for (int k = 2; k <= 3; ++k) EXPECT_TRUE(check_alpha0_series(table(), r, i, k).pass);
    }
}

TEST(Identities, SecondIdentityOnTable) {
  for (int k = 0; k <= 4; ++k)
    for (int i = 0; i <= 3; ++i) EXPECT_TRUE(check_second_identity(table(), 3, i, k, 2).pass);
}

class SyntheticSecondIdentity : public ::testing::TestWithParam<int> {};

TEST_P(SyntheticSecondIdentity, HoldsOnRandomSeries) {
  Rng rng(derive_seed(41, static_cast<std::uint64_t>(GetParam())));
  int k = GetParam() % 5;
  std::vector<JSeries> u;
  for (int l = 0; l <= k; ++l) u.push_back(random_proper_series(rng, 3));
  CheckReport rep = check_second_identity_synthetic(u, k);
  EXPECT_TRUE(rep.pass) << rep.line();
}

INSTANTIATE_TEST_SUITE_P(Seeds, SyntheticSecondIdentity, ::testing::Range(0, 50));

TEST(Identities, ConjectureValuesDoNotDependOnConstants) {
  CheckReport base = check_conjecture10(table(), {}, 2);
  ASSERT_TRUE(base.pass) << base.line();
  ASSERT_EQ(base.extracted.size(), 2u);
  EXPECT_EQ(base.extracted[0], log_coefficient(1));
  EXPECT_EQ(base.extracted[1], log_coefficient(2));
  ATable at3 = table().at_r(3);
  CheckReport base3 = check_conjecture10(at3, {}, 3);
  ASSERT_TRUE(base3.pass);
  Rng rng(42);
  for (int t = 0; t < 30; ++t) {
    ConjectureSpec spec = random_conjecture_spec(rng, 2);
    CheckReport rep = check_conjecture10(table(), spec, 2);
    EXPECT_TRUE(rep.pass) << rep.line();
    EXPECT_EQ(rep.extracted, base.extracted);
    CheckReport rep3 = check_conjecture10(at3, spec, 3);
    EXPECT_TRUE(rep3.pass) << rep3.line();
    EXPECT_EQ(rep3.extracted, base3.extracted);
  }
}

TEST(Identities, RandomSpecSampler) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    ConjectureSpec spec = random_conjecture_spec(rng, 2);
    ASSERT_GE(spec.terms.size(), 1u);
    ASSERT_LE(spec.terms.size(), 2u);
    for (const auto& term : spec.terms) {
      EXPECT_GE(term.z, 1);
      EXPECT_LE(term.z, 2);
      EXPECT_NE(term.c, 0);
      EXPECT_LE(abs(term.c.get_num()), 20);
      EXPECT_LE(term.c.get_den(), 12);
    }
  }
}

TEST(Identities, CorruptedTableFailsWithWitness) {
  ATable bad = corrupted_a2();
  CheckReport rep = check_3_4_3_5(bad, 2);
  EXPECT_FALSE(rep.pass);
  EXPECT_NE(rep.witness.find("j^"), std::string::npos) << rep.witness;
  CheckReport conj = check_conjecture10(bad, {{{1, Rat(3, 2)}}}, 2);
  EXPECT_FALSE(conj.pass);
  EXPECT_FALSE(conj.witness.empty());
}

TEST(Identities, MissingCoverageIsReported) {
  EXPECT_THROW(F_at(table(), 4, 6, 3), DomainError);
  SuiteOptions opt;
  opt.ids = {"eq7.5"};
  auto reports = run_core_suite(table(), opt);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].line().substr(0, 24), "eq7.5 r=sym i=- k=3 h=2 ");
}

TEST(Identities, CoreSuitePasses) {
  auto reports = run_core_suite(table(), {});
  EXPECT_GT(reports.size(), 150u);
  for (const auto& rep : reports) EXPECT_TRUE(rep.pass) << rep.line();
}
