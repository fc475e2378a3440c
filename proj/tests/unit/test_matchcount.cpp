#include "matchdiff/error.hpp"
#include "matchdiff/families.hpp"
#include "matchdiff/matchcount.hpp"
#include "matchdiff/rng.hpp"

#include <gtest/gtest.h>

using namespace matchdiff;

namespace {

std::vector<Int> ints(std::initializer_list<long> v) {
  std::vector<Int> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// Counts matchings by trying every edge subset.
std::vector<Int> subset_oracle(const BipGraph& g) {
  auto edges = g.edges();
  const size_t e = edges.size();
  std::vector<Int> m(static_cast<size_t>(g.n()) + 1, Int(0));
  for (unsigned long mask = 0; mask < (1UL << e); ++mask) {
    unsigned long left = 0, right = 0;
    bool ok = true;
    int size = 0;
    for (size_t t = 0; t < e && ok; ++t) {
      if (!(mask >> t & 1UL)) continue;
      unsigned long lb = 1UL << edges[t].left, rb = 1UL << edges[t].right;
      if ((left & lb) || (right & rb)) ok = false;
      left |= lb;
      right |= rb;
      ++size;
    }
    if (ok) ++m[static_cast<size_t>(size)];
  }
  return m;
}

}  // namespace

TEST(MatchCount, SmallFixtures) {
  EXPECT_EQ(match_poly_full(even_cycle(2)).counts(), ints({1, 4, 2}));
  EXPECT_EQ(match_poly_full(complete_bipartite(3)).counts(), ints({1, 9, 18, 6}));
  EXPECT_EQ(match_poly_full(even_cycle(3)).counts(), ints({1, 6, 9, 2}));
  EXPECT_EQ(match_poly_full(heawood_graph()).counts(), ints({1, 21, 168, 644, 1218, 1050, 336, 24}));
}

TEST(MatchCount, CompleteGraphClosedForm) {
  EXPECT_EQ(mbar_vector(4).counts(), ints({1, 6, 3}));
  for (int v = 0; v <= kBruteForceCap; v += 2) {
    MatchVector closed = mbar_vector(v);
    EXPECT_EQ(closed, match_poly_general_bruteforce(v, complete_graph_edges(v))) << "v=" << v;
    for (int i = 0; i <= v / 2; ++i)
      EXPECT_EQ(closed[i], factorial(v) / (factorial(v - 2 * i) * factorial(i) * (Int(1) << i)));
  }
  EXPECT_THROW(mbar_vector(5), DomainError);
}

TEST(MatchCount, AgreesWithSubsetOracle) {
  for (int s = 0; s < 12; ++s) {
    int n = 4 + s % 2, r = 2 + s % 2;
    BipGraph g = gen_regular_bipartite(n, r, derive_seed(21, static_cast<std::uint64_t>(s)));
    EXPECT_EQ(match_poly_full(g).counts(), subset_oracle(g));
  }
}

TEST(MatchCount, AgreesWithDeletionContraction) {
  for (int s = 0; s < 10; ++s) {
    BipGraph g = gen_regular_bipartite(5, 3, derive_seed(22, static_cast<std::uint64_t>(s)));
    std::vector<std::pair<int, int>> edges;
    for (const Edge& e : g.edges()) edges.emplace_back(e.left, 5 + e.right);
    EXPECT_EQ(match_poly_full(g), match_poly_general_bruteforce(10, edges));
  }
}

TEST(MatchCount, EnumerationMatchesDynamicProgram) {
  for (int s = 0; s < 8; ++s) {
    int n = 8 + s % 5, r = 3 + s % 2;
    BipGraph g = gen_regular_bipartite(n, r, derive_seed(23, static_cast<std::uint64_t>(s)));
    MatchVector full = match_poly_full(g);
    MatchVector upto = match_count_upto(g, 5);
    for (int i = 0; i <= 5; ++i) EXPECT_EQ(upto[i], full[i]) << "n=" << n << " i=" << i;
  }
  MatchVector hw = match_count_upto(heawood_graph(), 7);
  EXPECT_EQ(hw, match_poly_full(heawood_graph()));
}

TEST(MatchCount, BigIntegerFallback) {
  const int n = 20;
  MatchVector m = match_poly_full(complete_bipartite(n));
  for (int i = 0; i <= n; ++i) EXPECT_EQ(m[i], binomial(n, i) * binomial(n, i) * factorial(i)) << i;
  EXPECT_GT(m[15], Int("18446744073709551615"));
}

TEST(MatchCount, CountsArePositiveUpToN) {
  for (int s = 0; s < 20; ++s) {
    BipGraph g = gen_regular_bipartite(10, 3, derive_seed(24, static_cast<std::uint64_t>(s)));
    MatchVector m = match_poly_full(g);
    ASSERT_EQ(m.max_size(), 10);
    for (int i = 0; i <= 10; ++i) EXPECT_GE(m[i], 1);
    EXPECT_EQ(m[1], 30);
  }
}

TEST(MatchCount, Guards) {
  EXPECT_THROW(match_poly_full(complete_bipartite(5), 4), DomainError);
  MatchCountGuard guard;
  guard.max_j = 3;
  EXPECT_THROW(match_count_upto(heawood_graph(), 4, guard), DomainError);
}
