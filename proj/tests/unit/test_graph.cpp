#include "matchdiff/error.hpp"
#include "matchdiff/families.hpp"
#include "matchdiff/graph.hpp"
#include "matchdiff/rng.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <functional>
#include <set>

using namespace matchdiff;

namespace {

std::filesystem::path data_dir() { return MATCHDIFF_TEST_DATA_DIR; }

void expect_regular(const BipGraph& g) {
  std::vector<int> right(static_cast<size_t>(g.n()), 0);
  std::set<std::pair<int, int>> seen;
  for (int u = 0; u < g.n(); ++u) {
    ASSERT_EQ(static_cast<int>(g.neighbors(u).size()), g.r());
    for (int w : g.neighbors(u)) {
      ++right[static_cast<size_t>(w)];
      EXPECT_TRUE(seen.insert({u, w}).second);
    }
  }
  for (int d : right) EXPECT_EQ(d, g.r());
}

// Simple cycles of length len, each counted once, by DFS from its smallest vertex.
long brute_cycles(const BipGraph& g, int len) {
  auto adj = g.unified_adjacency();
  const int v = static_cast<int>(adj.size());
  long count = 0;
  std::vector<int> path;
  std::vector<char> used(static_cast<size_t>(v), 0);
  std::function<void(int)> dfs = [&](int x) {
    if (static_cast<int>(path.size()) == len) {
      for (int y : adj[static_cast<size_t>(x)])
        if (y == path.front()) ++count;
      return;
    }
    for (int y : adj[static_cast<size_t>(x)]) {
      if (used[static_cast<size_t>(y)] || y < path.front()) continue;
      used[static_cast<size_t>(y)] = 1;
      path.push_back(y);
      dfs(y);
      path.pop_back();
      used[static_cast<size_t>(y)] = 0;
    }
  };
  for (int s = 0; s < v; ++s) {
    path = {s};
    used.assign(static_cast<size_t>(v), 0);
    used[static_cast<size_t>(s)] = 1;
    dfs(s);
  }
  return count / 2;
}

}  // namespace

TEST(Graph, PermutationModelIsRegularAndDeterministic) {
  for (int r : {3, 4})
    for (int n = r; n <= 12; ++n) {
      BipGraph g = gen_regular_bipartite(n, r, derive_seed(3, static_cast<std::uint64_t>(n)));
      expect_regular(g);
      EXPECT_EQ(g, gen_regular_bipartite(n, r, derive_seed(3, static_cast<std::uint64_t>(n))));
    }
  EXPECT_THROW(gen_regular_bipartite(2, 3, 1), DomainError);
}

TEST(Graph, KnownGirths) {
  EXPECT_EQ(girth(complete_bipartite(3)), 4);
  EXPECT_EQ(girth(even_cycle(5)), 10);
  EXPECT_EQ(girth(heawood_graph()), 6);
  EXPECT_EQ(girth(tutte_coxeter_graph()), 8);
  EXPECT_EQ(girth(tutte_12cage_graph()), 12);
  BipGraph pg3 = incidence_pg(3);
  EXPECT_EQ(pg3.n(), 13);
  EXPECT_EQ(pg3.r(), 4);
  EXPECT_EQ(girth(pg3), 6);
  EXPECT_THROW(incidence_pg(4), DomainError);
}

TEST(Graph, CycleCensusMatchesBruteForce) {
  auto k33 = cycle_census(complete_bipartite(3), 6);
  EXPECT_EQ(k33[4], 9u);
  EXPECT_EQ(k33[6], 6u);
  for (const BipGraph& g : {heawood_graph(), gen_regular_bipartite(6, 3, 9), gen_regular_bipartite(7, 3, 10)}) {
    auto census = cycle_census(g, 10);
    for (int len = 4; len <= 10; len += 2) EXPECT_EQ(static_cast<long>(census[len]), brute_cycles(g, len)) << len;
  }
}

TEST(Graph, LiftsKeepGirthAndDegree) {
  BipGraph base = heawood_graph();
  for (int k : {2, 3}) {
    BipGraph lift = random_lift(base, k, 17);
    expect_regular(lift);
    EXPECT_EQ(lift.n(), k * base.n());
    EXPECT_GE(*girth(lift), 6);
  }
}

TEST(Graph, CyclicSidonGraphHasGirthSix) {
  std::vector<int> offsets{0, 1, 3};
  BipGraph g = cyclic_bipartite(7, offsets);
  expect_regular(g);
  EXPECT_EQ(girth(g), 6);
}

TEST(Graph, ShippedDataFiles) {
  struct Case {
    const char* file;
    int n;
    int girth;
  };
  for (const Case& c : {Case{"heawood.bg", 7, 6}, Case{"tutte_coxeter.bg", 15, 8}, Case{"tutte_12cage.bg", 63, 12}}) {
    BipGraph g = load_graph(data_dir() / c.file);
    expect_regular(g);
    EXPECT_EQ(g.n(), c.n);
    EXPECT_EQ(g.r(), 3);
    EXPECT_EQ(girth(g), c.girth) << c.file;
  }
}

TEST(Graph, TextFormatRoundTripAndErrors) {
  BipGraph g = gen_regular_bipartite(9, 4, 4);
  EXPECT_EQ(parse_graph(format_graph(g)), g);
  EXPECT_THROW(parse_graph("bipartite n=2\n0 0\n"), FormatError);
  EXPECT_THROW(parse_graph("bipartite n=2 r=1\n0 0\n0 1\n"), Error);
  EXPECT_THROW(parse_graph("bipartite n=2 r=1\n0 0\n0 0\n"), Error);
}

TEST(Graph, FingerprintSeparatesGraphs) {
  EXPECT_NE(gen_regular_bipartite(10, 3, 1).fingerprint(), gen_regular_bipartite(10, 3, 2).fingerprint());
  EXPECT_EQ(heawood_graph().fingerprint(), heawood_graph().fingerprint());
}
