#include "matchdiff/matchcount.hpp"

#include "matchdiff/error.hpp"
#include "matchdiff/parallel.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <sstream>

namespace matchdiff {

std::string MatchVector::to_text() const {
  std::ostringstream os;
  for (size_t i = 0; i < counts_.size(); ++i) os << (i ? " " : "") << counts_[i].get_str();
  return os.str();
}

namespace {

Int from_u128(unsigned __int128 v) {
  Int hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  Int lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  return (hi << 64) + lo;
}

bool subset_dp_u64(const BipGraph& g, std::vector<Int>& out) {
  const int n = g.n();
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<std::uint64_t> a(static_cast<size_t>(full) + 1, 0);
  a[0] = 1;
  for (int v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    for (std::uint32_t s = full; s > 0; --s) {
      if (std::popcount(s) > v + 1) continue;
      std::uint64_t acc = a[s];
      for (int u : nb) {
        std::uint32_t bit = std::uint32_t{1} << u;
        if ((s & bit) && __builtin_add_overflow(acc, a[s ^ bit], &acc)) return false;
      }
      a[s] = acc;
    }
  }
  std::vector<unsigned __int128> sums(n + 1, 0);
  for (std::uint32_t s = 0; s <= full; ++s) sums[std::popcount(s)] += a[s];
  out.clear();
  for (auto v : sums) out.push_back(from_u128(v));
  return true;
}

void subset_dp_big(const BipGraph& g, std::vector<Int>& out) {
  const int n = g.n();
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<Int> a(static_cast<size_t>(full) + 1, 0);
  a[0] = 1;
  for (int v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    for (std::uint32_t s = full; s > 0; --s) {
      if (std::popcount(s) > v + 1) continue;
      for (int u : nb) {
        std::uint32_t bit = std::uint32_t{1} << u;
        if (s & bit) a[s] += a[s ^ bit];
      }
    }
  }
  out.assign(n + 1, 0);
  for (std::uint32_t s = 0; s <= full; ++s) out[std::popcount(s)] += a[s];
}

}  // namespace

MatchVector match_poly_full(const BipGraph& g, int cap) {
  if (g.n() > cap || g.n() > 30)
    throw DomainError("match_poly_full: n=" + std::to_string(g.n()) + " exceeds cap " + std::to_string(cap));
  std::vector<Int> counts;
  if (!subset_dp_u64(g, counts)) subset_dp_big(g, counts);
  return MatchVector(std::move(counts), g.id());
}

namespace {

struct EdgeEnumerator {
  const BipGraph& g;
  int J;
  long edge_count;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> right_edges;  // sorted edge indices per right vertex

  explicit EdgeEnumerator(const BipGraph& graph, int j) : g(graph), J(j), edge_count(graph.edge_count()) {
    edges = g.edges();
    right_edges.resize(g.n());
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) right_edges[edges[e].right].push_back(e);
  }

  struct State {
    std::vector<char> used_left, used_right;
    std::vector<int> left_stack, right_stack;
    std::vector<std::uint64_t> counts;
  };

  State make_state() const {
    State s;
    s.used_left.assign(g.n(), 0);
    s.used_right.assign(g.n(), 0);
    s.counts.assign(J + 1, 0);
    return s;
  }

  // Free edges with index >= start, given the current partial matching.
  std::uint64_t free_edges_from(const State& s, int start) const {
    const int r = g.r();
    long total = edge_count - start;
    long touching = 0;
    for (int u : s.left_stack) {
      int lo = u * r;
      for (int e = lo; e < lo + r; ++e)
        if (e >= start) {
          ++touching;
          if (s.used_right[edges[e].right]) --touching;  // counted again below
        }
    }
    for (int w : s.right_stack)
      for (int e : right_edges[w])
        if (e >= start) ++touching;
    return static_cast<std::uint64_t>(total - touching);
  }

  void descend(State& s, int start, int depth) const {
    ++s.counts[depth];
    if (depth == J) return;
    if (depth == J - 1) {
      s.counts[J] += free_edges_from(s, start);
      return;
    }
    for (int e = start; e < edge_count; ++e) {
      const Edge& ed = edges[e];
      if (s.used_left[ed.left] || s.used_right[ed.right]) continue;
      take(s, ed);
      descend(s, e + 1, depth + 1);
      release(s, ed);
    }
  }

  static void take(State& s, const Edge& e) {
    s.used_left[e.left] = 1;
    s.used_right[e.right] = 1;
    s.left_stack.push_back(e.left);
    s.right_stack.push_back(e.right);
  }
  static void release(State& s, const Edge& e) {
    s.used_left[e.left] = 0;
    s.used_right[e.right] = 0;
    s.left_stack.pop_back();
    s.right_stack.pop_back();
  }
};

}  // namespace

MatchVector match_count_upto(const BipGraph& g, int J, const MatchCountGuard& guard) {
  if (J < 0) throw DomainError("match_count_upto: J must be non-negative");
  if (J > guard.max_j) throw DomainError("match_count_upto: J=" + std::to_string(J) + " exceeds guard");
  if (g.edge_count() > guard.max_edges) throw DomainError("match_count_upto: edge count exceeds guard");
  std::vector<Int> counts(J + 1, 0);
  counts[0] = 1;
  if (J == 0) return MatchVector(std::move(counts), g.id());

  EdgeEnumerator en(g, J);
  unsigned threads = guard.threads == 0 ? default_threads() : guard.threads;
  std::vector<EdgeEnumerator::State> states;
  for (unsigned t = 0; t < threads; ++t) states.push_back(en.make_state());
  parallel_for(
      static_cast<size_t>(en.edge_count),
      [&](size_t first, unsigned worker) {
        auto& s = states[worker];
        const Edge& e = en.edges[first];
        EdgeEnumerator::take(s, e);
        en.descend(s, static_cast<int>(first) + 1, 1);
        EdgeEnumerator::release(s, e);
      },
      threads);
  for (const auto& s : states)
    for (int d = 1; d <= J; ++d) counts[d] += Int(static_cast<unsigned long>(s.counts[d]));
  return MatchVector(std::move(counts), g.id());
}

MatchVector mbar_vector(int v, int J) {
  if (v < 0 || v % 2 != 0) throw DomainError("mbar_vector requires an even vertex count");
  if (J < 0 || J > v / 2) throw DomainError("mbar_vector requires 0 <= J <= v/2");
  std::vector<Int> counts;
  for (int i = 0; i <= J; ++i) {
    Int num = factorial(v);
    Int den = factorial(v - 2 * i) * factorial(i);
    den <<= i;
    counts.push_back(num / den);
  }
  return MatchVector(std::move(counts), "complete-graph v=" + std::to_string(v));
}

MatchVector mbar_vector(int v) { return mbar_vector(v, v / 2); }

MatchVector match_poly_general_bruteforce(int v, const std::vector<std::pair<int, int>>& edges) {
  if (v < 0 || v > kBruteForceCap) throw DomainError("match_poly_general_bruteforce: v exceeds cap 10");
  for (auto [a, b] : edges)
    if (a < 0 || b < 0 || a >= v || b >= v || a == b) throw DomainError("bad edge in brute-force input");
  std::map<std::pair<size_t, std::uint32_t>, std::vector<Int>> memo;
  // m(G) over edges idx.. with alive-vertex mask: drop edge idx, or take it.
  auto rec = [&](auto&& self, size_t idx, std::uint32_t alive) -> std::vector<Int> {
    if (idx == edges.size()) return {Int(1)};
    auto key = std::make_pair(idx, alive);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Int> out = self(self, idx + 1, alive);
    auto [a, b] = edges[idx];
    std::uint32_t ends = (std::uint32_t{1} << a) | (std::uint32_t{1} << b);
    if ((alive & ends) == ends) {
      auto with = self(self, idx + 1, alive & ~ends);
      if (out.size() < with.size() + 1) out.resize(with.size() + 1, 0);
      for (size_t t = 0; t < with.size(); ++t) out[t + 1] += with[t];
    }
    memo.emplace(key, out);
    return out;
  };
  auto counts = rec(rec, 0, (std::uint32_t{1} << v) - 1);
  counts.resize(static_cast<size_t>(v / 2 + 1), 0);
  return MatchVector(std::move(counts), "bruteforce v=" + std::to_string(v));
}

std::vector<std::pair<int, int>> complete_graph_edges(int v) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b) out.push_back({a, b});
  return out;
}

}  // namespace matchdiff
