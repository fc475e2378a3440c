#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace matchdiff {

struct Edge {
  int left = 0;
  int right = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple bipartite graph with n vertices per side, every vertex of degree r.
/// Left and right vertices are indexed 0..n-1 independently; adjacency is
/// stored as sorted right-neighbor lists per left vertex. Immutable.
class BipGraph {
 public:
  /// Validates simplicity, index range and r-regularity on both sides.
  BipGraph(int n, int r, std::vector<std::vector<int>> neighbors);
  static BipGraph from_edges(int n, int r, std::span<const Edge> edges);

  int n() const { return n_; }
  int r() const { return r_; }
  int vertex_count() const { return 2 * n_; }
  long edge_count() const { return static_cast<long>(n_) * r_; }

  std::span<const int> neighbors(int left) const {
    return {adj_.data() + static_cast<size_t>(left) * r_, static_cast<size_t>(r_)};
  }
  bool has_edge(int left, int right) const;
  std::vector<Edge> edges() const;
  std::vector<std::vector<int>> right_neighbors() const;
  /// Adjacency over unified ids: left u -> u, right w -> n + w.
  std::vector<std::vector<int>> unified_adjacency() const;

  std::uint64_t fingerprint() const;
  std::string id() const;

  friend bool operator==(const BipGraph& a, const BipGraph& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.adj_ == b.adj_;
  }

 private:
  int n_;
  int r_;
  std::vector<int> adj_;
};

/// Union of r independent uniform perfect matchings, rejected and redrawn
/// whenever a repeated edge appears. Deterministic in (n, r, seed).
BipGraph gen_regular_bipartite(int n, int r, std::uint64_t seed, long retry_budget = 50'000'000);

/// Shortest cycle length via BFS from every vertex; nullopt for a forest.
std::optional<int> girth(const BipGraph& g);

inline constexpr int kCycleCensusMax = 12;

/// Exact number of cycles of each even length 4..s_max (s_max <= 12).
std::map<int, std::uint64_t> cycle_census(const BipGraph& g, int s_max);

/// Point-line incidence graph of the projective plane over GF(q), q prime.
BipGraph incidence_pg(int q);

/// k-fold covering graph: every base edge becomes a uniformly random perfect
/// matching between the two fibers. Left (u, a) has index u*k + a.
BipGraph random_lift(const BipGraph& g, int k, std::uint64_t seed);

/// Annealing over 2-edge switches that minimizes a weighted count of cycles
/// shorter than target_girth. Returns nullopt when the budget (switch
/// proposals) runs out.
std::optional<BipGraph> girth_search(int n, int r, int target_girth, std::uint64_t seed, long budget);

/// Left i adjacent to right (i + d) mod m for d in offsets.
BipGraph cyclic_bipartite(int m, std::span<const int> offsets);

/// Cubic graph from LCF notation over a Hamiltonian cycle of even length;
/// even cycle positions become left vertices.
BipGraph from_lcf(std::span<const int> jumps, int repeats);

BipGraph complete_bipartite(int n);
/// The cycle of length 2n as a 2-regular bipartite graph.
BipGraph even_cycle(int n);

/// Text format: `bipartite n=<n> r=<r>` then one `u v` line per edge; `#`
/// starts a comment.
BipGraph load_graph(const std::filesystem::path& path);
BipGraph parse_graph(const std::string& text);
void save_graph(const BipGraph& g, const std::filesystem::path& path);
std::string format_graph(const BipGraph& g);

}  // namespace matchdiff
