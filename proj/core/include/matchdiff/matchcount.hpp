#pragma once

#include "matchdiff/graph.hpp"
#include "matchdiff/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace matchdiff {

/// Exact matching counts m_0..m_J of one source graph.
class MatchVector {
 public:
  MatchVector() = default;
  MatchVector(std::vector<Int> counts, std::string source)
      : counts_(std::move(counts)), source_(std::move(source)) {}

  int max_size() const { return static_cast<int>(counts_.size()) - 1; }
  const Int& operator[](int i) const { return counts_.at(static_cast<size_t>(i)); }
  const std::vector<Int>& counts() const { return counts_; }
  const std::string& source() const { return source_; }

  /// Decimal integers separated by single spaces.
  std::string to_text() const;

  friend bool operator==(const MatchVector& a, const MatchVector& b) { return a.counts_ == b.counts_; }

 private:
  std::vector<Int> counts_;
  std::string source_;
};

inline constexpr int kFullPolynomialCap = 22;

/// Full matching polynomial by a subset dynamic program over right-side
/// subsets. Machine words with overflow detection, falling back to big
/// integers.
MatchVector match_poly_full(const BipGraph& g, int cap = kFullPolynomialCap);

struct MatchCountGuard {
  int max_j = 7;
  long max_edges = 200'000;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// m_0..m_J by ordered-edge enumeration: each matching is visited once as an
/// increasing edge sequence; the last level is counted in closed form.
MatchVector match_count_upto(const BipGraph& g, int J, const MatchCountGuard& guard = {});

/// Matching counts of the complete graph K_v: v! / ((v-2i)! i! 2^i).
MatchVector mbar_vector(int v, int J);
MatchVector mbar_vector(int v);

inline constexpr int kBruteForceCap = 10;

/// Deletion-contraction count m(G) = m(G - e) + x m(G - {u, w}) on a general
/// graph with v <= 10 vertices.
MatchVector match_poly_general_bruteforce(int v, const std::vector<std::pair<int, int>>& edges);
std::vector<std::pair<int, int>> complete_graph_edges(int v);

}  // namespace matchdiff
