#pragma once

#include "matchdiff/atable.hpp"
#include "matchdiff/graph.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace matchdiff {

struct LabeledGraph {
  std::string label;
  BipGraph graph;
};

struct GraphFamily {
  std::string name;
  std::vector<LabeledGraph> members;
  int distinct_n() const;
};

/// Heawood, Tutte-Coxeter and the Tutte 12-cage from their LCF codes.
BipGraph heawood_graph();
BipGraph tutte_coxeter_graph();
BipGraph tutte_12cage_graph();

struct FamilyOptions {
  std::uint64_t seed = 1;
  long search_budget = 400'000;
  /// Members whose m_j enumeration would visit more than this many
  /// (j-1)-subsets of edges are skipped.
  double max_work = 4e8;
};

/// Even girth needed to qualify for m_j under the policy.
int target_girth(int j, const QualificationPolicy& policy);

/// Annealed (or, for r >= 5, cyclic difference-set) graphs with consecutive
/// side sizes; at least `count` distinct n. Throws BudgetError when not
/// enough graphs can be built.
GraphFamily primary_family(int r, int girth, int count, const FamilyOptions& opt);

/// Algebraic constructions and random lifts of them: incidence graphs,
/// cyclic graphs, cages. Structurally independent of primary_family.
GraphFamily secondary_family(int r, int girth, int j, const FamilyOptions& opt);

struct InvarianceCheck {
  int r = 0;
  int j = 0;
  std::string primary;
  std::string secondary;
  int secondary_members = 0;
  bool secondary_full_rank = false;
  std::string summary() const;
};

struct DerivationConfig {
  std::vector<int> r_list{3, 4, 5};
  int h_max = 3;
  int symbolic_through = 2;
  bool strict = false;
  std::uint64_t seed = 1;
  long search_budget = 400'000;
  /// Largest j derived at each r; r not listed uses 4.
  std::vector<std::pair<int, int>> j_max{{3, 7}, {4, 5}, {5, 5}};
  int j_max_for(int r) const;
  /// Stable text used for the cache key and provenance headers.
  std::string key() const;
};

struct DerivationResult {
  ATable table;
  std::vector<PointwiseFit> fits;
  std::vector<InvarianceCheck> invariance;
  std::vector<std::string> log;
  bool from_cache = false;
};

using ProgressFn = std::function<void(const std::string&)>;

/// Builds both families for every (r, j), fits M_j from the primary family,
/// requires every secondary member to satisfy the fit (and, when the
/// secondary family is itself full rank, an identical solution), then fits
/// the table. In strict mode (r, j) pairs whose girth target exceeds 8, or
/// equals 8 with r > 3, are skipped and logged.
DerivationResult derive_atable(const DerivationConfig& cfg, const ProgressFn& progress = {});

/// MATCHDIFF_CACHE or ./cache.
std::filesystem::path cache_dir();

/// Loads the table for cfg from dir when present; otherwise derives it and
/// writes it there.
/// Cache file used by cached_atable for cfg under dir.
std::filesystem::path cache_file(const DerivationConfig& cfg, const std::filesystem::path& dir);

DerivationResult cached_atable(const DerivationConfig& cfg, const std::filesystem::path& dir,
                               const ProgressFn& progress = {});

}  // namespace matchdiff
