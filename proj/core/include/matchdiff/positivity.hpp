#pragma once

#include "matchdiff/graph.hpp"
#include "matchdiff/matchcount.hpp"
#include "matchdiff/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace matchdiff {

/// rho_i = (m_i / mbar_i) ((v-1)/r)^i for i = 0..n, v = 2n.
std::vector<Rat> rho_vector(const MatchVector& m, int r);
std::vector<Rat> rho_vector(const BipGraph& g);

/// Sign of Delta^k d(i) in {-1, 0, 1}, by comparing the L+ and L- products
/// with integer cross-multiplication. Requires i + k < rho.size().
int delta_sign(std::span<const Rat> rho, int i, int k);

/// prod_{L+} rho_{i+l}^{C(k,l)} - prod_{L-} rho_{i+l}^{C(k,l)}.
Rat alpha0_exact(std::span<const Rat> rho, int i, int k);
Rat alpha0_exact(const BipGraph& g, int i, int k);

/// ln x enclosed in [lo, hi] at `bits` of precision. Display only.
struct CertifiedLog {
  double value = 0;
  double error_bound = 0;
  std::string decimal;  // 20 significant digits
};
CertifiedLog certified_log(const Rat& x, int bits = 256);

struct DProfile {
  std::string graph_id;
  int n = 0;
  int r = 0;
  std::vector<Rat> rho;
  /// sign[k][i] for i + k <= n.
  std::vector<std::vector<int>> sign;

  CertifiedLog d(int i) const;
  /// Delta^k d(i) = ln(prod_{L+} / prod_{L-}).
  CertifiedLog delta(int i, int k) const;
};

DProfile delta_table(const BipGraph& g);
DProfile delta_table(const MatchVector& m, int r, std::string graph_id);

/// Every Delta^k d(i) >= 0 with i + k <= n. Ties count as non-negative.
bool graph_positive(const DProfile& p);

/// Graphs of one ensemble, reduced to their rho vectors and positivity flags.
struct SampleSet {
  int r = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<Rat>> rho;
  std::vector<bool> positive;
};

/// Sample s uses gen_regular_bipartite(n, r, derive_seed(seed, s)).
SampleSet sample_graphs(int r, int n, int samples, std::uint64_t seed, unsigned threads = 0);

struct EnsembleStats {
  int r = 0;
  int n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  int i = 0;
  int k = 0;
  Rat alpha_hat;
  Rat beta_hat;
  Rat p_violation;
  Rat p_graph_positive;
  std::optional<Rat> cheb_bound;  // beta / alpha^2 when alpha != 0
  std::vector<Rat> alpha0;        // per sample, in sample order

  double se_violation() const;
  double se_graph_positive() const;

  static std::string csv_header();
  std::string csv_row() const;
};

/// Requires i + k <= n.
EnsembleStats ensemble_stats(const SampleSet& set, int i, int k);
EnsembleStats ensemble_run(int r, int n, int samples, int i, int k, std::uint64_t seed);

struct TrendReport {
  std::vector<EnsembleStats> rows;
  /// p_violation(n') <= p_violation(n) + 2 sqrt(se^2 + se'^2) for consecutive n < n'.
  bool violation_nonincreasing = true;
  /// p_graph_positive(n') >= p_graph_positive(n) - 2 sqrt(se^2 + se'^2).
  bool positive_nondecreasing = true;
  std::string summary() const;
};

TrendReport trend_report(int r, std::span<const int> n_list, int samples, int i, int k, std::uint64_t seed);
/// Same, reusing sample sets already drawn (one per n).
TrendReport trend_from_sets(std::span<const SampleSet> sets, int i, int k);

}  // namespace matchdiff
