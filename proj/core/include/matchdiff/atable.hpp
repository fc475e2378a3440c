#pragma once

#include "matchdiff/graph.hpp"
#include "matchdiff/matchcount.hpp"
#include "matchdiff/poly.hpp"
#include "matchdiff/rational.hpp"
#include "matchdiff/series.hpp"

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace matchdiff {

enum class Origin { builtin, derived, imported };
std::string origin_name(Origin o);
Origin parse_origin(const std::string& text);

struct Provenance {
  Origin origin = Origin::derived;
  std::string detail;
};

struct PointKey {
  int r = 0;
  int j = 0;
  friend auto operator<=>(const PointKey&, const PointKey&) = default;
};

struct PointEntry {
  Rat value;
  Provenance provenance;
};

/// Coefficients a_h(r, j) of M_j = (n^j r^j / j!)(1 + sum_h a_h(r, j) / n^h).
/// Level h holds a symbolic JPoly in j (Laurent in r), pointwise values at
/// (r, j), or both; both must agree. Entries are checked on insertion:
/// j-degree at most 2h and a_h(r, j) = 0 for integer 0 <= j <= h.
class ATable {
 public:
  void set_symbolic(int h, const JPoly& a, Provenance p);
  void set_point(int h, int r, int j, const Rat& value, Provenance p);

  bool has_symbolic(int h) const { return symbolic_.count(h) != 0; }
  const JPoly& symbolic(int h) const;
  const Provenance& symbolic_provenance(int h) const;
  /// Largest H such that levels 1..H are all symbolic (0 if none).
  int symbolic_through() const;
  /// Largest level with any data.
  int max_level() const;

  /// a_h(r, j): symbolic evaluation, else a stored point, else 0 when j <= h.
  std::optional<Rat> value(int h, int r, int j) const;

  const std::map<int, std::pair<JPoly, Provenance>>& symbolic_entries() const { return symbolic_; }
  const std::map<int, std::map<PointKey, PointEntry>>& point_entries() const { return points_; }

  /// Set when the symbolic entries are only valid at one value of r.
  std::optional<int> fixed_r() const { return fixed_r_; }

  /// The table specialized at r: symbolic levels substituted, and levels with
  /// only pointwise data interpolated in j through the known roots. Extra
  /// points beyond those needed are held out and must agree exactly.
  ATable at_r(int r) const;

  /// Adds all entries of other; any disagreement is a ConsistencyError.
  void merge(const ATable& other);

  /// Marks every entry with the given origin.
  void set_origin(Origin o);

 private:
  void check_roots(int h, const JPoly& a) const;

  std::map<int, std::pair<JPoly, Provenance>> symbolic_;
  std::map<int, std::map<PointKey, PointEntry>> points_;
  std::optional<int> fixed_r_;
};

/// a_1 = j(j-1)(1/(2r) - 1).
JPoly a1_builtin();

/// Girth required to read M_j off a graph: girth > j, or > 2j in strict mode.
struct QualificationPolicy {
  bool strict = false;
  int required_girth(int j) const;
  bool qualifies(const BipGraph& g, int j) const;
};

struct CountRow {
  int n = 0;
  Int m_j;
  std::string source;
};

/// a_h(r, j) for h = 1..j-1 (index h of `a`; a[0] = 1).
struct PointwiseFit {
  int r = 0;
  int j = 0;
  std::vector<Rat> a;
  std::vector<std::string> sources;
  int rows = 0;
};

/// Solves m_j = (n^j r^j / j!)(1 + sum_{h<j} a_h / n^h) exactly from rows with
/// distinct n. Needs j - 1 distinct n plus one consistency row (j >= 2).
PointwiseFit derive_M_from_counts(int r, int j, std::span<const CountRow> rows);

/// Counts m_j on every graph (each must qualify) and calls
/// derive_M_from_counts.
PointwiseFit derive_M_pointwise(int r, int j, std::span<const BipGraph> family, const QualificationPolicy& policy = {},
                                const MatchCountGuard& guard = {});

/// True iff the row's m_j equals the value the fit predicts at its n.
bool fit_predicts(const PointwiseFit& fit, const CountRow& row);
Rat predicted_m(const PointwiseFit& fit, int n);

struct SymbolicFit {
  JPoly a;
  RWindow window;
  std::vector<PointKey> training;
  std::vector<PointKey> held_out;
};

/// Fits a_h(r, j) = j(j-1)...(j-h) q(r, j) with deg_j q <= h-1 and q Laurent
/// in r within a window, starting from `initial` and widening while the data
/// allow. Samples at j <= h carry no information and are ignored. At least
/// one sample must be held out and all held-out residuals must be zero.
SymbolicFit fit_symbolic(int h, const std::map<PointKey, Rat>& samples, RWindow initial);

struct FitConfig {
  int h_max = 3;
  int symbolic_through = 2;
};

/// Builds a table from pointwise fits: every fitted value becomes a point,
/// levels up to symbolic_through get symbolic entries, a_1 is checked
/// against a1_builtin.
ATable fit_atable(std::span<const PointwiseFit> fits, const FitConfig& cfg);

/// H_j = sum_{h=1}^{h_max} a_h(r, j) / n^h as a series of order h_max.
JSeries build_H(const ATable& table, int h_max);

struct ConjectureTerm {
  int z = 1;
  Rat c;
};

/// Formal constants attached to falling factorials of j; empty means plain H.
struct ConjectureSpec {
  std::vector<ConjectureTerm> terms;
  std::string to_string() const;
};

/// F = sum_s a_s(r,j)/n^s + sum_i c_i (j)_{z_i} (n r)^{-z_i} sum_s a_s(r, j - z_i)/n^s
/// with a_0 = 1, truncated at h_max.
JSeries build_F_conjecture(const ATable& table, const ConjectureSpec& spec, int h_max);

/// Text format: `atable version=1`, then `a h=<h> sym` followed by
/// `jpow rpow p/q` lines, or `a h=<h> point r=<r> j=<j> p/q`. Provenance
/// travels in `# provenance ...` comments.
std::string format_atable(const ATable& table);
/// Parses a table. With keep_origin false every entry is marked imported.
/// The a_1 level, when present, must equal a1_builtin.
ATable parse_atable(const std::string& text, bool keep_origin = false);
ATable import_atable(const std::filesystem::path& path);
void export_atable(const ATable& table, const std::filesystem::path& path);

}  // namespace matchdiff
