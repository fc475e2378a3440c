#pragma once

#include "matchdiff/atable.hpp"
#include "matchdiff/rng.hpp"
#include "matchdiff/series.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace matchdiff {

/// Outcome of one exact check. r = 0 means symbolic in r; -1 marks a field
/// that does not apply.
struct CheckReport {
  std::string id;
  int r = -1;
  int i = -1;
  int k = -1;
  int h = -1;
  std::string spec;
  bool pass = true;
  std::string witness;  // empty iff pass
  std::string value;    // informational, e.g. the extracted coefficient
  std::vector<RLaurent> extracted;

  void fail(const std::string& why);
  /// `<id> r=<r> i=<i> k=<k> h=<h> PASS|FAIL [witness]`
  std::string line() const;
  static std::string csv_header();
  std::string csv_row() const;
};

/// Parity split of 0..k: L+ holds the l with the parity of k.
std::pair<std::vector<int>, std::vector<int>> lsplit(int k);

/// F_i = (1 + H_i)(1 + K_i) with i in the polynomial slot.
JSeries build_F(const ATable& table, int h_max);

/// F_i at integer i and fixed r, from symbolic or pointwise table values.
JSeries F_at(const ATable& table, int r, int i, int order);

/// On ln(1 + H): [j^k n^-h] = 0 for k >= h+2 and
/// [j^{h+1} n^-h] = (1/((h+1)h))(1/r^h - 2).
CheckReport check_3_4_3_5(const ATable& table, int h);

/// [n^-(k-1)] ln F has i-degree k with top coefficient (k-2)!/k! r^{-(k-1)}.
CheckReport check_thm72(const ATable& table, int k);
/// The full k = 3 polynomial -(1/12) s (3r^2 s - 3r^2 - 12rs - 2s^2 + 12r + 9s - 7)/r^2.
CheckReport check_eq75(const ATable& table);

/// sum_l C(k,l)(-1)^{l+k} [n^-(k-1)] sum_{m=1}^{k-1} (-1)^{m+1}(F_{i+l}-1)^m/m = (k-2)!/r^{k-1}.
CheckReport check_first_identity(const ATable& table, int r, int i, int k);

/// sum_l C(k,l)(-1)^{l+k} l^d = 0 for d < k and k! for d = k.
CheckReport check_fd_monomial(int k, int d);

/// t = sum_{l in L(sign)} C(k,l) ln(1 + U_{i0+l}) with U = F - 1, to `order`.
JSeries build_t(const ATable& table, int r, int i0, int k, bool plus, int order);

/// [n^-s] t+ = [n^-s] t- for 1 <= s <= k-2, and [n^-(k-1)](t+ - t-) = (k-2)!/r^{k-1}.
CheckReport check_t_cancellation(const ATable& table, int r, int i, int k);

/// prod_{l in L} (1 + U_{i+l})^{C(k,l)} = exp(t) for both signs.
CheckReport check_second_identity(const ATable& table, int r, int i, int k, int order);
/// The same identity on arbitrary proper series u[0..k].
CheckReport check_second_identity_synthetic(const std::vector<JSeries>& u, int k);

/// Random proper series with zero constant term: small rational coefficients,
/// j-degree <= 2, r-exponents within [-1, 1].
JSeries random_proper_series(Rng& rng, int order);

/// alpha_0 = prod_{L+} F^{C(k,l)} - prod_{L-} F^{C(k,l)} (empty product 1).
JSeries alpha0_series(const ATable& table, int r, int i, int k, int order);
/// Vanishing below n^-(k-1) and the leading coefficient: i/r for k = 1,
/// (k-2)!/r^{k-1} for k >= 2. For k = 0 the literal product convention gives
/// F_i - 1, whose leading coefficient i(i-1)/(2r) is reported and compared.
CheckReport check_alpha0_series(const ATable& table, int r, int i, int k, int extra_order = 0);

/// Builds F with formal constants, takes ln, and checks both coefficient
/// families for every h <= h_max. The [j^{h+1} n^-h] values are returned in
/// `extracted` (index h-1).
CheckReport check_conjecture10(const ATable& table, const ConjectureSpec& spec, int h_max);

/// Seeded random spec: 1 or 2 terms, z in 1..z_max, c = p/q with |p| <= 20,
/// 1 <= q <= 12, p != 0.
ConjectureSpec random_conjecture_spec(Rng& rng, int z_max);

struct SuiteOptions {
  std::vector<int> r_list{3, 4, 5};
  int i_max = 3;
  int k_max = 4;
  /// r at which pointwise a_3 data is used.
  int pointwise_r = 3;
  std::vector<std::string> ids;  // empty = all
};

/// The core verification suite over the given table.
std::vector<CheckReport> run_core_suite(const ATable& table, const SuiteOptions& opt);

}  // namespace matchdiff
