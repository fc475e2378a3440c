#include "matchdiff/positivity.hpp"

#include "matchdiff/error.hpp"
#include "matchdiff/parallel.hpp"
#include "matchdiff/rng.hpp"

#include <mpfr.h>

#include <cmath>
#include <sstream>

namespace matchdiff {

std::vector<Rat> rho_vector(const MatchVector& m, int r) {
  const int n = m.max_size();
  if (n < 0 || r < 1) throw DomainError("rho_vector needs counts and r >= 1");
  MatchVector mbar = mbar_vector(2 * n, n);
  std::vector<Rat> rho;
  rho.reserve(static_cast<size_t>(n) + 1);
  Rat scale = ratio(2 * n - 1, r);
  Rat power = 1;
  for (int i = 0; i <= n; ++i) {
    if (m[i] <= 0) throw ConsistencyError("m_" + std::to_string(i) + " = " + m[i].get_str() + " is not positive");
    Rat v = ratio(m[i], mbar[i]) * power;
    rho.push_back(v);
    power *= scale;
  }
  return rho;
}

std::vector<Rat> rho_vector(const BipGraph& g) { return rho_vector(match_poly_full(g), g.r()); }

namespace {

void check_range(std::span<const Rat> rho, int i, int k) {
  if (i < 0 || k < 0 || static_cast<size_t>(i + k) >= rho.size())
    throw DomainError("need 0 <= i, 0 <= k, i + k <= n (i=" + std::to_string(i) + ", k=" + std::to_string(k) + ")");
}

struct Sides {
  Int num_plus = 1, den_plus = 1, num_minus = 1, den_minus = 1;
};

Sides sides(std::span<const Rat> rho, int i, int k) {
  check_range(rho, i, k);
  Sides s;
  for (int l = 0; l <= k; ++l) {
    const Rat& x = rho[static_cast<size_t>(i + l)];
    unsigned long e = binomial(k, l).get_ui();
    Int p, q;
    mpz_pow_ui(p.get_mpz_t(), x.get_num_mpz_t(), e);
    mpz_pow_ui(q.get_mpz_t(), x.get_den_mpz_t(), e);
    if ((k - l) % 2 == 0) {
      s.num_plus *= p;
      s.den_plus *= q;
    } else {
      s.num_minus *= p;
      s.den_minus *= q;
    }
  }
  return s;
}

}  // namespace

int delta_sign(std::span<const Rat> rho, int i, int k) {
  Sides s = sides(rho, i, k);
  int c = cmp(Int(s.num_plus * s.den_minus), Int(s.num_minus * s.den_plus));
  return (c > 0) - (c < 0);
}

Rat alpha0_exact(std::span<const Rat> rho, int i, int k) {
  Sides s = sides(rho, i, k);
  return ratio(s.num_plus, s.den_plus) - ratio(s.num_minus, s.den_minus);
}

Rat alpha0_exact(const BipGraph& g, int i, int k) {
  auto rho = rho_vector(g);
  return alpha0_exact(rho, i, k);
}

CertifiedLog certified_log(const Rat& x, int bits) {
  if (x <= 0) throw DomainError("log of a non-positive number");
  mpfr_t lo, hi, width;
  mpfr_inits2(bits, lo, hi, width, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(lo, x.get_mpq_t(), MPFR_RNDD);
  mpfr_log(lo, lo, MPFR_RNDD);
  mpfr_set_q(hi, x.get_mpq_t(), MPFR_RNDU);
  mpfr_log(hi, hi, MPFR_RNDU);
  mpfr_sub(width, hi, lo, MPFR_RNDU);
  CertifiedLog out;
  out.value = mpfr_get_d(lo, MPFR_RNDN);
  out.error_bound = mpfr_get_d(width, MPFR_RNDU) + std::abs(out.value) * 0x1.0p-53;
  char* text = nullptr;
  mpfr_asprintf(&text, "%.20Rg", lo);
  out.decimal = text;
  mpfr_free_str(text);
  mpfr_clears(lo, hi, width, static_cast<mpfr_ptr>(nullptr));
  return out;
}

CertifiedLog DProfile::d(int i) const {
  if (i < 0 || static_cast<size_t>(i) >= rho.size()) throw DomainError("d(i) needs 0 <= i <= n");
  return certified_log(rho[static_cast<size_t>(i)]);
}

CertifiedLog DProfile::delta(int i, int k) const {
  Sides s = sides(rho, i, k);
  return certified_log(ratio(s.num_plus * s.den_minus, s.num_minus * s.den_plus));
}

DProfile delta_table(const MatchVector& m, int r, std::string graph_id) {
  DProfile p;
  p.graph_id = std::move(graph_id);
  p.n = m.max_size();
  p.r = r;
  p.rho = rho_vector(m, r);
  if (p.rho[0] != 1 || (p.n >= 1 && p.rho[1] != 1))
    throw ConsistencyError("rho_0 = rho_1 = 1 fails on " + p.graph_id);
  p.sign.resize(static_cast<size_t>(p.n) + 1);
  for (int k = 0; k <= p.n; ++k)
    for (int i = 0; i + k <= p.n; ++i) p.sign[static_cast<size_t>(k)].push_back(delta_sign(p.rho, i, k));
  return p;
}

DProfile delta_table(const BipGraph& g) { return delta_table(match_poly_full(g), g.r(), g.id()); }

bool graph_positive(const DProfile& p) {
  for (const auto& row : p.sign)
    for (int s : row)
      if (s < 0) return false;
  return true;
}

SampleSet sample_graphs(int r, int n, int samples, std::uint64_t seed, unsigned threads) {
  if (samples < 1) throw DomainError("samples must be >= 1");
  if (n > kFullPolynomialCap) throw BudgetError("n = " + std::to_string(n) + " exceeds the exact-counting cap");
  SampleSet set;
  set.r = r;
  set.n = n;
  set.seed = seed;
  set.rho.resize(static_cast<size_t>(samples));
  std::vector<char> positive(static_cast<size_t>(samples));
  parallel_for(
      static_cast<size_t>(samples),
      [&](size_t s, unsigned) {
        BipGraph g = gen_regular_bipartite(n, r, derive_seed(seed, s));
        DProfile p = delta_table(match_poly_full(g), r, g.id());
        positive[s] = graph_positive(p);
        set.rho[s] = std::move(p.rho);
      },
      threads);
  set.positive.assign(positive.begin(), positive.end());
  return set;
}

namespace {

double binomial_se(const Rat& p, int samples) {
  double x = p.get_d();
  return std::sqrt(std::max(0.0, x * (1 - x)) / samples);
}

std::string rat_cell(const Rat& x) { return rat_str(x) + ";" + rat_decimal(x, 12); }

}  // namespace

double EnsembleStats::se_violation() const { return binomial_se(p_violation, samples); }
double EnsembleStats::se_graph_positive() const { return binomial_se(p_graph_positive, samples); }

std::string EnsembleStats::csv_header() {
  return "r,n,samples,seed,i,k,alpha_hat,beta_hat,cheb_bound,p_violation,p_graph_positive";
}

std::string EnsembleStats::csv_row() const {
  std::ostringstream os;
  os << r << "," << n << "," << samples << "," << seed << "," << i << "," << k << "," << rat_cell(alpha_hat) << ","
     << rat_cell(beta_hat) << "," << (cheb_bound ? rat_cell(*cheb_bound) : std::string("NA")) << ","
     << rat_cell(p_violation) << "," << rat_cell(p_graph_positive);
  return os.str();
}

EnsembleStats ensemble_stats(const SampleSet& set, int i, int k) {
  if (set.rho.empty()) throw DomainError("empty sample set");
  EnsembleStats st;
  st.r = set.r;
  st.n = set.n;
  st.samples = static_cast<int>(set.rho.size());
  st.seed = set.seed;
  st.i = i;
  st.k = k;
  Rat sum = 0, sum_sq = 0;
  long violations = 0, positives = 0;
  for (size_t s = 0; s < set.rho.size(); ++s) {
    Rat a = alpha0_exact(set.rho[s], i, k);
    sum += a;
    sum_sq += a * a;
    if (a < 0) ++violations;
    if (set.positive[s]) ++positives;
    st.alpha0.push_back(std::move(a));
  }
  const Rat count = st.samples;
  st.alpha_hat = sum / count;
  st.beta_hat = sum_sq / count - st.alpha_hat * st.alpha_hat;
  st.p_violation = ratio(violations, st.samples);
  st.p_graph_positive = ratio(positives, st.samples);
  if (st.alpha_hat != 0) st.cheb_bound = st.beta_hat / (st.alpha_hat * st.alpha_hat);
  return st;
}

EnsembleStats ensemble_run(int r, int n, int samples, int i, int k, std::uint64_t seed) {
  if (i < 0 || k < 0 || i + k > n) throw DomainError("ensemble_run needs i + k <= n");
  return ensemble_stats(sample_graphs(r, n, samples, seed), i, k);
}

TrendReport trend_from_sets(std::span<const SampleSet> sets, int i, int k) {
  TrendReport rep;
  for (const auto& set : sets) rep.rows.push_back(ensemble_stats(set, i, k));
  for (size_t t = 1; t < rep.rows.size(); ++t) {
    const auto& a = rep.rows[t - 1];
    const auto& b = rep.rows[t];
    double slack_v = 2 * std::hypot(a.se_violation(), b.se_violation());
    if (b.p_violation.get_d() > a.p_violation.get_d() + slack_v) rep.violation_nonincreasing = false;
    double slack_p = 2 * std::hypot(a.se_graph_positive(), b.se_graph_positive());
    if (b.p_graph_positive.get_d() < a.p_graph_positive.get_d() - slack_p) rep.positive_nondecreasing = false;
  }
  return rep;
}

TrendReport trend_report(int r, std::span<const int> n_list, int samples, int i, int k, std::uint64_t seed) {
  std::vector<SampleSet> sets;
  for (int n : n_list) {
    if (i + k > n) throw DomainError("trend_report needs i + k <= n for every n");
    sets.push_back(sample_graphs(r, n, samples, seed));
  }
  return trend_from_sets(sets, i, k);
}

std::string TrendReport::summary() const {
  std::ostringstream os;
  if (rows.empty()) return "empty trend";
  os << "r=" << rows.front().r << " i=" << rows.front().i << " k=" << rows.front().k << " p_violation";
  for (const auto& row : rows) os << " n" << row.n << ":" << rat_decimal(row.p_violation, 4);
  os << (violation_nonincreasing ? " non-increasing" : " INCREASING") << " (2 SE); p_graph_positive";
  for (const auto& row : rows) os << " n" << row.n << ":" << rat_decimal(row.p_graph_positive, 4);
  os << (positive_nondecreasing ? " non-decreasing" : " DECREASING") << " (2 SE)";
  return os.str();
}

}  // namespace matchdiff
