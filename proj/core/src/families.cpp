#include "matchdiff/families.hpp"

#include "matchdiff/error.hpp"
#include "matchdiff/matchcount.hpp"
#include "matchdiff/parallel.hpp"
#include "matchdiff/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace matchdiff {

int GraphFamily::distinct_n() const {
  std::set<int> ns;
  for (const auto& m : members) ns.insert(m.graph.n());
  return static_cast<int>(ns.size());
}

BipGraph heawood_graph() {
  const int jumps[] = {5, -5};
  return from_lcf(jumps, 7);
}

BipGraph tutte_coxeter_graph() {
  const int jumps[] = {-13, -9, 7, -7, 9, 13};
  return from_lcf(jumps, 5);
}

BipGraph tutte_12cage_graph() {
  const int jumps[] = {17, 27, -13, -59, -35, 35, -11, 13, -53, 53, -27, 21, 57, 11, -21, -57, 59, -17};
  return from_lcf(jumps, 7);
}

int target_girth(int j, const QualificationPolicy& policy) {
  int g = policy.required_girth(j);
  if (g % 2) ++g;
  return std::max(g, 4);
}

namespace {

// Mian-Chowla greedy Sidon sequence: all pairwise differences distinct.
std::vector<int> sidon_set(int size) {
  std::vector<int> s{0};
  std::set<int> diffs;
  for (int c = 1; static_cast<int>(s.size()) < size; ++c) {
    std::set<int> fresh;
    bool ok = true;
    for (int x : s) {
      int d = c - x;
      if (diffs.count(d) || fresh.count(d)) {
        ok = false;
        break;
      }
      fresh.insert(d);
    }
    if (!ok) continue;
    diffs.insert(fresh.begin(), fresh.end());
    s.push_back(c);
  }
  return s;
}

// A second difference set, used by the secondary families.
std::vector<int> alt_sidon_set(int r) {
  switch (r) {
    case 3:
      return {0, 1, 5};
    case 4:
      return {0, 1, 5, 11};
    case 5:
      return {0, 2, 7, 8, 11};
    default: {
      auto s = sidon_set(r);
      for (int& x : s) x *= 2;
      s[0] = 1;
      std::sort(s.begin(), s.end());
      return s;
    }
  }
}

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

bool meets(const BipGraph& g, int girth_target) {
  auto gi = girth(g);
  return !gi || *gi >= girth_target;
}

double enumeration_work(const BipGraph& g, int j) {
  if (g.n() <= 16) return 0;
  double e = static_cast<double>(g.edge_count());
  double w = 1;
  for (int t = 0; t < j - 1; ++t) w *= (e - t) / (t + 1);
  return w;
}

int moore_start(int r, int girth_target) {
  if (girth_target <= 4) return r + 1;
  if (girth_target == 6) return r * r - r + 1;
  return r * r * r - 2 * r * r + 2 * r;
}

std::string tag(const std::string& kind, const BipGraph& g) {
  return kind + "[n=" + std::to_string(g.n()) + "," + g.id() + "]";
}

}  // namespace

// Consecutive failed sizes after which annealing gives up.
constexpr int kMaxMisses = 4;

GraphFamily primary_family(int r, int girth_target, int count, const FamilyOptions& opt) {
  GraphFamily fam;
  std::set<int> ns;
  if (girth_target <= 4) {
    fam.name = "permutation-model r=" + std::to_string(r);
    for (int n = r + 1; static_cast<int>(ns.size()) < count; ++n) {
      BipGraph g = gen_regular_bipartite(n, r, derive_seed(opt.seed, 1000 * r + n));
      fam.members.push_back({tag("random", g), g});
      ns.insert(n);
    }
    return fam;
  }
  if (girth_target == 6 && r >= 5) {
    auto s = sidon_set(r);
    fam.name = "cyclic-sidon r=" + std::to_string(r);
    for (int m = 2 * s.back() + 1; static_cast<int>(ns.size()) < count && m < 2 * s.back() + 200; ++m) {
      BipGraph g = cyclic_bipartite(m, s);
      if (!meets(g, girth_target)) continue;
      fam.members.push_back({tag("cyclic", g), g});
      ns.insert(m);
    }
  } else {
    fam.name = "annealed r=" + std::to_string(r) + " girth>=" + std::to_string(girth_target);
    int start = moore_start(r, girth_target);
    int misses = 0;
    for (int n = start; static_cast<int>(ns.size()) < count && n < start + count + 12 && misses < kMaxMisses; ++n) {
      auto g = girth_search(n, r, girth_target, derive_seed(opt.seed, 7919 * r + 104729 * girth_target + n),
                            opt.search_budget);
      if (!g) {
        ++misses;
        continue;
      }
      misses = 0;
      fam.members.push_back({tag("anneal", *g), *g});
      ns.insert(n);
    }
  }
  if (static_cast<int>(ns.size()) < count)
    throw BudgetError("could not build " + std::to_string(count) + " graphs for " + fam.name);
  return fam;
}

GraphFamily secondary_family(int r, int girth_target, int j, const FamilyOptions& opt) {
  GraphFamily fam;
  fam.name = "algebraic r=" + std::to_string(r) + " girth>=" + std::to_string(girth_target);
  std::vector<LabeledGraph> candidates;
  if (girth_target <= 6) {
    if (is_prime(r - 1)) candidates.push_back({"pg(" + std::to_string(r - 1) + ")", incidence_pg(r - 1)});
    auto s = alt_sidon_set(r);
    for (int m = s.back() + 1, added = 0; added < j + 1 && m < s.back() + 200; ++m) {
      BipGraph g = cyclic_bipartite(m, s);
      if (!meets(g, 6)) continue;
      candidates.push_back({tag("cyclic", g), g});
      ++added;
    }
    const BipGraph base = candidates.front().graph;
    for (int k = 2; k <= 3; ++k) {
      BipGraph lift = random_lift(base, k, derive_seed(opt.seed, 31 * k + r));
      candidates.push_back({tag("lift" + std::to_string(k), lift), lift});
    }
  } else {
    if (r == 3) {
      BipGraph tc = tutte_coxeter_graph();
      candidates.push_back({tag("tutte-coxeter", tc), tc});
      BipGraph heawood = heawood_graph();
      for (int k = 3; k <= 4; ++k)
        for (std::uint64_t s = 0; s < 400; ++s) {
          BipGraph lift = random_lift(heawood, k, derive_seed(opt.seed, 1000 * k + s));
          if (meets(lift, girth_target)) {
            candidates.push_back({tag("heawood-lift" + std::to_string(k), lift), lift});
            break;
          }
        }
      BipGraph tc2 = random_lift(tc, 2, derive_seed(opt.seed, 2));
      candidates.push_back({tag("tutte-coxeter-lift2", tc2), tc2});
    } else {
      GraphFamily low = secondary_family(r, 6, j, opt);
      for (int k = 2; k <= 4; ++k)
        for (std::uint64_t s = 0; s < 200; ++s) {
          BipGraph lift = random_lift(low.members.front().graph, k, derive_seed(opt.seed, 977 * k + s));
          if (meets(lift, girth_target)) {
            candidates.push_back({tag("lift" + std::to_string(k), lift), lift});
            break;
          }
        }
    }
  }
  for (auto& c : candidates)
    if (c.graph.r() == r && meets(c.graph, girth_target) && enumeration_work(c.graph, j) <= opt.max_work)
      fam.members.push_back(std::move(c));
  if (fam.members.empty()) throw BudgetError("no usable graphs for " + fam.name);
  return fam;
}

std::string InvarianceCheck::summary() const {
  std::ostringstream os;
  os << "invariance r=" << r << " j=" << j << ": " << secondary_members << " graphs of [" << secondary
     << "] satisfy the fit from [" << primary << "]";
  if (secondary_full_rank) os << "; independent solve identical";
  return os.str();
}

int DerivationConfig::j_max_for(int r) const {
  for (auto [rr, jj] : j_max)
    if (rr == r) return jj;
  return 4;
}

std::string DerivationConfig::key() const {
  std::ostringstream os;
  os << "r=";
  for (size_t t = 0; t < r_list.size(); ++t) os << (t ? "," : "") << r_list[t];
  os << " hmax=" << h_max << " sym=" << symbolic_through << " strict=" << (strict ? 1 : 0) << " seed=" << seed
     << " budget=" << search_budget << " jmax=";
  for (int r : r_list) os << r << ":" << j_max_for(r) << ";";
  return os.str();
}

namespace {

std::vector<CountRow> count_family(const GraphFamily& fam, int j) {
  std::vector<CountRow> rows(fam.members.size());
  MatchCountGuard guard;
  guard.threads = 1;
  guard.max_j = std::max(guard.max_j, j);
  parallel_for(fam.members.size(), [&](size_t t, unsigned) {
    const auto& m = fam.members[t];
    MatchVector mv = m.graph.n() <= 16 ? match_poly_full(m.graph) : match_count_upto(m.graph, j, guard);
    rows[t] = CountRow{m.graph.n(), mv[j], m.label};
  });
  return rows;
}

}  // namespace

DerivationResult derive_atable(const DerivationConfig& cfg, const ProgressFn& progress) {
  if (cfg.r_list.empty()) throw DomainError("derive_atable needs at least one r");
  if (cfg.h_max < 1) throw DomainError("derive_atable needs h_max >= 1");
  QualificationPolicy policy{cfg.strict};
  FamilyOptions opt;
  opt.seed = cfg.seed;
  opt.search_budget = cfg.search_budget;
  DerivationResult out;
  auto note = [&](const std::string& line) {
    out.log.push_back(line);
    if (progress) progress(line);
  };
  for (int r : cfg.r_list) {
    if (r < 2) throw DomainError("derive_atable needs r >= 2");
    for (int j = 2; j <= cfg.j_max_for(r); ++j) {
      int g = target_girth(j, policy);
      if (cfg.strict && (g > 8 || (g == 8 && r > 3))) {
        note("skip r=" + std::to_string(r) + " j=" + std::to_string(j) + ": strict girth " + std::to_string(g) +
             " is outside the constructible range");
        continue;
      }
      GraphFamily a, b;
      try {
        a = primary_family(r, g, j, opt);
        b = secondary_family(r, g, j, opt);
      } catch (const BudgetError& e) {
        if (!cfg.strict) throw;
        note("skip r=" + std::to_string(r) + " j=" + std::to_string(j) + ": " + e.what());
        continue;
      }
      auto rows_a = count_family(a, j);
      PointwiseFit fit = derive_M_from_counts(r, j, rows_a);
      auto rows_b = count_family(b, j);
      for (const auto& row : rows_b)
        if (!fit_predicts(fit, row))
          throw ConsistencyError("reconstruction invariance failed at r=" + std::to_string(r) + " j=" +
                                 std::to_string(j) + ": " + row.source + " has m_j=" + row.m_j.get_str() +
                                 " but the " + a.name + " fit predicts " + rat_str(predicted_m(fit, row.n)));
      InvarianceCheck inv{r, j, a.name, b.name, static_cast<int>(rows_b.size()), false};
      if (b.distinct_n() >= j) {
        PointwiseFit fit_b = derive_M_from_counts(r, j, rows_b);
        if (fit_b.a != fit.a) throw ConsistencyError("independent family solve differs at r=" + std::to_string(r));
        inv.secondary_full_rank = true;
      }
      std::ostringstream line;
      line << "r=" << r << " j=" << j << " girth>=" << g << " rows=" << rows_a.size() << " a=(";
      for (int h = 1; h < j; ++h) line << (h > 1 ? ", " : "") << rat_str(fit.a[h]);
      line << ")";
      note(line.str());
      note(inv.summary());
      out.invariance.push_back(inv);
      out.fits.push_back(std::move(fit));
    }
  }
  FitConfig fc;
  fc.h_max = cfg.h_max;
  fc.symbolic_through = cfg.strict ? 1 : cfg.symbolic_through;
  out.table = fit_atable(out.fits, fc);
  for (const auto& [h, entry] : out.table.symbolic_entries())
    note("a_" + std::to_string(h) + " = " + entry.first.to_string() + " [" + entry.second.detail + "]");
  return out;
}

std::filesystem::path cache_dir() {
  const char* env = std::getenv("MATCHDIFF_CACHE");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path("cache");
}

namespace {

std::string cache_name(const DerivationConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : cfg.key()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << "atable-" << std::hex << h << ".txt";
  return os.str();
}

}  // namespace

std::filesystem::path cache_file(const DerivationConfig& cfg, const std::filesystem::path& dir) {
  return dir / cache_name(cfg);
}

DerivationResult cached_atable(const DerivationConfig& cfg, const std::filesystem::path& dir,
                               const ProgressFn& progress) {
  const auto path = cache_file(cfg, dir);
  const std::string key_line = "# config " + cfg.key();
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    std::istringstream lines(text);
    std::string first;
    std::getline(lines, first);
    if (first == key_line) {
      DerivationResult out;
      out.table = parse_atable(text, true);
      for (std::string line; std::getline(lines, line);)
        if (line.rfind("# log ", 0) == 0) out.log.push_back(line.substr(6));
      out.from_cache = true;
      if (progress) progress("cache hit " + path.string());
      return out;
    }
  }
  DerivationResult out = derive_atable(cfg, progress);
  std::filesystem::create_directories(dir);
  std::ofstream file(path);
  if (!file) throw FormatError("cannot write cache file " + path.string());
  file << key_line << "\n";
  for (const auto& line : out.log) file << "# log " << line << "\n";
  file << format_atable(out.table);
  return out;
}

}  // namespace matchdiff
