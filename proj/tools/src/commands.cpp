#include "commands.hpp"

#include "matchdiff/error.hpp"
#include "matchdiff/families.hpp"
#include "matchdiff/identities.hpp"
#include "matchdiff/positivity.hpp"
#include "matchdiff/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace matchdiff::cli {

namespace {

ProgressFn progress_to(std::ostream& log) {
  return [&log](const std::string& line) { log << line << "\n" << std::flush; };
}

DerivationConfig table_config(const RunConfig& cfg) {
  DerivationConfig d;
  d.strict = cfg.strict_girth;
  return d;
}

ATable load_table(const RunConfig& cfg, std::ostream& log) {
  return cached_atable(table_config(cfg), cfg.cache_dir, progress_to(log)).table;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.empty()) return;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw FormatError("cannot write " + path.string());
  file << content;
}

// The symbolic table where it reaches the requested order, else the table
// specialized at r with interpolated pointwise levels.
class TableView {
 public:
  explicit TableView(const ATable& base) : base_(base) {}
  const ATable& for_order(int order, int r) {
    if (order <= base_.symbolic_through()) return base_;
    auto it = fixed_.find(r);
    if (it == fixed_.end()) it = fixed_.emplace(r, base_.at_r(r)).first;
    return it->second;
  }
  const ATable& base() const { return base_; }
  /// Whether the table holds data through `order` at r.
  bool covers(int order, int r) {
    try {
      return for_order(order, r).symbolic_through() >= order;
    } catch (const Error&) {
      return false;
    }
  }

 private:
  const ATable& base_;
  std::map<int, ATable> fixed_;
};

template <class Fn>
void guarded(std::vector<CheckReport>& out, CheckReport proto, Fn&& fn) {
  try {
    out.push_back(fn());
  } catch (const Error& e) {
    proto.fail(e.what());
    out.push_back(proto);
  }
}

CheckReport proto(const std::string& id, int r, int i, int k, int h) {
  CheckReport p;
  p.id = id;
  p.r = r;
  p.i = i;
  p.k = k;
  p.h = h;
  return p;
}

std::vector<CheckReport> run_id(TableView& view, const std::string& id, const RunConfig& cfg, std::ostream& log) {
  std::vector<CheckReport> out;
  auto available = [&](int order, int r) {
    if (view.covers(order, r)) return true;
    log << "skip " << id << " r=" << r << " h=" << order << ": no a_" << order << " data at r=" << r << "\n";
    return false;
  };
  const ATable& table = view.base();
  const int sym = table.symbolic_through();
  if (id == "eq3.4-3.5") {
    for (int h = 1; h <= cfg.h_max; ++h) {
      if (h <= sym) {
        guarded(out, proto(id, 0, -1, -1, h), [&] { return check_3_4_3_5(table, h); });
        continue;
      }
      for (int r : cfg.r_list)
        if (available(h, r))
          guarded(out, proto(id, r, -1, -1, h), [&] { return check_3_4_3_5(view.for_order(h, r), h); });
    }
  } else if (id == "thm7.2") {
    for (int k : cfg.k_list) {
      if (k < 2 || k - 1 > cfg.h_max) continue;
      if (k - 1 <= sym) {
        guarded(out, proto(id, 0, -1, k, k - 1), [&] { return check_thm72(table, k); });
        continue;
      }
      for (int r : cfg.r_list)
        if (available(k - 1, r))
          guarded(out, proto(id, r, -1, k, k - 1), [&] { return check_thm72(view.for_order(k - 1, r), k); });
    }
  } else if (id == "eq7.5") {
    guarded(out, proto(id, 0, -1, 3, 2), [&] { return check_eq75(table); });
  } else if (id == "fd-monomial") {
    for (int k : cfg.k_list)
      for (int d = 0; d <= k; ++d) out.push_back(check_fd_monomial(k, d));
  } else if (id == "first-identity" || id == "t-cancellation") {
    for (int r : cfg.r_list)
      for (int k : cfg.k_list) {
        if (k < 2 || !available(k - 1, r)) continue;
        for (int i : cfg.i_list)
          guarded(out, proto(id, r, i, k, k - 1), [&] {
            const ATable& t = view.for_order(k - 1, r);
            return id == "first-identity" ? check_first_identity(t, r, i, k) : check_t_cancellation(t, r, i, k);
          });
      }
  } else if (id == "alpha0") {
    for (int r : cfg.r_list)
      for (int k : cfg.k_list) {
        const int order = std::max(k - 1, 1);
        if (!available(order, r)) continue;
        for (int i : cfg.i_list)
          guarded(out, proto(id, r, i, k, order),
                  [&] { return check_alpha0_series(view.for_order(order, r), r, i, k); });
      }
  } else if (id == "second-identity") {
    const int order = std::min(cfg.h_max, 2);
    for (int r : cfg.r_list)
      for (int k : cfg.k_list)
        for (int i : cfg.i_list)
          guarded(out, proto(id, r, i, k, order), [&] { return check_second_identity(table, r, i, k, order); });
  } else if (id == "second-identity-synthetic") {
    for (int t = 0; t < cfg.trials; ++t) {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
      int k = cfg.k_list[static_cast<size_t>(t) % cfg.k_list.size()];
      std::vector<JSeries> u;
      for (int l = 0; l <= k; ++l) u.push_back(random_proper_series(rng, cfg.h_max));
      CheckReport rep = check_second_identity_synthetic(u, k);
      rep.spec = "trial=" + std::to_string(t);
      out.push_back(rep);
    }
  } else if (id == "conjecture10") {
    guarded(out, proto(id, 0, -1, -1, std::min(cfg.h_max, sym)),
            [&] { return check_conjecture10(table, {}, std::min(cfg.h_max, sym)); });
    if (cfg.h_max > sym)
      for (int r : cfg.r_list)
        if (available(cfg.h_max, r))
          guarded(out, proto(id, r, -1, -1, cfg.h_max),
                  [&] { return check_conjecture10(view.for_order(cfg.h_max, r), {}, cfg.h_max); });
  }
  return out;
}

int report_checks(const RunConfig& cfg, const std::vector<CheckReport>& reports, std::ostream& out) {
  std::ostringstream csv;
  csv << cfg.header() << CheckReport::csv_header() << "\n";
  int failed = 0;
  for (const auto& rep : reports) {
    out << rep.line() << "\n";
    csv << rep.csv_row() << "\n";
    if (!rep.pass) ++failed;
  }
  out << reports.size() << " checks, " << failed << " failed\n";
  write_file(cfg.out, csv.str());
  return failed == 0 ? kOk : kCheckFailure;
}

}  // namespace

int cmd_derive_atable(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  DerivationConfig d;
  d.r_list = cfg.r_list;
  d.h_max = cfg.h_max;
  d.strict = cfg.strict_girth;
  d.seed = cfg.seed;
  DerivationResult res = cached_atable(d, cfg.cache_dir, progress_to(log));
  out << cfg.header();
  for (const auto& line : res.log) out << "log " << line << "\n";
  int code = kOk;
  if (res.table.has_symbolic(1) && res.table.symbolic(1) == a1_builtin()) {
    out << "self-check a_1 = j(j-1)(1/(2r) - 1) PASS\n";
  } else {
    out << "self-check a_1 = j(j-1)(1/(2r) - 1) FAIL\n";
    code = kCheckFailure;
  }
  if (cfg.strict_girth) {
    DerivationConfig policy = d;
    policy.strict = false;
    ATable loose = cached_atable(policy, cfg.cache_dir, progress_to(log)).table;
    int shared = 0, differ = 0;
    for (const auto& [h, level] : res.table.point_entries())
      for (const auto& [key, entry] : level) {
        auto other = loose.value(h, key.r, key.j);
        if (!other) continue;
        ++shared;
        if (*other != entry.value) {
          ++differ;
          out << "strict/policy mismatch a_" << h << "(r=" << key.r << ", j=" << key.j << "): " << rat_str(entry.value)
              << " vs " << rat_str(*other) << "\n";
        }
      }
    out << "strict-girth cross-check: " << shared << " shared values, " << differ << " differ "
        << (differ == 0 ? "PASS" : "FAIL") << "\n";
    if (differ) code = kCheckFailure;
  }
  std::string text = format_atable(res.table);
  out << text;
  write_file(cfg.out, cfg.header() + text);
  return code;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  ATable table = load_table(cfg, log);
  out << cfg.header();
  std::vector<CheckReport> reports;
  if (cfg.ids.empty()) {
    SuiteOptions opt;
    opt.r_list = cfg.r_list;
    opt.i_max = cfg.i_list.back();
    opt.k_max = cfg.k_list.back();
    reports = run_core_suite(table, opt);
  } else {
    TableView view(table);
    for (const auto& id : cfg.ids) {
      auto part = run_id(view, id, cfg, log);
      reports.insert(reports.end(), part.begin(), part.end());
    }
  }
  return report_checks(cfg, reports, out);
}

int cmd_conjecture(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  ATable table = load_table(cfg, log);
  out << cfg.header();
  TableView view(table);
  const int hs = std::min(cfg.h_max, table.symbolic_through());
  if (hs < 1) throw DomainError("the table has no symbolic levels");
  std::vector<std::pair<std::optional<int>, CheckReport>> bases;
  bases.emplace_back(std::nullopt, check_conjecture10(table, {}, hs));
  if (cfg.h_max > hs)
    for (int r : cfg.r_list) {
      if (!view.covers(cfg.h_max, r)) {
        log << "skip conjecture10 r=" << r << " h=" << cfg.h_max << ": no a_" << cfg.h_max << " data at r=" << r << "\n";
        continue;
      }
      bases.emplace_back(r, check_conjecture10(view.for_order(cfg.h_max, r), {}, cfg.h_max));
    }
  std::vector<CheckReport> reports;
  for (const auto& [r, base] : bases) reports.push_back(base);
  const int z_max = std::min(2, hs);
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    ConjectureSpec spec = random_conjecture_spec(rng, z_max);
    for (const auto& [r, base] : bases) {
      const ATable& source = r ? view.for_order(cfg.h_max, *r) : table;
      CheckReport rep = check_conjecture10(source, spec, r ? cfg.h_max : hs);
      if (rep.extracted != base.extracted) rep.fail("extracted values differ from the empty spec");
      reports.push_back(rep);
    }
  }
  return report_checks(cfg, reports, out);
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  out << cfg.header() << "domain: i + k <= n; ties count as non-negative\n";
  std::ostringstream csv;
  csv << cfg.header() << EnsembleStats::csv_header() << "\n";
  for (int r : cfg.r_list) {
    std::vector<SampleSet> sets;
    for (int n : cfg.n_list) {
      log << "sampling r=" << r << " n=" << n << "\n" << std::flush;
      sets.push_back(sample_graphs(r, n, cfg.samples, cfg.seed));
    }
    for (int i : cfg.i_list)
      for (int k : cfg.k_list) {
        std::vector<SampleSet> valid;
        for (const auto& s : sets)
          if (i + k <= s.n) valid.push_back(s);
        if (valid.empty()) continue;
        TrendReport trend = trend_from_sets(valid, i, k);
        for (const auto& row : trend.rows) {
          out << "r=" << r << " n=" << row.n << " i=" << i << " k=" << k
              << " n*alpha_hat=" << rat_decimal(row.alpha_hat * row.n, 6)
              << " beta_hat=" << rat_decimal(row.beta_hat, 12) << " p_violation=" << rat_decimal(row.p_violation, 4)
              << " cheb=" << (row.cheb_bound ? rat_decimal(*row.cheb_bound, 6) : std::string("NA")) << "\n";
          csv << row.csv_row() << "\n";
        }
        out << "trend " << trend.summary() << "\n";
      }
  }
  write_file(cfg.out, csv.str());
  return kOk;
}

int cmd_census(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  out << cfg.header() << "domain: i + k <= n; ties count as non-negative\n";
  std::ostringstream csv;
  csv << cfg.header() << "r,n,samples,seed,positive,p_graph_positive,se\n";
  bool ok = true;
  for (int r : cfg.r_list) {
    std::vector<SampleSet> sets;
    for (int n : cfg.n_list) {
      log << "sampling r=" << r << " n=" << n << "\n" << std::flush;
      sets.push_back(sample_graphs(r, n, cfg.samples, cfg.seed));
    }
    TrendReport trend = trend_from_sets(sets, 0, 0);
    for (size_t t = 0; t < trend.rows.size(); ++t) {
      const EnsembleStats& row = trend.rows[t];
      long positive = std::count(sets[t].positive.begin(), sets[t].positive.end(), true);
      out << "r=" << r << " n=" << row.n << " positive=" << positive << "/" << row.samples
          << " fraction=" << rat_decimal(row.p_graph_positive, 4) << " se=" << row.se_graph_positive() << "\n";
      csv << r << "," << row.n << "," << row.samples << "," << row.seed << "," << positive << ","
          << rat_str(row.p_graph_positive) << ";" << rat_decimal(row.p_graph_positive, 12) << ","
          << row.se_graph_positive() << "\n";
    }
    out << "r=" << r << " positivity fraction " << (trend.positive_nondecreasing ? "non-decreasing" : "DECREASING")
        << " over n within 2 SE: " << (trend.positive_nondecreasing ? "PASS" : "FAIL") << "\n";
    ok = ok && trend.positive_nondecreasing;
  }
  write_file(cfg.out, csv.str());
  return ok ? kOk : kCheckFailure;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  try {
    cfg.validate();
    if (cfg.command == "derive-atable") return cmd_derive_atable(cfg, out, log);
    if (cfg.command == "verify") return cmd_verify(cfg, out, log);
    if (cfg.command == "conjecture") return cmd_conjecture(cfg, out, log);
    if (cfg.command == "simulate") return cmd_simulate(cfg, out, log);
    if (cfg.command == "census") return cmd_census(cfg, out, log);
    throw DomainError("unknown command '" + cfg.command + "'");
  } catch (const BudgetError& e) {
    log << "budget: " << e.what() << "\n";
    return kBudgetError;
  } catch (const ConsistencyError& e) {
    log << "check failed: " << e.what() << "\n";
    return kCheckFailure;
  } catch (const DomainError& e) {
    log << "configuration: " << e.what() << "\n";
    return kConfigError;
  } catch (const FormatError& e) {
    log << "configuration: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kCheckFailure;
  }
}

}  // namespace matchdiff::cli
