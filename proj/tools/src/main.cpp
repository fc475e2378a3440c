#include "commands.hpp"

#include "matchdiff/error.hpp"
#include "matchdiff/families.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

using matchdiff::cli::RunConfig;

struct Flags {
  std::string r, n, i, k, suite, id, out;
  int hmax = 0, samples = 0, trials = -1;
  std::uint64_t seed = 1;
  bool strict = false;
};

struct Defaults {
  const char* r;
  const char* n;
  const char* i;
  const char* k;
  int hmax;
  int trials;
};

const std::map<std::string, Defaults>& command_defaults() {
  static const std::map<std::string, Defaults> d{
      {"derive-atable", {"3,4,5", "", "", "", 3, 0}},
      {"verify", {"3,4,5", "", "0..3", "0..4", 3, 50}},
      {"conjecture", {"3", "", "", "", 3, 100}},
      {"simulate", {"3", "6,8,10,12", "0..3", "0..3", 3, 0}},
      {"census", {"3", "6,8,10,12", "", "", 3, 0}},
  };
  return d;
}

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--r", f.r, "degree list, e.g. 3,4,5");
  sub->add_option("--n", f.n, "side sizes, e.g. 6,8..12");
  sub->add_option("--i", f.i, "i range, e.g. 0..3");
  sub->add_option("--k", f.k, "k range, e.g. 0..3");
  sub->add_option("--hmax", f.hmax, "largest 1/n order");
  sub->add_option("--samples", f.samples, "graphs per ensemble");
  sub->add_option("--seed", f.seed, "master seed");
  sub->add_option("--trials", f.trials, "random trials");
  sub->add_flag("--strict-girth", f.strict, "require girth > 2j for m_j");
  sub->add_option("--out", f.out, "machine-readable output file");
  sub->add_option("--suite", f.suite, "check suite (core)");
  sub->add_option("--id", f.id, "comma-separated check ids");
}

std::vector<int> list_or(const std::string& given, const char* fallback) {
  std::string text = given.empty() ? fallback : given;
  if (text.empty()) return {};
  return matchdiff::cli::parse_int_list(text);
}

RunConfig make_config(const std::string& command, const Flags& f) {
  const Defaults& d = command_defaults().at(command);
  RunConfig cfg;
  cfg.command = command;
  cfg.r_list = list_or(f.r, d.r);
  cfg.n_list = list_or(f.n, d.n);
  cfg.i_list = list_or(f.i, d.i);
  cfg.k_list = list_or(f.k, d.k);
  cfg.h_max = f.hmax > 0 ? f.hmax : d.hmax;
  cfg.samples = f.samples > 0 ? f.samples : 2000;
  cfg.seed = f.seed;
  cfg.trials = f.trials >= 0 ? f.trials : d.trials;
  cfg.strict_girth = f.strict;
  cfg.suite = f.suite;
  if (command == "verify" && f.id.empty() && cfg.suite.empty()) cfg.suite = "core";
  for (size_t start = 0; start < f.id.size();) {
    size_t comma = f.id.find(',', start);
    std::string item = f.id.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) cfg.ids.push_back(item);
    start = comma == std::string::npos ? f.id.size() : comma + 1;
  }
  cfg.cache_dir = matchdiff::cache_dir();
  cfg.out = f.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matchdiff: exact matching-count identities and graph positivity"};
  app.set_version_flag("--version", matchdiff::cli::version());
  app.require_subcommand(1);
  Flags flags;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, d] : command_defaults()) {
    (void)d;
    subs[name] = app.add_subcommand(name);
    add_flags(subs[name], flags);
  }
  subs["derive-atable"]->description("derive the a-table from graph families (cached)");
  subs["verify"]->description("run exact identity checks");
  subs["conjecture"]->description("test the formal-constant conjecture on random specs");
  subs["simulate"]->description("Monte Carlo ensemble statistics");
  subs["census"]->description("fraction of fully positive graphs per n");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : matchdiff::cli::kConfigError;
  }
  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;
  RunConfig cfg;
  try {
    cfg = make_config(command, flags);
  } catch (const matchdiff::Error& e) {
    std::cerr << "configuration: " << e.what() << "\n";
    return matchdiff::cli::kConfigError;
  }
  return matchdiff::cli::run(cfg, std::cout, std::cerr);
}
