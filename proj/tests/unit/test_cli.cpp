#include "commands.hpp"
#include "run_config.hpp"

#include "matchdiff/error.hpp"
#include "matchdiff/families.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace matchdiff;
using namespace matchdiff::cli;

namespace {

std::filesystem::path data_dir() { return MATCHDIFF_TEST_DATA_DIR; }

// A cache directory holding the shipped default table.
std::filesystem::path seeded_cache() {
  auto dir = std::filesystem::temp_directory_path() / "matchdiff_cli_cache";
  std::filesystem::create_directories(dir);
  std::filesystem::copy_file(data_dir() / "atable_default.txt", cache_file(DerivationConfig{}, dir),
                             std::filesystem::copy_options::overwrite_existing);
  return dir;
}

RunConfig base(const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  cfg.r_list = {3};
  cfg.n_list = {6, 8};
  cfg.i_list = {0, 1, 2};
  cfg.k_list = {0, 1, 2};
  cfg.samples = 50;
  cfg.cache_dir = seeded_cache();
  return cfg;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, IntegerLists) {
  EXPECT_EQ(parse_int_list("3"), std::vector<int>{3});
  EXPECT_EQ(parse_int_list("5,3,4,3"), (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(parse_int_list("0..3"), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(parse_int_list("6,8..10"), (std::vector<int>{6, 8, 9, 10}));
  EXPECT_EQ(format_int_list({0, 1, 2, 3}), "0,1,2,3");
  for (const char* bad : {"", "x", "3..1", "1,,2", "1..", "2.5"}) EXPECT_THROW(parse_int_list(bad), DomainError) << bad;
}

TEST(Cli, Validation) {
  RunConfig ok = base("simulate");
  EXPECT_NO_THROW(ok.validate());
  RunConfig bad_h = ok;
  bad_h.h_max = 4;
  EXPECT_THROW(bad_h.validate(), DomainError);
  RunConfig bad_suite = ok;
  bad_suite.suite = "extended";
  EXPECT_THROW(bad_suite.validate(), DomainError);
  RunConfig bad_id = ok;
  bad_id.ids = {"eq9.9"};
  EXPECT_THROW(bad_id.validate(), DomainError);
  RunConfig bad_samples = ok;
  bad_samples.samples = 0;
  EXPECT_THROW(bad_samples.validate(), DomainError);
}

TEST(Cli, HeaderEmbedsVersionAndConfig) {
  RunConfig cfg = base("census");
  std::string h = cfg.header();
  EXPECT_EQ(h.rfind("# matchdiff " + version() + "\n", 0), 0u) << h;
  EXPECT_NE(h.find("# config command=census r=3 n=6,8"), std::string::npos) << h;
  EXPECT_EQ(h, base("census").header());
}

TEST(Cli, ExitCodes) {
  std::ostringstream out, log;
  RunConfig bad = base("simulate");
  bad.h_max = 0;
  EXPECT_EQ(run(bad, out, log), kConfigError);
  RunConfig unknown = base("frobnicate");
  EXPECT_EQ(run(unknown, out, log), kConfigError);
  RunConfig budget = base("census");
  budget.n_list = {kFullPolynomialCap + 2};
  EXPECT_EQ(run(budget, out, log), kBudgetError);
  RunConfig ok = base("simulate");
  EXPECT_EQ(run(ok, out, log), kOk);
}

TEST(Cli, SimulateIsByteIdentical) {
  auto path = std::filesystem::temp_directory_path() / "matchdiff_cli_sim.csv";
  RunConfig cfg = base("simulate");
  cfg.out = path;
  std::ostringstream out1, out2, log;
  ASSERT_EQ(run(cfg, out1, log), kOk);
  std::string csv1 = slurp(path);
  ASSERT_EQ(run(cfg, out2, log), kOk);
  EXPECT_EQ(out1.str(), out2.str());
  EXPECT_EQ(csv1, slurp(path));
  EXPECT_NE(csv1.find("r,n,samples,seed,i,k,alpha_hat"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, VerifyWithSeededCache) {
  RunConfig cfg = base("verify");
  cfg.r_list = {3, 4, 5};
  cfg.i_list = {0, 1, 2, 3};
  cfg.k_list = {0, 1, 2, 3, 4};
  cfg.ids = {"eq7.5", "thm7.2"};
  std::ostringstream out, log;
  EXPECT_EQ(run(cfg, out, log), kOk) << out.str() << log.str();
  EXPECT_NE(out.str().find("eq7.5 r=sym"), std::string::npos);
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos) << out.str();
  EXPECT_NE(log.str().find("cache hit"), std::string::npos);
  EXPECT_NE(out.str().find("thm7.2 r=3 i=- k=4 h=3 PASS value=1/324"), std::string::npos);
  EXPECT_NE(log.str().find("skip thm7.2 r=4 h=3"), std::string::npos);
}

TEST(Cli, ConjectureWithSeededCache) {
  RunConfig cfg = base("conjecture");
  cfg.trials = 5;
  std::ostringstream out1, out2, log;
  EXPECT_EQ(run(cfg, out1, log), kOk) << out1.str();
  EXPECT_EQ(run(cfg, out2, log), kOk);
  EXPECT_EQ(out1.str(), out2.str());
}
