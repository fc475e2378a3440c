#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace matchdiff::cli {

enum ExitCode : int { kOk = 0, kCheckFailure = 1, kConfigError = 2, kBudgetError = 3 };

/// "3", "3,4,5", "0..3" and mixtures such as "6,8..10". Sorted, unique.
std::vector<int> parse_int_list(const std::string& text);
std::string format_int_list(const std::vector<int>& values);

struct RunConfig {
  std::string command;
  std::vector<int> r_list;
  std::vector<int> n_list;
  std::vector<int> i_list;
  std::vector<int> k_list;
  int h_max = 3;
  int samples = 2000;
  std::uint64_t seed = 1;
  int trials = 100;
  bool strict_girth = false;
  std::string suite;
  std::vector<std::string> ids;
  std::filesystem::path cache_dir;
  std::filesystem::path out;

  /// Throws DomainError on the first invalid field.
  void validate() const;
  /// One line, `key=value` pairs in a fixed order.
  std::string to_string() const;
  /// `# matchdiff <version>` and `# config <to_string()>`.
  std::string header(const std::string& comment = "# ") const;
};

std::string version();

}  // namespace matchdiff::cli
