#include "run_config.hpp"

#include "matchdiff/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace matchdiff::cli {

namespace {

int parse_int(std::string_view text, const std::string& whole) {
  int v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size())
    throw DomainError("bad integer list '" + whole + "'");
  return v;
}

const std::vector<std::string>& known_ids() {
  static const std::vector<std::string> ids{"eq3.4-3.5",    "thm7.2",          "eq7.5",
                                            "fd-monomial",  "first-identity",  "t-cancellation",
                                            "alpha0",       "second-identity", "second-identity-synthetic",
                                            "conjecture10"};
  return ids;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    size_t comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse_int(item, text));
    } else {
      int lo = parse_int(item.substr(0, dots), text), hi = parse_int(item.substr(dots + 2), text);
      if (lo > hi) throw DomainError("empty range in '" + text + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) throw DomainError("empty integer list");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string format_int_list(const std::vector<int>& values) {
  std::string s;
  for (size_t t = 0; t < values.size(); ++t) s += (t ? "," : "") + std::to_string(values[t]);
  return s;
}

void RunConfig::validate() const {
  for (int r : r_list) require(r >= 2 && r <= 12, "--r values must lie in 2..12");
  for (int n : n_list) require(n >= 1 && n <= 64, "--n values must lie in 1..64");
  for (int i : i_list) require(i >= 0 && i <= 22, "--i values must lie in 0..22");
  for (int k : k_list) require(k >= 0 && k <= 22, "--k values must lie in 0..22");
  require(h_max >= 1 && h_max <= 3, "--hmax must lie in 1..3");
  require(samples >= 1 && samples <= 1'000'000, "--samples must lie in 1..1000000");
  require(trials >= 0 && trials <= 100'000, "--trials must lie in 0..100000");
  require(suite.empty() || suite == "core", "unknown suite '" + suite + "' (available: core)");
  for (const auto& id : ids)
    require(std::find(known_ids().begin(), known_ids().end(), id) != known_ids().end(), "unknown check id '" + id + "'");
  if (command == "simulate" || command == "census") {
    require(!n_list.empty() && !r_list.empty(), "simulate and census need --r and --n");
    for (int i : i_list)
      for (int k : k_list)
        require(i + k <= n_list.back(), "i + k must not exceed the largest n");
  }
}

std::string RunConfig::to_string() const {
  std::ostringstream os;
  os << "command=" << command << " r=" << format_int_list(r_list) << " n=" << format_int_list(n_list)
     << " i=" << format_int_list(i_list) << " k=" << format_int_list(k_list) << " hmax=" << h_max
     << " samples=" << samples << " seed=" << seed << " trials=" << trials << " strict-girth=" << (strict_girth ? 1 : 0)
     << " suite=" << (suite.empty() ? "-" : suite) << " id=";
  for (size_t t = 0; t < ids.size(); ++t) os << (t ? "," : "") << ids[t];
  if (ids.empty()) os << "-";
  os << " cache=" << cache_dir.string() << " out=" << (out.empty() ? "-" : out.string());
  return os.str();
}

std::string RunConfig::header(const std::string& comment) const {
  return comment + "matchdiff " + version() + "\n" + comment + "config " + to_string() + "\n";
}

std::string version() { return MATCHDIFF_VERSION; }

}  // namespace matchdiff::cli
