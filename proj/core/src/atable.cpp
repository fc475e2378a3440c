#include "matchdiff/atable.hpp"

#include "matchdiff/error.hpp"
#include "matchdiff/linsolve.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace matchdiff {

std::string origin_name(Origin o) {
  switch (o) {
    case Origin::builtin:
      return "builtin";
    case Origin::derived:
      return "derived";
    case Origin::imported:
      return "imported";
  }
  return "derived";
}

Origin parse_origin(const std::string& text) {
  if (text == "builtin") return Origin::builtin;
  if (text == "derived") return Origin::derived;
  if (text == "imported") return Origin::imported;
  throw FormatError("unknown origin '" + text + "'");
}

namespace {

std::string key_str(int h, int r, int j) {
  return "a_" + std::to_string(h) + "(r=" + std::to_string(r) + ", j=" + std::to_string(j) + ")";
}

Rat root_product(int h, long j) {
  Rat p = 1;
  for (int s = 0; s <= h; ++s) p *= Rat(j - s);
  return p;
}

}  // namespace

// ---------------------------------------------------------------- ATable

void ATable::check_roots(int h, const JPoly& a) const {
  if (h < 1) throw DomainError("a-table levels start at h = 1");
  if (a.degree() > 2 * h)
    throw ConsistencyError("a_" + std::to_string(h) + " has j-degree " + std::to_string(a.degree()) +
                           " above the bound " + std::to_string(2 * h));
  for (int j = 0; j <= h; ++j)
    if (!a.eval(Rat(j)).is_zero())
      throw ConsistencyError("a_" + std::to_string(h) + " does not vanish at j = " + std::to_string(j));
}

void ATable::set_symbolic(int h, const JPoly& a, Provenance p) {
  check_roots(h, a);
  if (auto it = symbolic_.find(h); it != symbolic_.end()) {
    if (!(it->second.first == a))
      throw ConsistencyError("conflicting symbolic entries for a_" + std::to_string(h) + ": " +
                             it->second.first.to_string() + " vs " + a.to_string());
    return;
  }
  if (auto pt = points_.find(h); pt != points_.end())
    for (const auto& [key, entry] : pt->second) {
      if (fixed_r_ && key.r != *fixed_r_) continue;
      Rat v = a.eval(Rat(key.j), Rat(key.r));
      if (v != entry.value)
        throw ConsistencyError(key_str(h, key.r, key.j) + ": symbolic value " + rat_str(v) + " vs stored " +
                               rat_str(entry.value));
    }
  symbolic_.emplace(h, std::make_pair(a, std::move(p)));
}

void ATable::set_point(int h, int r, int j, const Rat& value, Provenance p) {
  if (h < 1) throw DomainError("a-table levels start at h = 1");
  if (r < 1 || j < 0) throw DomainError("a-table points need r >= 1 and j >= 0");
  if (j <= h && value != 0)
    throw ConsistencyError(key_str(h, r, j) + " = " + rat_str(value) + " but must vanish for j <= h");
  if (auto it = symbolic_.find(h); it != symbolic_.end() && (!fixed_r_ || *fixed_r_ == r)) {
    Rat v = it->second.first.eval(Rat(j), Rat(r));
    if (v != value)
      throw ConsistencyError(key_str(h, r, j) + " = " + rat_str(value) + " disagrees with symbolic value " +
                             rat_str(v));
  }
  auto& level = points_[h];
  PointKey key{r, j};
  if (auto it = level.find(key); it != level.end()) {
    if (it->second.value != value)
      throw ConsistencyError(key_str(h, r, j) + ": conflicting values " + rat_str(it->second.value) + " and " +
                             rat_str(value));
    return;
  }
  level.emplace(key, PointEntry{value, std::move(p)});
}

const JPoly& ATable::symbolic(int h) const {
  auto it = symbolic_.find(h);
  if (it == symbolic_.end()) throw DomainError("no symbolic entry for a_" + std::to_string(h));
  return it->second.first;
}

const Provenance& ATable::symbolic_provenance(int h) const {
  auto it = symbolic_.find(h);
  if (it == symbolic_.end()) throw DomainError("no symbolic entry for a_" + std::to_string(h));
  return it->second.second;
}

int ATable::symbolic_through() const {
  int h = 0;
  while (symbolic_.count(h + 1)) ++h;
  return h;
}

int ATable::max_level() const {
  int h = symbolic_.empty() ? 0 : symbolic_.rbegin()->first;
  if (!points_.empty()) h = std::max(h, points_.rbegin()->first);
  return h;
}

std::optional<Rat> ATable::value(int h, int r, int j) const {
  if (h == 0) return Rat(1);
  if (auto it = symbolic_.find(h); it != symbolic_.end() && (!fixed_r_ || *fixed_r_ == r))
    return it->second.first.eval(Rat(j), Rat(r));
  if (j >= 0 && j <= h) return Rat(0);
  if (auto pt = points_.find(h); pt != points_.end())
    if (auto it = pt->second.find(PointKey{r, j}); it != pt->second.end()) return it->second.value;
  return std::nullopt;
}

ATable ATable::at_r(int r) const {
  if (fixed_r_ && *fixed_r_ != r) throw DomainError("table is already specialized at another r");
  ATable out;
  out.fixed_r_ = r;
  const RWindow w{0, 0};
  for (int h = 1; h <= max_level(); ++h) {
    if (auto it = symbolic_.find(h); it != symbolic_.end()) {
      out.symbolic_.emplace(h, std::make_pair(it->second.first.subst_r(Rat(r)),
                                              Provenance{it->second.second.origin, "evaluated at r=" + std::to_string(r)}));
    } else if (auto pt = points_.find(h); pt != points_.end()) {
      std::vector<std::pair<int, Rat>> pts;
      for (const auto& [key, entry] : pt->second)
        if (key.r == r && key.j > h) pts.emplace_back(key.j, entry.value);
      if (static_cast<int>(pts.size()) >= h) {
        std::vector<std::vector<Rat>> a;
        std::vector<Rat> b;
        for (int row = 0; row < h; ++row) {
          auto [j, v] = pts[row];
          std::vector<Rat> coeffs;
          Rat lead = root_product(h, j);
          for (int t = 0; t < h; ++t) coeffs.push_back(lead * pow(Rat(j), static_cast<unsigned long>(t)));
          a.push_back(std::move(coeffs));
          b.push_back(v);
        }
        SolveResult sol = solve_exact(a, b);
        if (!sol.full_rank() || !sol.consistent) throw ConsistencyError("cannot interpolate a_" + std::to_string(h));
        JPoly q(w);
        for (int t = 0; t < h; ++t) q.set_coeff(t, RLaurent(sol.x[t], w));
        JPoly p = JPoly::falling_factorial(h + 1, RLaurent(Rat(1), w)) * q;
        std::ostringstream detail;
        detail << "interpolated at r=" << r << " from j=";
        for (int row = 0; row < h; ++row) detail << (row ? "," : "") << pts[row].first;
        if (static_cast<int>(pts.size()) > h) {
          detail << "; held out j=";
          for (size_t row = h; row < pts.size(); ++row) {
            auto [j, v] = pts[row];
            Rat got = p.eval(Rat(j), Rat(r));
            if (got != v)
              throw ConsistencyError("interpolated " + key_str(h, r, j) + " = " + rat_str(got) + " but data gives " +
                                     rat_str(v));
            detail << (row > static_cast<size_t>(h) ? "," : "") << j;
          }
          detail << " residual 0";
        }
        out.check_roots(h, p);
        out.symbolic_.emplace(h, std::make_pair(p.with_degree_bound(2 * h), Provenance{Origin::derived, detail.str()}));
      }
    }
    if (auto pt = points_.find(h); pt != points_.end())
      for (const auto& [key, entry] : pt->second)
        if (key.r == r) out.set_point(h, key.r, key.j, entry.value, entry.provenance);
  }
  return out;
}

void ATable::merge(const ATable& other) {
  if (fixed_r_ != other.fixed_r_) throw DomainError("cannot merge tables specialized at different r");
  for (const auto& [h, entry] : other.symbolic_) set_symbolic(h, entry.first, entry.second);
  for (const auto& [h, level] : other.points_)
    for (const auto& [key, entry] : level) set_point(h, key.r, key.j, entry.value, entry.provenance);
}

void ATable::set_origin(Origin o) {
  for (auto& [h, entry] : symbolic_) entry.second.origin = o;
  for (auto& [h, level] : points_)
    for (auto& [key, entry] : level) entry.provenance.origin = o;
}

JPoly a1_builtin() {
  const RWindow w{-1, 0};
  RLaurent c(Rat(-1), w);
  c += RLaurent::monomial(Rat(1, 2), -1, w);
  return JPoly::falling_factorial(2, c).with_degree_bound(2);
}

// ---------------------------------------------------------------- derivation

int QualificationPolicy::required_girth(int j) const { return strict ? 2 * j + 1 : j + 1; }

bool QualificationPolicy::qualifies(const BipGraph& g, int j) const {
  auto gi = girth(g);
  return !gi || *gi >= required_girth(j);
}

namespace {

std::vector<Rat> equation_row(int j, int n) {
  std::vector<Rat> row;
  for (int h = 1; h <= j - 1; ++h) row.push_back(pow(Rat(n), static_cast<unsigned long>(j - 1 - h)));
  return row;
}

Rat equation_rhs(int r, int j, int n, const Int& m) {
  Rat lhs(m * factorial(j));
  lhs /= pow(Rat(r), static_cast<unsigned long>(j)) * Rat(n);
  return lhs - pow(Rat(n), static_cast<unsigned long>(j - 1));
}

}  // namespace

Rat predicted_m(const PointwiseFit& fit, int n) {
  Rat sum = 1;
  for (int h = 1; h < fit.j; ++h) sum += fit.a[h] / pow(Rat(n), static_cast<unsigned long>(h));
  return pow(Rat(Int(n) * fit.r), static_cast<unsigned long>(fit.j)) / Rat(factorial(fit.j)) * sum;
}

bool fit_predicts(const PointwiseFit& fit, const CountRow& row) { return predicted_m(fit, row.n) == Rat(row.m_j); }

PointwiseFit derive_M_from_counts(int r, int j, std::span<const CountRow> rows) {
  if (j < 1) throw DomainError("derive_M requires j >= 1");
  if (r < 1) throw DomainError("derive_M requires r >= 1");
  PointwiseFit fit;
  fit.r = r;
  fit.j = j;
  fit.a.assign(static_cast<size_t>(j), Rat(0));
  fit.a[0] = 1;
  std::vector<CountRow> sorted(rows.begin(), rows.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const CountRow& x, const CountRow& y) { return x.n < y.n; });
  for (const auto& row : sorted) fit.sources.push_back(row.source);
  fit.rows = static_cast<int>(sorted.size());

  std::set<int> distinct;
  for (const auto& row : sorted) distinct.insert(row.n);
  if (static_cast<int>(distinct.size()) < std::max(j, 1) || sorted.empty())
    throw DomainError("derive_M r=" + std::to_string(r) + " j=" + std::to_string(j) + " needs " + std::to_string(j) +
                      " distinct n values, got " + std::to_string(distinct.size()));
  if (j == 1) {
    for (const auto& row : sorted)
      if (row.m_j != Int(row.n) * r) throw ConsistencyError("m_1 != n r on " + row.source);
    return fit;
  }

  // Determine the unknowns from the first j-1 distinct n, then every row must agree.
  std::vector<std::vector<Rat>> a;
  std::vector<Rat> b;
  std::set<int> used;
  for (const auto& row : sorted) {
    if (used.count(row.n) || static_cast<int>(used.size()) == j - 1) continue;
    used.insert(row.n);
    a.push_back(equation_row(j, row.n));
    b.push_back(equation_rhs(r, j, row.n, row.m_j));
  }
  SolveResult sol = solve_exact(a, b);
  if (!sol.full_rank()) throw DomainError("singular M_j system");
  for (int h = 1; h < j; ++h) fit.a[h] = sol.x[h - 1];
  for (const auto& row : sorted)
    if (!fit_predicts(fit, row))
      throw ConsistencyError("m_" + std::to_string(j) + " of " + row.source + " (n=" + std::to_string(row.n) +
                             ") = " + row.m_j.get_str() + " disagrees with the family fit " +
                             rat_str(predicted_m(fit, row.n)) + "; the qualification policy may be too weak");
  return fit;
}

PointwiseFit derive_M_pointwise(int r, int j, std::span<const BipGraph> family, const QualificationPolicy& policy,
                                const MatchCountGuard& guard) {
  std::vector<CountRow> rows;
  for (const auto& g : family) {
    if (g.r() != r) throw DomainError("family member " + g.id() + " has the wrong degree");
    if (!policy.qualifies(g, j))
      throw DomainError("family member " + g.id() + " has girth below " + std::to_string(policy.required_girth(j)));
    MatchVector m = g.n() <= 16 ? match_poly_full(g) : match_count_upto(g, j, guard);
    rows.push_back(CountRow{g.n(), m[j], g.id()});
  }
  return derive_M_from_counts(r, j, rows);
}

// ---------------------------------------------------------------- fitting

namespace {

std::vector<RWindow> candidate_windows(RWindow initial) {
  std::vector<RWindow> out;
  for (int grow = 0; grow <= 3; ++grow)
    for (int up = 0; up <= grow; ++up) out.push_back({initial.lo - (grow - up), initial.hi + up});
  return out;
}

}  // namespace

SymbolicFit fit_symbolic(int h, const std::map<PointKey, Rat>& samples, RWindow initial) {
  if (h < 1) throw DomainError("fit_symbolic requires h >= 1");
  std::vector<std::pair<PointKey, Rat>> data;
  for (const auto& [key, v] : samples)
    if (key.j > h) data.emplace_back(key, v);
  if (data.empty()) throw DomainError("fit_symbolic: empty sample set for a_" + std::to_string(h));
  std::sort(data.begin(), data.end(), [](const auto& x, const auto& y) {
    return std::pair(x.first.j, x.first.r) < std::pair(y.first.j, y.first.r);
  });

  std::string last_failure = "no window tried";
  for (RWindow w : candidate_windows(initial)) {
    const int width = w.hi - w.lo + 1;
    const int unknowns = h * width;
    if (unknowns >= static_cast<int>(data.size())) break;
    auto row_of = [&](const PointKey& k) {
      std::vector<Rat> row;
      Rat lead = root_product(h, k.j);
      for (int t = 0; t < h; ++t)
        for (int e = w.lo; e <= w.hi; ++e)
          row.push_back(lead * pow(Rat(k.j), static_cast<unsigned long>(t)) * pow(Rat(k.r), static_cast<long>(e)));
      return row;
    };
    SymbolicFit fit;
    fit.window = w;
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    int rank = 0;
    for (const auto& [key, v] : data) {
      if (rank == unknowns) {
        fit.held_out.push_back(key);
        continue;
      }
      a.push_back(row_of(key));
      b.push_back(v);
      SolveResult trial = solve_exact(a, b);
      if (trial.rank > rank) {
        rank = trial.rank;
        fit.training.push_back(key);
      } else {
        a.pop_back();
        b.pop_back();
        fit.held_out.push_back(key);
      }
    }
    if (rank < unknowns) {
      last_failure = "window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) + "] is not identifiable";
      continue;
    }
    if (fit.held_out.empty()) {
      last_failure = "no held-out sample";
      continue;
    }
    SolveResult sol = solve_exact(a, b);
    JPoly q(w);
    for (int t = 0; t < h; ++t) {
      RLaurent c(w);
      for (int e = w.lo; e <= w.hi; ++e) c += RLaurent::monomial(sol.x[t * width + (e - w.lo)], e, w);
      q.set_coeff(t, c);
    }
    fit.a = (JPoly::falling_factorial(h + 1, RLaurent(Rat(1), w)) * q).with_degree_bound(2 * h);
    bool ok = true;
    for (const auto& key : fit.held_out) {
      Rat got = fit.a.eval(Rat(key.j), Rat(key.r));
      if (got != samples.at(key)) {
        ok = false;
        last_failure = "held-out " + key_str(h, key.r, key.j) + " residual " + rat_str(samples.at(key) - got);
        break;
      }
    }
    if (ok) return fit;
  }
  throw ConsistencyError("fit_symbolic a_" + std::to_string(h) + " failed: " + last_failure);
}

ATable fit_atable(std::span<const PointwiseFit> fits, const FitConfig& cfg) {
  if (fits.empty()) throw DomainError("fit_atable: empty sample set");
  ATable table;
  for (const auto& fit : fits) {
    std::string src;
    for (size_t s = 0; s < fit.sources.size(); ++s) src += (s ? "," : "") + fit.sources[s];
    for (int h = 1; h < fit.j && h <= cfg.h_max; ++h)
      table.set_point(h, fit.r, fit.j, fit.a[h], Provenance{Origin::derived, "family " + src});
  }
  for (int h = 1; h <= std::min(cfg.symbolic_through, cfg.h_max); ++h) {
    auto level = table.point_entries().find(h);
    if (level == table.point_entries().end()) throw DomainError("no samples for a_" + std::to_string(h));
    std::map<PointKey, Rat> samples;
    for (const auto& [key, entry] : level->second) samples.emplace(key, entry.value);
    SymbolicFit fit = fit_symbolic(h, samples, RWindow{-h, 0});
    std::ostringstream detail;
    detail << "fit window [" << fit.window.lo << "," << fit.window.hi << "] train";
    for (const auto& k : fit.training) detail << " (" << k.r << "," << k.j << ")";
    detail << " held-out";
    for (const auto& k : fit.held_out) detail << " (" << k.r << "," << k.j << ")";
    detail << " residual 0";
    if (h == 1 && !(fit.a == a1_builtin()))
      throw ConsistencyError("derived a_1 = " + fit.a.to_string() + " differs from j(j-1)(1/(2r) - 1)");
    table.set_symbolic(h, fit.a, Provenance{Origin::derived, detail.str()});
  }
  return table;
}

// ---------------------------------------------------------------- series

JSeries build_H(const ATable& table, int h_max) {
  if (h_max < 1) throw DomainError("build_H requires h_max >= 1");
  RWindow w = JSeries::default_window(h_max);
  for (int h = 1; h <= h_max; ++h) {
    if (!table.has_symbolic(h))
      throw DomainError("build_H: requested order " + std::to_string(h_max) + " beyond the symbolic table (a_" +
                        std::to_string(h) + " missing)");
    w = w.hull(table.symbolic(h).window());
  }
  JSeries out(h_max, w);
  for (int h = 1; h <= h_max; ++h) out.set(h, table.symbolic(h));
  return out;
}

std::string ConjectureSpec::to_string() const {
  if (terms.empty()) return "{}";
  std::ostringstream os;
  os << "{";
  for (size_t t = 0; t < terms.size(); ++t)
    os << (t ? ", " : "") << "(z=" << terms[t].z << ", c=" << rat_str(terms[t].c) << ")";
  os << "}";
  return os.str();
}

JSeries build_F_conjecture(const ATable& table, const ConjectureSpec& spec, int h_max) {
  for (const auto& term : spec.terms) {
    if (term.z < 1) throw DomainError("conjecture term needs z >= 1");
    if (term.z > h_max)
      throw DomainError("conjecture term z=" + std::to_string(term.z) + " exceeds h_max=" + std::to_string(h_max));
  }
  JSeries base = build_H(table, h_max);
  base += JSeries::one(h_max);
  JSeries f = base;
  for (const auto& term : spec.terms) {
    RWindow w = f.window();
    RLaurent scale = table.fixed_r() ? RLaurent(term.c * pow(Rat(*table.fixed_r()), -static_cast<long>(term.z)), w)
                                     : RLaurent::monomial(term.c, -term.z, w);
    JPoly ff = JPoly::falling_factorial(term.z, scale);
    JSeries lead = JSeries::from_poly(ff, term.z, h_max).widened(w.hull(JSeries::default_window(h_max)));
    f += lead * base.shift_j(term.z);
  }
  return f;
}

// ---------------------------------------------------------------- text format

namespace {

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::string format_atable(const ATable& table) {
  if (table.fixed_r()) throw DomainError("a table specialized at one r cannot be exported");
  std::ostringstream os;
  os << "atable version=1\n";
  for (const auto& [h, entry] : table.symbolic_entries()) {
    os << "# provenance h=" << h << " sym origin=" << origin_name(entry.second.origin) << " "
       << one_line(entry.second.detail) << "\n";
    os << "a h=" << h << " sym\n";
    const JPoly& p = entry.first;
    for (int t = 0; t <= p.degree(); ++t) {
      const RLaurent c_t = p.coeff(t);
      for (const auto& [e, c] : c_t.terms()) os << t << " " << e << " " << rat_str(c) << "\n";
    }
  }
  for (const auto& [h, level] : table.point_entries())
    for (const auto& [key, entry] : level) {
      os << "# provenance h=" << h << " r=" << key.r << " j=" << key.j
         << " origin=" << origin_name(entry.provenance.origin) << " " << one_line(entry.provenance.detail) << "\n";
      os << "a h=" << h << " point r=" << key.r << " j=" << key.j << " " << rat_str(entry.value) << "\n";
    }
  return os.str();
}

namespace {

int field_int(const std::string& token, const std::string& name, const std::string& line) {
  if (token.rfind(name + "=", 0) != 0) throw FormatError("expected " + name + "=<int> in '" + line + "'");
  try {
    size_t used = 0;
    int v = std::stoi(token.substr(name.size() + 1), &used);
    if (used != token.size() - name.size() - 1) throw FormatError("bad integer");
    return v;
  } catch (const std::exception&) {
    throw FormatError("bad integer field in '" + line + "'");
  }
}

Provenance parse_provenance(const std::string& line) {
  // "# provenance h=.. [sym|r=.. j=..] origin=<o> detail..."
  Provenance p;
  auto pos = line.find("origin=");
  if (pos == std::string::npos) throw FormatError("provenance comment without origin: '" + line + "'");
  auto end = line.find(' ', pos);
  p.origin = parse_origin(line.substr(pos + 7, end == std::string::npos ? std::string::npos : end - pos - 7));
  if (end != std::string::npos) p.detail = line.substr(end + 1);
  return p;
}

}  // namespace

ATable parse_atable(const std::string& text, bool keep_origin) {
  std::istringstream is(text);
  std::string line;
  bool header = false;
  Provenance pending{Origin::imported, ""};
  struct SymBlock {
    int h;
    Provenance prov;
    std::vector<std::tuple<int, int, Rat>> terms;
  };
  std::vector<SymBlock> blocks;
  struct Point {
    int h, r, j;
    Rat v;
    Provenance prov;
  };
  std::vector<Point> points;
  SymBlock* open = nullptr;

  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# provenance ", 0) == 0) pending = parse_provenance(line);
      continue;
    }
    if (!header) {
      if (line != "atable version=1") throw FormatError("expected header 'atable version=1', got '" + line + "'");
      header = true;
      continue;
    }
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok[0] == "a") {
      if (tok.size() < 3) throw FormatError("malformed entry line '" + line + "'");
      int h = field_int(tok[1], "h", line);
      if (h < 1) throw FormatError("level h must be >= 1 in '" + line + "'");
      if (tok[2] == "sym" && tok.size() == 3) {
        blocks.push_back(SymBlock{h, pending, {}});
        open = &blocks.back();
      } else if (tok[2] == "point" && tok.size() == 6) {
        points.push_back(Point{h, field_int(tok[3], "r", line), field_int(tok[4], "j", line), parse_rat(tok[5]), pending});
        open = nullptr;
      } else {
        throw FormatError("malformed entry line '" + line + "'");
      }
      pending = Provenance{Origin::imported, ""};
      continue;
    }
    if (!open) throw FormatError("coefficient line outside a symbolic block: '" + line + "'");
    if (tok.size() != 3) throw FormatError("expected 'jpow rpow p/q', got '" + line + "'");
    int t, e;
    try {
      t = std::stoi(tok[0]);
      e = std::stoi(tok[1]);
    } catch (const std::exception&) {
      throw FormatError("bad exponent in '" + line + "'");
    }
    if (t < 0) throw FormatError("negative j-power in '" + line + "'");
    open->terms.emplace_back(t, e, parse_rat(tok[2]));
  }
  if (!header) throw FormatError("missing 'atable version=1' header");

  auto finish = [&](Provenance p) {
    if (keep_origin) return p;
    std::string was = origin_name(p.origin);
    return Provenance{Origin::imported, p.detail.empty() ? "" : "(" + was + ") " + p.detail};
  };

  ATable table;
  for (auto& block : blocks) {
    RWindow w{-block.h, 0};
    for (const auto& [t, e, c] : block.terms) w = w.hull({e, e});
    JPoly p(w, 2 * block.h);
    for (const auto& [t, e, c] : block.terms) {
      if (t > 2 * block.h) throw FormatError("a_" + std::to_string(block.h) + " has j-degree above 2h");
      RLaurent coeff = p.coeff(t);
      coeff += RLaurent::monomial(c, e, w);
      p.set_coeff(t, coeff);
    }
    table.set_symbolic(block.h, p, finish(block.prov));
  }
  for (auto& pt : points) table.set_point(pt.h, pt.r, pt.j, pt.v, finish(pt.prov));

  JPoly a1 = a1_builtin();
  if (table.has_symbolic(1) && !(table.symbolic(1) == a1))
    throw ConsistencyError("table a_1 = " + table.symbolic(1).to_string() + " differs from j(j-1)(1/(2r) - 1)");
  if (auto level = table.point_entries().find(1); level != table.point_entries().end())
    for (const auto& [key, entry] : level->second)
      if (a1.eval(Rat(key.j), Rat(key.r)) != entry.value)
        throw ConsistencyError("table " + key_str(1, key.r, key.j) + " differs from j(j-1)(1/(2r) - 1)");
  return table;
}

ATable import_atable(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open a-table file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_atable(ss.str(), false);
}

void export_atable(const ATable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write a-table file " + path.string());
  out << format_atable(table);
}

}  // namespace matchdiff
