#include "matchdiff/graph.hpp"

#include "matchdiff/error.hpp"
#include "matchdiff/rng.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace matchdiff {

// ---------------------------------------------------------------- BipGraph

BipGraph::BipGraph(int n, int r, std::vector<std::vector<int>> neighbors) : n_(n), r_(r) {
  if (n < 1) throw DomainError("graph needs at least one vertex per side");
  if (r < 1 || r > n) throw DomainError("degree must satisfy 1 <= r <= n");
  if (static_cast<int>(neighbors.size()) != n) throw DomainError("neighbor list count differs from n");
  std::vector<int> right_degree(n, 0);
  adj_.reserve(static_cast<size_t>(n) * r);
  for (int u = 0; u < n; ++u) {
    auto& nb = neighbors[u];
    if (static_cast<int>(nb.size()) != r)
      throw DomainError("left vertex " + std::to_string(u) + " has degree " + std::to_string(nb.size()) +
                        ", expected " + std::to_string(r));
    std::sort(nb.begin(), nb.end());
    for (size_t t = 0; t < nb.size(); ++t) {
      if (nb[t] < 0 || nb[t] >= n) throw DomainError("right vertex index out of range");
      if (t > 0 && nb[t] == nb[t - 1])
        throw DomainError("repeated edge (" + std::to_string(u) + ", " + std::to_string(nb[t]) + ")");
      ++right_degree[nb[t]];
      adj_.push_back(nb[t]);
    }
  }
  for (int w = 0; w < n; ++w)
    if (right_degree[w] != r)
      throw DomainError("right vertex " + std::to_string(w) + " has degree " + std::to_string(right_degree[w]) +
                        ", expected " + std::to_string(r));
}

BipGraph BipGraph::from_edges(int n, int r, std::span<const Edge> edges) {
  if (n < 1) throw DomainError("graph needs at least one vertex per side");
  std::vector<std::vector<int>> nb(n);
  for (const Edge& e : edges) {
    if (e.left < 0 || e.left >= n || e.right < 0 || e.right >= n) throw DomainError("edge endpoint out of range");
    nb[e.left].push_back(e.right);
  }
  return BipGraph(n, r, std::move(nb));
}

bool BipGraph::has_edge(int left, int right) const {
  auto nb = neighbors(left);
  return std::binary_search(nb.begin(), nb.end(), right);
}

std::vector<Edge> BipGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(adj_.size());
  for (int u = 0; u < n_; ++u)
    for (int w : neighbors(u)) out.push_back({u, w});
  return out;
}

std::vector<std::vector<int>> BipGraph::right_neighbors() const {
  std::vector<std::vector<int>> out(n_);
  for (int u = 0; u < n_; ++u)
    for (int w : neighbors(u)) out[w].push_back(u);
  return out;
}

std::vector<std::vector<int>> BipGraph::unified_adjacency() const {
  std::vector<std::vector<int>> out(2 * n_);
  for (int u = 0; u < n_; ++u)
    for (int w : neighbors(u)) {
      out[u].push_back(n_ + w);
      out[n_ + w].push_back(u);
    }
  return out;
}

std::uint64_t BipGraph::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(n_));
  mix(static_cast<std::uint64_t>(r_));
  for (int w : adj_) mix(static_cast<std::uint64_t>(w));
  return h;
}

std::string BipGraph::id() const {
  std::ostringstream os;
  os << "g" << n_ << "r" << r_ << "-" << std::hex << fingerprint();
  return os.str();
}

// ---------------------------------------------------------------- generation

BipGraph gen_regular_bipartite(int n, int r, std::uint64_t seed, long retry_budget) {
  if (r < 1 || r > n) throw DomainError("gen_regular_bipartite requires 1 <= r <= n");
  Rng rng(seed);
  std::vector<int> perm(n);
  std::vector<std::vector<int>> nb(n);
  for (long attempt = 0; attempt < retry_budget; ++attempt) {
    for (auto& v : nb) v.clear();
    bool simple = true;
    for (int layer = 0; layer < r && simple; ++layer) {
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(std::span<int>(perm));
      for (int u = 0; u < n; ++u) {
        if (std::find(nb[u].begin(), nb[u].end(), perm[u]) != nb[u].end()) {
          simple = false;
          break;
        }
        nb[u].push_back(perm[u]);
      }
    }
    if (simple) return BipGraph(n, r, nb);
  }
  throw BudgetError("gen_regular_bipartite: retry budget exhausted for n=" + std::to_string(n) +
                    " r=" + std::to_string(r));
}

// ---------------------------------------------------------------- structure

std::optional<int> girth(const BipGraph& g) {
  const auto adj = g.unified_adjacency();
  const int v = static_cast<int>(adj.size());
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(v), parent(v);
  std::queue<int> q;
  for (int s = 0; s < v; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    parent[s] = -1;
    q = {};
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      if (2 * dist[x] >= best) break;
      for (int y : adj[x]) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          q.push(y);
        } else if (y != parent[x]) {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

namespace {

// counts[L] for L <= max_len; every cycle is found once per direction from
// its least vertex.
std::vector<std::uint64_t> count_cycles(const std::vector<std::vector<int>>& adj, int max_len) {
  const int v = static_cast<int>(adj.size());
  std::vector<std::uint64_t> counts(max_len + 1, 0);
  std::vector<char> on_path(v, 0);
  struct Frame {
    int vertex;
    size_t next;
  };
  std::vector<Frame> stack;
  for (int s = 0; s < v; ++s) {
    stack.clear();
    stack.push_back({s, 0});
    on_path[s] = 1;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const int depth = static_cast<int>(stack.size()) - 1;
      if (f.next == adj[f.vertex].size()) {
        on_path[f.vertex] = 0;
        stack.pop_back();
        continue;
      }
      int y = adj[f.vertex][f.next++];
      if (y == s) {
        if (depth + 1 >= 3 && depth + 1 <= max_len) ++counts[depth + 1];
      } else if (y > s && !on_path[y] && depth + 1 < max_len) {
        on_path[y] = 1;
        stack.push_back({y, 0});
      }
    }
  }
  for (auto& c : counts) c /= 2;
  return counts;
}

}  // namespace

std::map<int, std::uint64_t> cycle_census(const BipGraph& g, int s_max) {
  if (s_max > kCycleCensusMax)
    throw DomainError("cycle_census: s_max " + std::to_string(s_max) + " exceeds cost guard " +
                      std::to_string(kCycleCensusMax));
  std::map<int, std::uint64_t> out;
  if (s_max < 4) return out;
  auto counts = count_cycles(g.unified_adjacency(), s_max);
  for (int s = 4; s <= s_max; s += 2) out[s] = counts[s];
  return out;
}

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

}  // namespace

BipGraph incidence_pg(int q) {
  if (!is_prime(q)) throw DomainError("incidence_pg requires a prime order, got " + std::to_string(q));
  std::vector<std::array<int, 3>> pts;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) pts.push_back({1, a, b});
  for (int b = 0; b < q; ++b) pts.push_back({0, 1, b});
  pts.push_back({0, 0, 1});
  const int n = static_cast<int>(pts.size());
  std::vector<std::vector<int>> nb(n);
  for (int p = 0; p < n; ++p)
    for (int l = 0; l < n; ++l) {
      int dot = pts[p][0] * pts[l][0] + pts[p][1] * pts[l][1] + pts[p][2] * pts[l][2];
      if (dot % q == 0) nb[p].push_back(l);
    }
  return BipGraph(n, q + 1, std::move(nb));
}

BipGraph random_lift(const BipGraph& g, int k, std::uint64_t seed) {
  if (k < 1) throw DomainError("lift degree must be at least 1");
  Rng rng(seed);
  const int n = g.n();
  std::vector<std::vector<int>> nb(static_cast<size_t>(n) * k);
  std::vector<int> perm(k);
  for (int u = 0; u < n; ++u)
    for (int w : g.neighbors(u)) {
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(std::span<int>(perm));
      for (int a = 0; a < k; ++a) nb[static_cast<size_t>(u) * k + a].push_back(w * k + perm[a]);
    }
  BipGraph lift(n * k, g.r(), std::move(nb));
  auto base = girth(g);
  auto lifted = girth(lift);
  if (base && lifted && *lifted < *base) throw ConsistencyError("random_lift decreased the girth");
  return lift;
}

std::optional<BipGraph> girth_search(int n, int r, int target_girth, std::uint64_t seed, long budget) {
  if (target_girth % 2 != 0) throw DomainError("target girth must be even");
  BipGraph start = gen_regular_bipartite(n, r, seed);
  if (target_girth <= 4) return start;

  const int max_len = target_girth - 2;
  std::vector<std::vector<int>> left(n), right(n);
  for (int u = 0; u < n; ++u)
    for (int w : start.neighbors(u)) {
      left[u].push_back(w);
      right[w].push_back(u);
    }
  auto unified = [&]() {
    std::vector<std::vector<int>> adj(2 * n);
    for (int u = 0; u < n; ++u)
      for (int w : left[u]) {
        adj[u].push_back(n + w);
        adj[n + w].push_back(u);
      }
    return adj;
  };
  auto cost_of = [&]() {
    auto counts = count_cycles(unified(), max_len);
    double c = 0;
    double weight = 1;
    for (int len = max_len; len >= 4; len -= 2, weight *= 4) c += weight * static_cast<double>(counts[len]);
    return c;
  };
  auto replace = [](std::vector<int>& v, int from, int to) { *std::find(v.begin(), v.end(), from) = to; };

  Rng rng(derive_seed(seed, 0x5eed));
  double cost = cost_of();
  const double t0 = 2.0;
  for (long step = 0; step < budget && cost > 0; ++step) {
    double temperature = t0 * std::pow(0.002, static_cast<double>(step) / static_cast<double>(budget));
    int a = static_cast<int>(rng.below(n)), c = static_cast<int>(rng.below(n));
    if (a == c) continue;
    int b = left[a][rng.below(r)], d = left[c][rng.below(r)];
    if (b == d) continue;
    if (std::find(left[a].begin(), left[a].end(), d) != left[a].end()) continue;
    if (std::find(left[c].begin(), left[c].end(), b) != left[c].end()) continue;
    replace(left[a], b, d);
    replace(left[c], d, b);
    replace(right[b], a, c);
    replace(right[d], c, a);
    double next = cost_of();
    if (next <= cost || rng.unit() < std::exp((cost - next) / temperature)) {
      cost = next;
    } else {
      replace(left[a], d, b);
      replace(left[c], b, d);
      replace(right[b], c, a);
      replace(right[d], a, c);
    }
  }
  if (cost > 0) return std::nullopt;
  BipGraph out(n, r, left);
  auto gt = girth(out);
  if (gt && *gt < target_girth) throw ConsistencyError("girth_search produced a graph below the target girth");
  return out;
}

BipGraph cyclic_bipartite(int m, std::span<const int> offsets) {
  std::vector<std::vector<int>> nb(m);
  for (int i = 0; i < m; ++i)
    for (int d : offsets) nb[i].push_back(((i + d) % m + m) % m);
  return BipGraph(m, static_cast<int>(offsets.size()), std::move(nb));
}

BipGraph from_lcf(std::span<const int> jumps, int repeats) {
  const int len = static_cast<int>(jumps.size()) * repeats;
  if (len % 2 != 0 || len < 4) throw DomainError("LCF cycle length must be even and at least 4");
  std::set<std::pair<int, int>> edges;
  auto add = [&](int a, int b) {
    a = ((a % len) + len) % len;
    b = ((b % len) + len) % len;
    if ((a - b) % 2 == 0) throw DomainError("LCF jump joins two vertices of the same parity");
    if (a % 2 != 0) std::swap(a, b);
    edges.insert({a / 2, b / 2});
  };
  for (int i = 0; i < len; ++i) {
    add(i, i + 1);
    add(i, i + jumps[i % jumps.size()]);
  }
  std::vector<Edge> list;
  for (auto [u, w] : edges) list.push_back({u, w});
  return BipGraph::from_edges(len / 2, 3, list);
}

BipGraph complete_bipartite(int n) {
  std::vector<std::vector<int>> nb(n);
  for (int u = 0; u < n; ++u)
    for (int w = 0; w < n; ++w) nb[u].push_back(w);
  return BipGraph(n, n, std::move(nb));
}

BipGraph even_cycle(int n) {
  if (n < 2) throw DomainError("even_cycle needs n >= 2");
  std::vector<std::vector<int>> nb(n);
  for (int u = 0; u < n; ++u) nb[u] = {u, (u + 1) % n};
  return BipGraph(n, 2, std::move(nb));
}

// ---------------------------------------------------------------- files

BipGraph parse_graph(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int n = -1, r = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    if (n < 0) {
      std::string tag, ns, rs;
      if (!(ls >> tag >> ns >> rs) || tag != "bipartite" || ns.rfind("n=", 0) != 0 || rs.rfind("r=", 0) != 0)
        throw FormatError("line " + std::to_string(lineno) + ": expected 'bipartite n=<n> r=<r>'");
      try {
        n = std::stoi(ns.substr(2));
        r = std::stoi(rs.substr(2));
      } catch (const std::exception&) {
        throw FormatError("line " + std::to_string(lineno) + ": bad n or r");
      }
      continue;
    }
    Edge e;
    std::string extra;
    if (!(ls >> e.left >> e.right) || (ls >> extra))
      throw FormatError("line " + std::to_string(lineno) + ": expected 'u v'");
    edges.push_back(e);
  }
  if (n < 0) throw FormatError("missing graph header");
  try {
    return BipGraph::from_edges(n, r, edges);
  } catch (const DomainError& e) {
    throw FormatError(std::string("graph file rejected: ") + e.what());
  }
}

BipGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open graph file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string format_graph(const BipGraph& g) {
  std::ostringstream os;
  os << "bipartite n=" << g.n() << " r=" << g.r() << "\n";
  for (const Edge& e : g.edges()) os << e.left << " " << e.right << "\n";
  return os.str();
}

void save_graph(const BipGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write graph file " + path.string());
  out << format_graph(g);
}

}  // namespace matchdiff
