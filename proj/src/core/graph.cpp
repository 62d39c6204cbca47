#include "core/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace shotgun {

void Multigraph::validate() const {
  std::uint64_t m = half_edge_count();
  if (m > (std::uint64_t(1) << 32))
    throw Error(ErrorCode::InvalidArgument, "n*d exceeds half-edge index space");
  if (match.size() != m)
    throw Error(ErrorCode::InvalidArgument, "match size != n*d");
  for (std::uint64_t h = 0; h < m; ++h) {
    if (match[h] >= m || match[h] == h || match[match[h]] != h)
      throw Error(ErrorCode::InvalidArgument,
                  "match is not a fixed-point-free involution");
  }
}

static void check_sample_args(std::uint32_t n, std::uint32_t d) {
  if (d < 3) throw Error(ErrorCode::InvalidDegree, "degree must be >= 3");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one vertex");
  if ((std::uint64_t(n) * d) % 2 != 0)
    throw Error(ErrorCode::OddParity, "n*d must be even");
  if (std::uint64_t(n) * d > (std::uint64_t(1) << 32))
    throw Error(ErrorCode::InvalidArgument, "n*d exceeds half-edge index space");
}

Multigraph sample_configuration(std::uint32_t n, std::uint32_t d,
                                std::uint64_t seed) {
  check_sample_args(n, d);
  Rng rng = make_rng(seed);
  std::uint64_t m = std::uint64_t(n) * d;
  std::vector<HalfEdge> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  Multigraph g;
  g.n = n;
  g.d = d;
  g.match.resize(m);
  // Sequential pairing: the first unmatched half-edge is matched with a
  // uniform choice among the rest, which yields a uniform perfect matching.
  for (std::uint64_t i = 0; i < m; i += 2) {
    std::uint64_t j = i + 1 + uniform_below(rng, m - i - 1);
    std::swap(pool[i + 1], pool[j]);
    g.match[pool[i]] = pool[i + 1];
    g.match[pool[i + 1]] = pool[i];
  }
  return g;
}

bool is_simple(const Multigraph& g) {
  std::vector<Vertex> nbr(g.d);
  for (Vertex v = 0; v < g.n; ++v) {
    for (std::uint32_t k = 0; k < g.d; ++k) {
      HalfEdge h = g.first_slot(v) + k;
      Vertex w = g.owner(g.match[h]);
      if (w == v) return false;
      nbr[k] = w;
    }
    std::sort(nbr.begin(), nbr.end());
    for (std::uint32_t k = 1; k < g.d; ++k)
      if (nbr[k] == nbr[k - 1]) return false;
  }
  return true;
}

Multigraph sample_simple(std::uint32_t n, std::uint32_t d, std::uint64_t seed,
                         std::uint32_t retry_cap, std::uint32_t* attempts_out) {
  check_sample_args(n, d);
  Rng rng = make_rng(seed);
  std::uint64_t m = std::uint64_t(n) * d;
  std::vector<HalfEdge> pool(m);
  Multigraph g;
  g.n = n;
  g.d = d;
  g.match.resize(m);
  for (std::uint32_t attempt = 1; attempt <= retry_cap; ++attempt) {
    std::iota(pool.begin(), pool.end(), 0);
    for (std::uint64_t i = 0; i < m; i += 2) {
      std::uint64_t j = i + 1 + uniform_below(rng, m - i - 1);
      std::swap(pool[i + 1], pool[j]);
      g.match[pool[i]] = pool[i + 1];
      g.match[pool[i + 1]] = pool[i];
    }
    if (is_simple(g)) {
      if (attempts_out) *attempts_out = attempt;
      return g;
    }
  }
  throw Error(ErrorCode::RejectionBudgetExceeded,
              "no simple graph within the retry cap");
}

Multigraph from_edge_list(std::uint32_t n, std::uint32_t d,
                          const std::vector<std::pair<Vertex, Vertex>>& edges) {
  if (edges.size() * 2 != std::uint64_t(n) * d)
    throw Error(ErrorCode::InvalidArgument, "edge count is not n*d/2");
  Multigraph g;
  g.n = n;
  g.d = d;
  g.match.assign(std::uint64_t(n) * d, 0);
  std::vector<std::uint32_t> used(n, 0);
  auto take_slot = [&](Vertex v) -> HalfEdge {
    if (v >= n) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
    if (used[v] >= d)
      throw Error(ErrorCode::InvalidArgument, "vertex degree exceeds d");
    return g.first_slot(v) + used[v]++;
  };
  for (auto [a, b] : edges) {
    HalfEdge ha = take_slot(a);
    HalfEdge hb = take_slot(b);
    g.match[ha] = hb;
    g.match[hb] = ha;
  }
  for (Vertex v = 0; v < n; ++v)
    if (used[v] != d)
      throw Error(ErrorCode::InvalidArgument, "vertex degree below d");
  return g;
}

std::vector<std::pair<Vertex, Vertex>> edge_multiset(const Multigraph& g) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(g.edge_count());
  std::uint64_t m = g.half_edge_count();
  for (std::uint64_t h = 0; h < m; ++h) {
    HalfEdge p = g.match[h];
    if (p < h) continue;  // count each pair once; loops have p != h
    Vertex a = g.owner(HalfEdge(h));
    Vertex b = g.owner(p);
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

void write_graph(std::ostream& out, const Multigraph& g) {
  out << g.n << ' ' << g.d << '\n';
  std::uint64_t m = g.half_edge_count();
  for (std::uint64_t h = 0; h < m; ++h)
    if (g.match[h] > h) out << h << ' ' << g.match[h] << '\n';
}

Multigraph read_graph(std::istream& in) {
  Multigraph g;
  if (!(in >> g.n >> g.d))
    throw Error(ErrorCode::IoError, "graph file: bad header");
  if (g.n < 1 || g.d < 1 || std::uint64_t(g.n) * g.d > (std::uint64_t(1) << 32))
    throw Error(ErrorCode::IoError, "graph file: header out of range");
  std::uint64_t m = std::uint64_t(g.n) * g.d;
  if (m % 2 != 0) throw Error(ErrorCode::IoError, "graph file: odd n*d");
  g.match.assign(m, 0);
  std::vector<bool> seen(m, false);
  for (std::uint64_t i = 0; i < m / 2; ++i) {
    std::uint64_t h1, h2;
    if (!(in >> h1 >> h2))
      throw Error(ErrorCode::IoError, "graph file: truncated pair list");
    if (h1 >= m || h2 >= m || h1 >= h2)
      throw Error(ErrorCode::IoError, "graph file: bad half-edge pair");
    if (seen[h1] || seen[h2])
      throw Error(ErrorCode::IoError, "graph file: repeated half-edge");
    seen[h1] = seen[h2] = true;
    g.match[h1] = HalfEdge(h2);
    g.match[h2] = HalfEdge(h1);
  }
  return g;
}

void write_graph_file(const std::string& path, const Multigraph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  write_graph(out, g);
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

Multigraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_graph(in);
}

}  // namespace shotgun
