#include "core/assemble.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "core/cycles.hpp"
#include "core/error.hpp"

namespace shotgun {

namespace {

constexpr std::size_t kMaxReportPairs = 100000;

void validate_pieces(const std::vector<RootedBall>& pieces) {
  if (pieces.empty())
    throw Error(ErrorCode::MalformedDeck, "deck has no pieces");
  const std::uint32_t n = std::uint32_t(pieces.size());
  const std::uint32_t d = pieces[0].d;
  const std::uint32_t rad = pieces[0].radius;
  if (rad < 1)
    throw Error(ErrorCode::MalformedDeck, "pieces must have radius >= 1");
  std::vector<char> seen(n, 0);
  for (const RootedBall& p : pieces) {
    if (p.d != d)
      throw Error(ErrorCode::MalformedDeck, "pieces disagree on degree");
    if (p.radius != rad)
      throw Error(ErrorCode::MalformedDeck, "pieces disagree on radius");
    if (p.root_label >= n || seen[p.root_label])
      throw Error(ErrorCode::MalformedDeck,
                  "piece roots are not exactly 0..n-1");
    seen[p.root_label] = 1;
    if (p.vertex_count() == 0 || p.depth[0] != 0)
      throw Error(ErrorCode::MalformedDeck,
                  "piece is not rooted at local vertex 0");
    std::uint32_t root_degree = 0;
    for (const auto& e : p.edges)
      root_degree += (e.first == 0) + (e.second == 0);
    if (root_degree != d)
      throw Error(ErrorCode::MalformedDeck,
                  "piece root degree differs from d");
  }
}

AssemblyResult glue(const std::vector<RootedBall>& pieces,
                    const std::function<std::string(const RootedBall&)>& inv) {
  validate_pieces(pieces);
  const std::uint32_t n = std::uint32_t(pieces.size());
  const std::uint32_t d = pieces[0].d;
  const std::uint32_t R = pieces[0].radius - 1;

  std::vector<const RootedBall*> piece_of(n);
  for (const RootedBall& p : pieces) piece_of[p.root_label] = &p;

  AssemblyResult res;
  std::vector<std::string> key(n);
  for (Vertex u = 0; u < n; ++u)
    key[u] = inv(reroot_ball(*piece_of[u], 0, R));

  std::vector<Vertex> order(n);
  for (Vertex u = 0; u < n; ++u) order[u] = u;
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    if (key[a] != key[b]) return key[a] < key[b];
    return a < b;
  });
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && key[order[j]] == key[order[i]]) ++j;
    for (std::size_t a = i; a < j && !res.duplicates_truncated; ++a)
      for (std::size_t b = a + 1; b < j; ++b) {
        if (res.duplicate_types.size() == kMaxReportPairs) {
          res.duplicates_truncated = true;
          break;
        }
        res.duplicate_types.emplace_back(order[a], order[b]);
      }
    i = j;
  }
  if (!res.duplicate_types.empty()) {
    std::sort(res.duplicate_types.begin(), res.duplicate_types.end());
    return res;
  }

  std::unordered_map<std::string, Vertex> by_key;
  by_key.reserve(n * 2);
  for (Vertex u = 0; u < n; ++u) by_key.emplace(key[u], u);

  std::vector<std::map<Vertex, std::uint32_t>> mult(n);
  std::vector<std::uint32_t> loops(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    const RootedBall& p = *piece_of[u];
    std::uint32_t slot = 0;
    for (const auto& e : p.edges) {
      if (e.first != 0 && e.second != 0) continue;
      std::uint32_t k = slot++;
      if (e.first == 0 && e.second == 0) {
        ++loops[u];
        continue;
      }
      std::uint32_t far = e.first == 0 ? e.second : e.first;
      auto it = by_key.find(inv(reroot_ball(p, far, R)));
      if (it == by_key.end()) {
        res.unmatched_slots.emplace_back(u, k);
      } else if (it->second == u) {
        // A non-loop slot that resolves to its own root: impossible for a
        // genuine deck once types are distinct.
        res.inconsistent_pairs.emplace_back(u, u);
      } else {
        ++mult[u][it->second];
      }
    }
  }
  for (Vertex u = 0; u < n; ++u)
    for (const auto& [v, c] : mult[u]) {
      if (u > v) continue;
      auto it = mult[v].find(u);
      if (it == mult[v].end() || it->second != c)
        res.inconsistent_pairs.emplace_back(u, v);
    }
  for (Vertex v = 0; v < n; ++v)
    for (const auto& [u, c] : mult[v]) {
      if (u < v && mult[u].find(v) == mult[u].end())
        res.inconsistent_pairs.emplace_back(u, v);
    }
  if (!res.unmatched_slots.empty() || !res.inconsistent_pairs.empty()) {
    std::sort(res.inconsistent_pairs.begin(), res.inconsistent_pairs.end());
    res.inconsistent_pairs.erase(
        std::unique(res.inconsistent_pairs.begin(),
                    res.inconsistent_pairs.end()),
        res.inconsistent_pairs.end());
    return res;
  }

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (std::uint32_t l = 0; l < loops[u]; ++l) edges.emplace_back(u, u);
    for (const auto& [v, c] : mult[u])
      if (u < v)
        for (std::uint32_t l = 0; l < c; ++l) edges.emplace_back(u, v);
  }
  res.graph = from_edge_list(n, d, edges);
  return res;
}

std::string distance_sequence_key(const RootedBall& b) {
  std::vector<std::uint64_t> per_depth(std::size_t(b.radius) + 1, 0);
  for (std::uint32_t dep : b.depth) ++per_depth[dep];
  std::string s;
  for (std::uint32_t i = 1; i <= b.radius; ++i) {
    s += std::to_string(per_depth[i]);
    s.push_back(',');
  }
  return s;
}

}  // namespace

AssemblyResult assemble(const std::vector<RootedBall>& pieces,
                        std::uint64_t budget) {
  return glue(pieces, [budget](const RootedBall& b) {
    return canonical_code(b, budget);
  });
}

AssemblyResult assemble_by_distance_sequence(
    const std::vector<RootedBall>& pieces) {
  return glue(pieces, distance_sequence_key);
}

std::optional<Certificate> certify_asymmetric(const Multigraph& g,
                                              std::uint32_t R,
                                              std::uint64_t budget) {
  Deck deck = build_deck(g, R, budget);
  std::unordered_set<TypeCode> seen;
  seen.reserve(std::size_t(g.n) * 2);
  for (const TypeCode& c : deck.codes)
    if (!seen.insert(c).second) return std::nullopt;
  Certificate cert;
  cert.kind = CertKind::Asymmetry;
  cert.radius = R;
  cert.codes = std::move(deck.codes);
  return cert;
}

std::optional<Certificate> certify_nonisomorphic(const Multigraph& g,
                                                 const Multigraph& h,
                                                 std::uint32_t R,
                                                 std::uint64_t budget) {
  ExploreScratch sc;
  bool found = false;
  Vertex best = 0;
  std::size_t best_edges = 0;
  for (Vertex v = 0; v < g.n; ++v) {
    RootedBall ball = extract_ball(g, v, R, sc);
    if (!omega_membership(ball, R, g.d)) continue;
    if (!found || ball.edge_count() > best_edges) {
      found = true;
      best = v;
      best_edges = ball.edge_count();
    }
  }
  if (!found)
    throw Error(ErrorCode::NoOmegaVertex,
                "no ball of g meets the omega edge threshold");
  TypeCode target = canonical_code(extract_ball(g, best, R, sc), budget);
  for (Vertex w = 0; w < h.n; ++w)
    if (canonical_code(extract_ball(h, w, R, sc), budget) == target)
      return std::nullopt;
  Certificate cert;
  cert.kind = CertKind::NonIsomorphism;
  cert.radius = R;
  cert.vertex = best;
  cert.codes = {std::move(target)};
  return cert;
}

bool replay_certificate(const Certificate& cert, const Multigraph& g,
                        std::uint64_t budget) {
  if (cert.kind != CertKind::Asymmetry)
    throw Error(ErrorCode::InvalidArgument,
                "one-graph replay handles asymmetry certificates only");
  if (cert.codes.size() != g.n) return false;
  Deck deck = build_deck(g, cert.radius, budget);
  if (deck.codes != cert.codes) return false;
  std::unordered_set<TypeCode> seen;
  seen.reserve(std::size_t(g.n) * 2);
  for (const TypeCode& c : deck.codes)
    if (!seen.insert(c).second) return false;
  return true;
}

bool replay_certificate(const Certificate& cert, const Multigraph& g,
                        const Multigraph& h, std::uint64_t budget) {
  if (cert.kind != CertKind::NonIsomorphism)
    throw Error(ErrorCode::InvalidArgument,
                "two-graph replay handles non-isomorphism certificates only");
  if (cert.codes.size() != 1 || cert.vertex >= g.n) return false;
  RootedBall ball = extract_ball(g, cert.vertex, cert.radius);
  if (!omega_membership(ball, cert.radius, g.d)) return false;
  if (canonical_code(ball, budget) != cert.codes[0]) return false;
  ExploreScratch sc;
  for (Vertex w = 0; w < h.n; ++w)
    if (canonical_code(extract_ball(h, w, cert.radius, sc), budget) ==
        cert.codes[0])
      return false;
  return true;
}

}  // namespace shotgun
