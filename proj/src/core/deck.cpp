#include "core/deck.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "core/error.hpp"

namespace shotgun {

namespace {

std::string to_hex(const std::string& s) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * s.size());
  for (unsigned char c : s) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string from_hex(const std::string& s) {
  if (s.size() % 2 != 0)
    throw Error(ErrorCode::IoError, "deck file: odd-length hex code");
  std::string out;
  out.reserve(s.size() / 2);
  for (std::size_t i = 0; i < s.size(); i += 2) {
    int hi = hex_value(s[i]), lo = hex_value(s[i + 1]);
    if (hi < 0 || lo < 0)
      throw Error(ErrorCode::IoError, "deck file: invalid hex code");
    out.push_back(char((hi << 4) | lo));
  }
  return out;
}

// Slot-order-independent ball summary, far cheaper than a canonical code:
// vertex counts per depth, then edge counts split by endpoint depths
// (within a level, across to the next, loops per level). A rooted
// isomorphism preserves depths and maps the edge multiset bijectively, so
// equal types always produce equal summaries; partitioning by summary can
// never separate a duplicate-type pair. Distinctness scans canonize only
// the vertices whose summary class has two or more members.
std::string ball_signature(const RootedBall& b) {
  std::vector<std::uint32_t> per_depth(std::size_t(b.radius) + 1, 0);
  for (std::uint32_t dep : b.depth) ++per_depth[dep];
  std::vector<std::uint32_t> within(std::size_t(b.radius) + 1, 0);
  std::vector<std::uint32_t> across(std::size_t(b.radius) + 1, 0);
  std::vector<std::uint32_t> loops(std::size_t(b.radius) + 1, 0);
  for (const auto& e : b.edges) {
    std::uint32_t du = b.depth[e.first], dv = b.depth[e.second];
    if (e.first == e.second)
      ++loops[du];
    else if (du == dv)
      ++within[du];
    else
      ++across[std::min(du, dv)];
  }
  std::string s;
  s.reserve(8 * per_depth.size());
  for (std::size_t i = 0; i < per_depth.size(); ++i) {
    s += std::to_string(per_depth[i]);
    s.push_back(',');
    s += std::to_string(within[i]);
    s.push_back(',');
    s += std::to_string(across[i]);
    s.push_back(',');
    s += std::to_string(loops[i]);
    s.push_back(';');
  }
  return s;
}

// Summary classes of size >= 2, collected as vertex lists.
std::vector<std::vector<Vertex>> signature_classes(const Multigraph& g,
                                                   std::uint32_t R,
                                                   ExploreScratch& sc) {
  std::unordered_map<std::string, std::vector<Vertex>> groups;
  groups.reserve(std::size_t(g.n) * 2);
  for (Vertex v = 0; v < g.n; ++v)
    groups[ball_signature(extract_ball(g, v, R, sc))].push_back(v);
  std::vector<std::vector<Vertex>> classes;
  for (auto& [sig, members] : groups)
    if (members.size() > 1) classes.push_back(std::move(members));
  // Deterministic processing order independent of the hash map.
  std::sort(classes.begin(), classes.end());
  return classes;
}

}  // namespace

std::map<TypeCode, std::uint32_t> Deck::counts() const {
  std::map<TypeCode, std::uint32_t> m;
  for (const TypeCode& c : codes) ++m[c];
  return m;
}

Deck build_deck(const Multigraph& g, std::uint32_t R, std::uint64_t budget) {
  Deck deck;
  deck.codes.resize(g.n);
  ExploreScratch sc;
  std::uint32_t failed = 0;
  Vertex first_failed = 0;
  for (Vertex v = 0; v < g.n; ++v) {
    ExplorationDag dag = bfs_explore(g, {v}, R, sc);
    try {
      deck.codes[v] = code_from_exploration(dag, R, budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      if (failed++ == 0) first_failed = v;
    }
  }
  if (failed)
    throw Error(ErrorCode::BudgetExceeded,
                "canonical code budget exceeded for " + std::to_string(failed) +
                    " of " + std::to_string(g.n) + " vertices (first: " +
                    std::to_string(first_failed) + ")");
  return deck;
}

DistinctReport all_types_distinct(const Multigraph& g, std::uint32_t R,
                                  std::uint64_t budget,
                                  std::size_t max_pairs) {
  ExploreScratch sc;
  std::vector<std::vector<Vertex>> classes = signature_classes(g, R, sc);

  DistinctReport rep;
  rep.distinct = true;
  std::uint32_t failed = 0;
  Vertex first_failed = 0;
  for (const std::vector<Vertex>& members : classes) {
    std::vector<std::pair<TypeCode, Vertex>> order;
    order.reserve(members.size());
    for (Vertex v : members) {
      ExplorationDag dag = bfs_explore(g, {v}, R, sc);
      try {
        order.emplace_back(code_from_exploration(dag, R, budget), v);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        if (failed++ == 0) first_failed = v;
      }
    }
    std::sort(order.begin(), order.end());
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j < order.size() && order[j].first == order[i].first) ++j;
      if (j - i > 1) {
        rep.distinct = false;
        for (std::size_t a = i; a < j && !rep.truncated; ++a)
          for (std::size_t b = a + 1; b < j; ++b) {
            if (rep.duplicates.size() == max_pairs) {
              rep.truncated = true;
              break;
            }
            rep.duplicates.emplace_back(order[a].second, order[b].second);
          }
      }
      i = j;
    }
  }
  if (failed)
    throw Error(ErrorCode::BudgetExceeded,
                "canonical code budget exceeded for " + std::to_string(failed) +
                    " of " + std::to_string(g.n) + " vertices (first: " +
                    std::to_string(first_failed) + ")");
  std::sort(rep.duplicates.begin(), rep.duplicates.end());
  return rep;
}

std::optional<std::uint32_t> r_distinct(const Multigraph& g,
                                        std::uint32_t r_max,
                                        std::uint64_t budget) {
  if (r_max < 1)
    throw Error(ErrorCode::InvalidArgument, "r_distinct needs r_max >= 1");
  ExploreScratch sc;

  // Each level streams the vertices once. A vertex is summarized by a
  // 64-bit hash of the same per-depth counts ball_signature serializes,
  // folded straight off the exploration; equal types always share the
  // hash, so only vertices whose hash repeats are canonized, from the
  // exploration already in hand. Code strings are not kept: a class
  // remembers (code hash, vertex), and when a code hash repeats the
  // earlier vertex's code is recomputed for an exact string comparison.
  // That confirms a duplicate at the first genuine repeat, which at
  // radii below the answer aborts the level after a handful of vertices;
  // a level that streams through with all comparisons distinct is the
  // answer. Hash collisions at either tier cost one spurious recompute
  // and never change the result.
  struct SummaryClass {
    Vertex first = 0;
    bool first_coded = false;
    std::vector<std::pair<std::uint64_t, Vertex>> codes;
  };
  auto fnv = [](const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  };

  std::vector<std::uint32_t> verts, within, across, loops;
  for (std::uint32_t R = 1; R <= r_max; ++R) {
    verts.assign(std::size_t(R) + 1, 0);
    within.assign(std::size_t(R) + 1, 0);
    across.assign(std::size_t(R) + 1, 0);
    loops.assign(std::size_t(R) + 1, 0);
    std::unordered_map<std::uint64_t, SummaryClass> groups;
    groups.reserve(std::size_t(g.n) * 2);
    bool duplicate = false;
    for (Vertex v = 0; v < g.n && !duplicate; ++v) {
      ExplorationDag dag = bfs_explore(g, {v}, R, sc);
      std::fill(verts.begin(), verts.end(), 0);
      std::fill(within.begin(), within.end(), 0);
      std::fill(across.begin(), across.end(), 0);
      std::fill(loops.begin(), loops.end(), 0);
      for (std::uint32_t dep : dag.depth) ++verts[dep];
      for (const DagArrow& a : dag.arrows) {
        std::uint32_t ds = dag.depth[a.src];
        if (a.src == a.dst)
          ++loops[ds];
        else if (dag.depth[a.dst] == ds)
          ++within[ds];
        else
          ++across[ds];
      }
      std::uint64_t h = 1469598103934665603ull;
      auto absorb = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
          h ^= (x >> (8 * i)) & 0xff;
          h *= 1099511628211ull;
        }
      };
      for (std::uint32_t i = 0; i <= R; ++i) {
        absorb(verts[i]);
        absorb(within[i]);
        absorb(across[i]);
        absorb(loops[i]);
      }

      auto [it, inserted] = groups.try_emplace(h);
      SummaryClass& cl = it->second;
      if (inserted) {
        cl.first = v;
        continue;
      }
      if (!cl.first_coded) {
        TypeCode c0 = code_from_exploration(
            bfs_explore(g, {cl.first}, R, sc), R, budget);
        cl.codes.emplace_back(fnv(c0), cl.first);
        cl.first_coded = true;
      }
      TypeCode cv = code_from_exploration(dag, R, budget);
      std::uint64_t hv = fnv(cv);
      for (const auto& [ph, pv] : cl.codes) {
        if (ph != hv) continue;
        TypeCode prior =
            code_from_exploration(bfs_explore(g, {pv}, R, sc), R, budget);
        if (prior == cv) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) cl.codes.emplace_back(hv, v);
    }
    if (!duplicate) return R;
  }
  return std::nullopt;
}

std::vector<RootedBall> build_pieces(const Multigraph& g, std::uint32_t R) {
  std::vector<RootedBall> pieces;
  pieces.reserve(g.n);
  ExploreScratch sc;
  for (Vertex v = 0; v < g.n; ++v) pieces.push_back(extract_ball(g, v, R, sc));
  return pieces;
}

RootedBall reroot_ball(const RootedBall& b, std::uint32_t root,
                       std::uint32_t radius) {
  const std::uint32_t n = std::uint32_t(b.vertex_count());
  if (root >= n)
    throw Error(ErrorCode::InvalidArgument, "reroot_ball: root outside ball");
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& e : b.edges) {
    adj[e.first].push_back(e.second);
    if (e.second != e.first) adj[e.second].push_back(e.first);
  }
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(n, kUnset), local(n, kUnset);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  dist[root] = 0;
  local[root] = 0;
  order.push_back(root);
  for (std::size_t head = 0; head < order.size(); ++head) {
    std::uint32_t u = order[head];
    if (dist[u] == radius) continue;
    for (std::uint32_t w : adj[u]) {
      if (dist[w] != kUnset) continue;
      dist[w] = dist[u] + 1;
      local[w] = std::uint32_t(order.size());
      order.push_back(w);
    }
  }
  RootedBall out;
  out.d = b.d;
  out.radius = radius;
  out.root_label = 0;
  out.depth.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out.depth[i] = dist[order[i]];
  for (const auto& e : b.edges) {
    if (dist[e.first] == kUnset || dist[e.second] == kUnset) continue;
    if (dist[e.first] == radius && dist[e.second] == radius) continue;
    out.edges.emplace_back(local[e.first], local[e.second]);
  }
  return out;
}

void write_deck(std::ostream& out, const Deck& deck) {
  for (std::size_t v = 0; v < deck.codes.size(); ++v)
    out << v << ' ' << to_hex(deck.codes[v]) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "deck write failed");
}

Deck read_deck(std::istream& in) {
  Deck deck;
  std::uint64_t id;
  std::string hex;
  while (in >> id) {
    if (!(in >> hex))
      throw Error(ErrorCode::IoError, "deck file: vertex without a code");
    if (id != deck.codes.size())
      throw Error(ErrorCode::IoError,
                  "deck file: vertex ids must ascend from 0");
    deck.codes.push_back(from_hex(hex));
  }
  if (!in.eof())
    throw Error(ErrorCode::IoError, "deck file: unreadable line");
  return deck;
}

void write_deck_file(const std::string& path, const Deck& deck) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  write_deck(out, deck);
}

Deck read_deck_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_deck(in);
}

void write_pieces(std::ostream& out, const std::vector<RootedBall>& pieces) {
  if (pieces.empty())
    throw Error(ErrorCode::InvalidArgument, "no pieces to write");
  const std::uint32_t d = pieces[0].d, R = pieces[0].radius;
  for (const RootedBall& p : pieces)
    if (p.d != d || p.radius != R)
      throw Error(ErrorCode::InvalidArgument,
                  "pieces disagree on degree or radius");
  out << pieces.size() << ' ' << d << ' ' << R << '\n';
  for (const RootedBall& p : pieces) {
    out << "root=" << p.root_label << ' ' << p.vertex_count() << ' '
        << p.edge_count() << '\n';
    for (const auto& e : p.edges) out << e.first << ' ' << e.second << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "piece write failed");
}

std::vector<RootedBall> read_pieces(std::istream& in) {
  std::uint64_t n;
  std::uint32_t d, R;
  if (!(in >> n >> d >> R))
    throw Error(ErrorCode::IoError, "piece file: bad header");
  std::vector<RootedBall> pieces;
  pieces.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string tag;
    if (!(in >> tag) || tag.rfind("root=", 0) != 0)
      throw Error(ErrorCode::IoError, "piece file: expected root=<id>");
    std::uint64_t root_id = 0;
    try {
      std::size_t pos = 0;
      root_id = std::stoull(tag.substr(5), &pos);
      if (pos != tag.size() - 5) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw Error(ErrorCode::IoError, "piece file: bad root id");
    }
    if (root_id >= n)
      throw Error(ErrorCode::IoError, "piece file: root id out of range");
    std::uint32_t vcount;
    std::uint64_t ecount;
    if (!(in >> vcount >> ecount))
      throw Error(ErrorCode::IoError, "piece file: bad piece counts");
    if (vcount == 0)
      throw Error(ErrorCode::IoError, "piece file: empty piece");
    RootedBall b;
    b.d = d;
    b.radius = R;
    b.root_label = Vertex(root_id);
    b.edges.reserve(ecount);
    for (std::uint64_t e = 0; e < ecount; ++e) {
      std::uint32_t u, v;
      if (!(in >> u >> v))
        throw Error(ErrorCode::IoError, "piece file: bad edge line");
      if (u >= vcount || v >= vcount)
        throw Error(ErrorCode::IoError, "piece file: edge endpoint out of range");
      b.edges.emplace_back(u, v);
    }
    // Depths are implied; recover them and insist the piece is a ball.
    std::vector<std::vector<std::uint32_t>> adj(vcount);
    for (const auto& e : b.edges) {
      adj[e.first].push_back(e.second);
      if (e.second != e.first) adj[e.second].push_back(e.first);
    }
    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(vcount, kUnset);
    std::vector<std::uint32_t> queue;
    queue.reserve(vcount);
    dist[0] = 0;
    queue.push_back(0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t u = queue[head];
      for (std::uint32_t w : adj[u]) {
        if (dist[w] != kUnset) continue;
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
    for (std::uint32_t v = 0; v < vcount; ++v) {
      if (dist[v] == kUnset)
        throw Error(ErrorCode::IoError,
                    "piece file: vertex unreachable from the root");
      if (dist[v] > R)
        throw Error(ErrorCode::IoError,
                    "piece file: vertex beyond the stated radius");
    }
    for (const auto& e : b.edges)
      if (dist[e.first] == R && dist[e.second] == R)
        throw Error(ErrorCode::IoError,
                    "piece file: edge violates the boundary rule");
    b.depth.assign(dist.begin(), dist.end());
    pieces.push_back(std::move(b));
  }
  return pieces;
}

void write_pieces_file(const std::string& path,
                       const std::vector<RootedBall>& pieces) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  write_pieces(out, pieces);
}

std::vector<RootedBall> read_pieces_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_pieces(in);
}

}  // namespace shotgun
