#include "core/canon.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "core/error.hpp"

namespace shotgun {

namespace detail {

std::string rle_codes(std::vector<std::string> codes) {
  std::sort(codes.begin(), codes.end());
  std::string out;
  std::size_t i = 0;
  while (i < codes.size()) {
    std::size_t j = i;
    while (j < codes.size() && codes[j] == codes[i]) ++j;
    out += codes[i];
    if (j - i > 1) {
      out += '*';
      out += std::to_string(j - i);
    }
    i = j;
  }
  return out;
}

namespace {

// Canonical labeling by color refinement with individualization. Vertices
// start colored by (root position, decoration, loop count); rounds of
// refinement split classes by the multiset of (neighbor class, bundle
// multiplicity) pairs, with class indices re-ranked canonically each
// round. If the partition stays non-discrete the first non-singleton
// class is individualized one member at a time and the minimal resulting
// string wins. Regular-graph ball skeletons almost always discretize
// without branching; the budget bounds the symmetric worst case.
struct IRCanon {
  const SmallGraph& g;
  const std::vector<std::string>& decor;
  std::uint64_t budget;
  std::uint64_t nodes = 0;

  // Flat adjacency: entries for vertex v live in [off[v], off[v+1]),
  // encoded (neighbor, multiplicity); loops are kept apart.
  std::vector<std::uint32_t> off;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> nbr;
  std::vector<std::uint32_t> loopm;

  IRCanon(const SmallGraph& gr, const std::vector<std::string>& dc,
          std::uint64_t b)
      : g(gr), decor(dc), budget(b) {
    std::vector<std::uint32_t> deg(g.n, 0);
    loopm.assign(g.n, 0);
    for (const SmallGraph::Bundle& bd : g.bundles) {
      if (bd.a == bd.b) {
        loopm[bd.a] += bd.mult;
      } else {
        ++deg[bd.a];
        ++deg[bd.b];
      }
    }
    off.assign(g.n + 1, 0);
    for (std::uint32_t v = 0; v < g.n; ++v) off[v + 1] = off[v] + deg[v];
    nbr.resize(off[g.n]);
    std::vector<std::uint32_t> fill(off.begin(), off.end() - 1);
    for (const SmallGraph::Bundle& bd : g.bundles) {
      if (bd.a == bd.b) continue;
      nbr[fill[bd.a]++] = {bd.b, bd.mult};
      nbr[fill[bd.b]++] = {bd.a, bd.mult};
    }
  }

  // Splits classes until the count stops growing; class indices stay
  // canonical because they are ranks of canonically comparable keys. A
  // vertex's round key is (its class, the sorted multiset of
  // (neighbor class, multiplicity) pairs); pairs pack into one 64-bit
  // word whose numeric order equals the pair's lexicographic order. The
  // class is the leading key component, so ranking all vertices is the
  // same as ranking each class's members on the neighbor part alone, in
  // class order; members of singleton classes need no key at all.
  void refine(std::vector<std::uint32_t>& cls,
              std::vector<std::uint64_t>& enc,
              std::vector<std::uint32_t>& ord,
              std::vector<std::uint32_t>& ranked) const {
    std::uint32_t count = *std::max_element(cls.begin(), cls.end()) + 1;
    enc.resize(nbr.size());
    ord.resize(g.n);
    ranked.resize(g.n);
    std::vector<std::uint32_t> start, fill;
    while (true) {
      start.assign(std::size_t(count) + 1, 0);
      for (std::uint32_t v = 0; v < g.n; ++v) ++start[cls[v] + 1];
      for (std::uint32_t c = 0; c < count; ++c) start[c + 1] += start[c];
      fill.assign(start.begin(), start.end() - 1);
      for (std::uint32_t v = 0; v < g.n; ++v) ord[fill[cls[v]]++] = v;
      auto nbr_less = [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(
            enc.begin() + off[a], enc.begin() + off[a + 1],
            enc.begin() + off[b], enc.begin() + off[b + 1]);
      };
      auto nbr_equal = [&](std::uint32_t a, std::uint32_t b) {
        if (off[a + 1] - off[a] != off[b + 1] - off[b]) return false;
        return std::equal(enc.begin() + off[a], enc.begin() + off[a + 1],
                          enc.begin() + off[b]);
      };
      std::uint32_t next = 0;
      for (std::uint32_t c = 0; c < count; ++c) {
        std::uint32_t lo = start[c], hi = start[c + 1];
        if (lo == hi) continue;  // individualization leaves gaps in the ids
        if (hi - lo == 1) {
          ranked[ord[lo]] = next++;
          continue;
        }
        for (std::uint32_t i = lo; i < hi; ++i) {
          std::uint32_t v = ord[i];
          for (std::uint32_t k = off[v]; k < off[v + 1]; ++k)
            enc[k] = (std::uint64_t(cls[nbr[k].first]) << 32) | nbr[k].second;
          std::sort(enc.begin() + off[v], enc.begin() + off[v + 1]);
        }
        std::sort(ord.begin() + lo, ord.begin() + hi, nbr_less);
        for (std::uint32_t i = lo; i < hi; ++i) {
          if (i > lo && !nbr_equal(ord[i], ord[i - 1])) ++next;
          ranked[ord[i]] = next;
        }
        ++next;
      }
      cls.swap(ranked);
      if (next == count) return;
      count = next;
    }
  }

  std::string serialize(const std::vector<std::uint32_t>& cls) const {
    std::vector<std::uint32_t> at(g.n);
    for (std::uint32_t v = 0; v < g.n; ++v) at[cls[v]] = v;
    std::string out;
    for (std::uint32_t i = 0; i < g.n; ++i) {
      std::uint32_t v = at[i];
      out += '{';
      out += decor[v];
      out += '|';
      bool first = true;
      if (loopm[v] > 0) {
        out += 'l';
        if (loopm[v] > 1) {
          out += '*';
          out += std::to_string(loopm[v]);
        }
        first = false;
      }
      std::vector<std::pair<std::uint32_t, std::uint32_t>> out_edges;
      for (std::uint32_t k = off[v]; k < off[v + 1]; ++k)
        if (cls[nbr[k].first] > i)
          out_edges.emplace_back(cls[nbr[k].first], nbr[k].second);
      std::sort(out_edges.begin(), out_edges.end());
      for (auto [j, m] : out_edges) {
        if (!first) out += ',';
        first = false;
        out += 'e';
        out += std::to_string(j);
        if (m > 1) {
          out += '*';
          out += std::to_string(m);
        }
      }
      out += '}';
    }
    return out;
  }

  std::vector<std::uint64_t> enc_s;
  std::vector<std::uint32_t> ord_s, ranked_s;

  std::string run(std::vector<std::uint32_t> cls) {
    if (++nodes > budget)
      throw Error(ErrorCode::BudgetExceeded,
                  "canonical labeling budget exhausted");
    refine(cls, enc_s, ord_s, ranked_s);
    std::vector<std::uint32_t> size(g.n, 0);
    for (std::uint32_t c : cls) ++size[c];
    std::uint32_t split = g.n;
    for (std::uint32_t c = 0; c < g.n; ++c)
      if (size[c] >= 2) {
        split = c;
        break;
      }
    if (split == g.n) return serialize(cls);
    std::string best;
    bool have = false;
    for (std::uint32_t v = 0; v < g.n; ++v) {
      if (cls[v] != split) continue;
      std::vector<std::uint32_t> next(g.n);
      for (std::uint32_t u = 0; u < g.n; ++u)
        next[u] = cls[u] * 2 + (u == v ? 0 : 1);
      std::string s = run(std::move(next));
      if (!have || s < best) {
        best = std::move(s);
        have = true;
      }
    }
    return best;
  }
};

}  // namespace

std::string canonical_skeleton_code(const SmallGraph& g,
                                    const std::vector<std::uint32_t>& roots,
                                    const std::vector<std::string>& decor,
                                    std::uint64_t budget) {
  if (roots.empty())
    throw Error(ErrorCode::InvalidArgument, "canonical labeling needs a root");
  if (g.n == 0)
    throw Error(ErrorCode::InvalidArgument, "cannot label an empty skeleton");

  IRCanon ir(g, decor, budget);
  // Reachability from the roots; unreachable pieces mean malformed input.
  std::vector<std::uint8_t> seen(g.n, 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t r : roots) {
    if (r >= g.n)
      throw Error(ErrorCode::InvalidArgument, "labeling root out of range");
    if (!seen[r]) {
      seen[r] = 1;
      stack.push_back(r);
    }
  }
  if (stack.size() != roots.size())
    throw Error(ErrorCode::InvalidArgument, "duplicate labeling root");
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t k = ir.off[v]; k < ir.off[v + 1]; ++k)
      if (!seen[ir.nbr[k].first]) {
        seen[ir.nbr[k].first] = 1;
        stack.push_back(ir.nbr[k].first);
      }
  }
  for (std::uint32_t v = 0; v < g.n; ++v)
    if (!seen[v])
      throw Error(ErrorCode::InvalidArgument,
                  "skeleton is not connected from its roots");

  // Initial coloring: roots take positions 0.. in order, everything else
  // ranks by (decoration, loop count). Refinement preserves the roots'
  // leading positions because class indices only ever re-rank upward.
  std::vector<std::uint32_t> cls(g.n);
  std::vector<std::int64_t> root_pos(g.n, -1);
  for (std::size_t i = 0; i < roots.size(); ++i)
    root_pos[roots[i]] = static_cast<std::int64_t>(i);
  std::vector<
      std::pair<std::tuple<std::int64_t, std::string, std::uint32_t>,
                std::uint32_t>>
      keyed(g.n);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    std::int64_t rp = root_pos[v] >= 0
                          ? root_pos[v]
                          : std::numeric_limits<std::int64_t>::max();
    keyed[v] = {{rp, decor[v], ir.loopm[v]}, v};
  }
  std::sort(keyed.begin(), keyed.end());
  std::uint32_t next = 0;
  for (std::uint32_t i = 0; i < g.n; ++i) {
    if (i > 0 && keyed[i].first != keyed[i - 1].first) ++next;
    cls[keyed[i].second] = next;
  }
  return ir.run(std::move(cls));
}

}  // namespace detail

TypeCode complete_tree_code(std::uint32_t d, std::uint32_t R) {
  if (d < 3) throw Error(ErrorCode::InvalidDegree, "degree must be at least 3");
  if (R == 0) return "{|}";
  std::string t = "()";
  for (std::uint32_t j = 1; j < R; ++j)
    t = "(" + t + "*" + std::to_string(d - 1) + ")";
  return "{" + t + "*" + std::to_string(d) + "|}";
}

TypeCode canonical_code(const RootedBall& ball, std::uint64_t budget) {
  std::uint32_t n = static_cast<std::uint32_t>(ball.vertex_count());
  if (n == 0)
    throw Error(ErrorCode::InvalidArgument, "cannot code an empty ball");
  std::vector<std::vector<std::uint32_t>> nbrs(n);
  for (auto [a, b] : ball.edges) {
    if (a >= n || b >= n)
      throw Error(ErrorCode::InvalidArgument, "ball edge out of range");
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);  // loops deliberately appear twice
  }
  std::vector<std::uint32_t> deg(n);
  for (std::uint32_t v = 0; v < n; ++v)
    deg[v] = static_cast<std::uint32_t>(nbrs[v].size());

  // Strip non-root leaves until only the cycle-bearing skeleton (plus the
  // root and its connections to it) remains.
  std::vector<std::uint8_t> alive(n, 1);
  std::vector<std::uint32_t> strip_queue, deletion_order;
  for (std::uint32_t v = 1; v < n; ++v)
    if (deg[v] == 1) strip_queue.push_back(v);
  for (std::size_t qi = 0; qi < strip_queue.size(); ++qi) {
    std::uint32_t v = strip_queue[qi];
    alive[v] = 0;
    deletion_order.push_back(v);
    for (std::uint32_t u : nbrs[v]) {
      if (!alive[u]) continue;
      if (--deg[u] == 1 && u != 0) strip_queue.push_back(u);
      break;  // deg[v] == 1: exactly one alive neighbor instance
    }
  }

  std::vector<std::vector<std::string>> child_codes(n);
  std::vector<std::string> code(n);
  // Leaves were queued before their hanging parents, so one forward pass
  // sees every child code before it is needed.
  for (std::uint32_t v : deletion_order) {
    code[v] = "(" + detail::rle_codes(std::move(child_codes[v])) + ")";
    bool attached = false;
    for (std::uint32_t u : nbrs[v]) {
      // The hang parent is v's unique neighbor that is deleted after v or
      // survives; every other neighbor was deleted before v and already
      // contributed its code to v.
      if (alive[u] || code[u].empty()) {
        child_codes[u].push_back(code[v]);
        attached = true;
        break;
      }
    }
    if (!attached)
      throw Error(ErrorCode::InvalidArgument, "ball is not connected");
  }

  std::vector<std::int64_t> relabel(n, -1);
  std::vector<std::uint32_t> skeleton_vertices;
  for (std::uint32_t v = 0; v < n; ++v)
    if (alive[v]) {
      relabel[v] = static_cast<std::int64_t>(skeleton_vertices.size());
      skeleton_vertices.push_back(v);
    }
  detail::SmallGraph k;
  k.n = static_cast<std::uint32_t>(skeleton_vertices.size());
  std::vector<std::uint64_t> grouped;
  for (auto [a, b] : ball.edges) {
    if (!alive[a] || !alive[b]) continue;
    std::uint64_t x = static_cast<std::uint64_t>(relabel[a]);
    std::uint64_t y = static_cast<std::uint64_t>(relabel[b]);
    if (x > y) std::swap(x, y);
    grouped.push_back((x << 32) | y);
  }
  std::sort(grouped.begin(), grouped.end());
  for (std::size_t i = 0; i < grouped.size();) {
    std::size_t j = i;
    while (j < grouped.size() && grouped[j] == grouped[i]) ++j;
    k.bundles.push_back(detail::SmallGraph::Bundle{
        static_cast<std::uint32_t>(grouped[i] >> 32),
        static_cast<std::uint32_t>(grouped[i] & 0xFFFFFFFFu),
        static_cast<std::uint32_t>(j - i)});
    i = j;
  }
  std::vector<std::string> decor(k.n);
  for (std::uint32_t v = 0; v < n; ++v)
    if (alive[v]) decor[relabel[v]] = detail::rle_codes(std::move(child_codes[v]));
  return detail::canonical_skeleton_code(k, {0}, decor, budget);
}

bool isomorphic(const RootedBall& a, const RootedBall& b,
                std::uint64_t budget) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
    return false;
  return canonical_code(a, budget) == canonical_code(b, budget);
}

TypeCode code_from_exploration(const ExplorationDag& dag, std::uint32_t R,
                               std::uint64_t budget) {
  if (dag.sources.size() != 1)
    throw Error(ErrorCode::InvalidArgument,
                "exploration code needs a single source");
  std::uint32_t nv = static_cast<std::uint32_t>(dag.vertex.size());
  bool any_collision = false;
  for (const DagArrow& a : dag.arrows)
    if (a.collision) {
      any_collision = true;
      break;
    }
  if (!any_collision) return complete_tree_code(dag.d, R);

  std::vector<std::uint8_t> mark(nv, 0);
  auto climb = [&](std::uint32_t i) {
    while (!mark[i]) {
      mark[i] = 1;
      std::uint32_t pa = dag.parent_arrow[i];
      if (pa == kNoArrow) break;
      i = dag.arrows[pa].src;
    }
  };
  for (const DagArrow& a : dag.arrows)
    if (a.collision) {
      climb(a.src);
      climb(a.dst);
    }

  std::vector<std::int64_t> relabel(nv, -1);
  std::uint32_t kn = 0;
  for (std::uint32_t i = 0; i < nv; ++i)
    if (mark[i]) relabel[i] = kn++;
  // Skeleton edges: each marked non-source vertex contributes its first
  // arrival arrow, and every collision arrow is a skeleton edge.
  std::vector<std::uint64_t> grouped;
  std::vector<std::uint32_t> deg_k(kn, 0);
  auto add_edge = [&](std::uint32_t i, std::uint32_t j) {
    std::uint64_t x = static_cast<std::uint64_t>(relabel[i]);
    std::uint64_t y = static_cast<std::uint64_t>(relabel[j]);
    deg_k[x] += (i == j) ? 2 : 1;
    if (i != j) ++deg_k[y];
    if (x > y) std::swap(x, y);
    grouped.push_back((x << 32) | y);
  };
  for (std::uint32_t i = 1; i < nv; ++i)
    if (mark[i]) add_edge(dag.arrows[dag.parent_arrow[i]].src, i);
  for (const DagArrow& a : dag.arrows)
    if (a.collision) add_edge(a.src, a.dst);

  detail::SmallGraph k;
  k.n = kn;
  std::sort(grouped.begin(), grouped.end());
  for (std::size_t i = 0; i < grouped.size();) {
    std::size_t j = i;
    while (j < grouped.size() && grouped[j] == grouped[i]) ++j;
    k.bundles.push_back(detail::SmallGraph::Bundle{
        static_cast<std::uint32_t>(grouped[i] >> 32),
        static_cast<std::uint32_t>(grouped[i] & 0xFFFFFFFFu),
        static_cast<std::uint32_t>(j - i)});
    i = j;
  }

  // Hanging subtrees of a skeleton vertex at depth k are complete
  // (d-1)-ary trees of height R-k-1: every vertex of a regular graph off
  // the skeleton has its full degree inside the ball until the boundary.
  std::vector<std::string> tcode(R);
  if (R >= 1) {
    tcode[0] = "()";
    for (std::uint32_t j = 1; j < R; ++j)
      tcode[j] = "(" + tcode[j - 1] + "*" + std::to_string(dag.d - 1) + ")";
  }
  std::vector<std::string> decor(kn);
  for (std::uint32_t i = 0; i < nv; ++i) {
    if (!mark[i]) continue;
    std::uint32_t depth = dag.depth[i];
    if (depth >= R) continue;  // boundary vertices hang nothing
    std::uint32_t used = deg_k[relabel[i]];
    if (used > dag.d)
      throw std::logic_error("skeleton degree exceeds graph degree");
    std::uint32_t f = dag.d - used;
    if (f == 0) continue;
    decor[relabel[i]] =
        tcode[R - depth - 1] + (f > 1 ? "*" + std::to_string(f) : "");
  }
  return detail::canonical_skeleton_code(k, {0}, decor, budget);
}

}  // namespace shotgun
