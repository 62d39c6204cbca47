#include "core/cycles.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "core/error.hpp"

namespace shotgun {

using boost::multiprecision::cpp_int;

std::uint32_t CycleStructure::max_depth() const {
  std::uint32_t m = 0;
  for (std::uint32_t dep : depth) m = std::max(m, dep);
  return m;
}

CycleStructure extract_cycle_structure(const ExplorationDag& dag,
                                       std::uint32_t R) {
  if (dag.radius < R)
    throw Error(ErrorCode::InvalidArgument,
                "exploration too shallow for requested structure radius");
  // Arrows revealed within radius R form a prefix: queue depths never
  // decrease, so everything popped from depth < R comes first.
  std::size_t cut = dag.arrows.size();
  for (std::size_t t = 0; t < dag.arrows.size(); ++t)
    if (dag.depth[dag.arrows[t].src] >= R) {
      cut = t;
      break;
    }

  std::uint32_t ns = static_cast<std::uint32_t>(dag.sources.size());
  std::vector<std::uint8_t> mark(dag.vertex.size(), 0);
  auto climb = [&](std::uint32_t i) {
    while (!mark[i]) {
      mark[i] = 1;
      std::uint32_t pa = dag.parent_arrow[i];
      if (pa == kNoArrow) break;
      i = dag.arrows[pa].src;
    }
  };
  for (std::size_t t = 0; t < cut; ++t)
    if (dag.arrows[t].collision) {
      climb(dag.arrows[t].src);
      climb(dag.arrows[t].dst);
    }
  for (std::uint32_t i = 0; i < ns; ++i) mark[i] = 1;  // sources always kept

  CycleStructure c;
  c.d = dag.d;
  c.nsources = ns;
  std::vector<std::int64_t> relabel(dag.vertex.size(), -1);
  for (std::uint32_t i = 0; i < dag.vertex.size(); ++i) {
    if (!mark[i]) continue;
    relabel[i] = static_cast<std::int64_t>(c.depth.size());
    c.depth.push_back(dag.depth[i]);
  }
  for (std::size_t t = 0; t < cut; ++t) {
    const DagArrow& a = dag.arrows[t];
    if (!a.collision && !mark[a.dst]) continue;
    if (!mark[a.src] || !mark[a.dst])
      throw std::logic_error("structure arc endpoint missing from closure");
    c.arcs.push_back(StructArc{static_cast<std::uint32_t>(relabel[a.src]),
                               static_cast<std::uint32_t>(relabel[a.dst]),
                               a.collision});
  }
  return c;
}

std::uint32_t gamma(const CycleStructure& c) {
  std::uint32_t collisions = 0;
  for (const StructArc& a : c.arcs) collisions += a.collision ? 1 : 0;
  std::uint64_t tree_arcs = c.vertex_count() - c.nsources;
  if (collisions != c.arcs.size() - tree_arcs)
    throw std::logic_error("cycle count disagrees with arc surplus");
  return collisions;
}

namespace {

detail::SmallGraph bundle_arcs(
    std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>&
                         edges) {
  detail::SmallGraph k;
  k.n = n;
  std::vector<std::uint64_t> grouped;
  grouped.reserve(edges.size());
  for (auto [a, b] : edges) {
    std::uint64_t x = a, y = b;
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
  return k;
}

}  // namespace

TypeCode canonical_structure_code(const CycleStructure& c,
                                  std::uint64_t budget) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(c.arcs.size());
  for (const StructArc& a : c.arcs) edges.emplace_back(a.src, a.dst);
  detail::SmallGraph k =
      bundle_arcs(static_cast<std::uint32_t>(c.vertex_count()), edges);
  std::vector<std::uint32_t> roots(c.nsources);
  for (std::uint32_t i = 0; i < c.nsources; ++i) roots[i] = i;
  std::vector<std::string> decor(k.n);
  return detail::canonical_skeleton_code(k, roots, decor, budget);
}

namespace {

// (d-1)^e saturating at the uint64 ceiling; fine for comparisons against
// quantities far below it.
std::uint64_t pow_sat(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

}  // namespace

bool omega_membership(const RootedBall& b, std::uint32_t R, std::uint32_t d) {
  if (d < 3) throw Error(ErrorCode::InvalidDegree, "degree must be at least 3");
  return 3 * static_cast<std::uint64_t>(b.edge_count()) >= pow_sat(d - 1, R);
}

namespace {

TrReport t_r_impl(const MSeries& m, std::uint32_t R, std::uint32_t d,
                  std::uint64_t n, bool directed) {
  if (n < 3) throw Error(ErrorCode::DomainError, "membership needs n >= 3");
  if (d < 3) throw Error(ErrorCode::InvalidDegree, "degree must be at least 3");
  if (m.R < R)
    throw Error(ErrorCode::InvalidArgument, "collision series too short");
  TrReport rep;
  double logn = std::log(static_cast<double>(n));
  double cut = std::pow(logn, 4.0);
  std::uint32_t i0 = 1;
  while (pow_sat(d - 1, i0) < cut) ++i0;
  rep.i0 = i0;
  for (std::uint32_t i = 1; i < i0 && i <= R; ++i) rep.m_low += m.m(i);
  for (std::uint32_t i = i0; i <= R; ++i)
    rep.tail_sum += static_cast<double>(m.m(i)) /
                    static_cast<double>(pow_sat(d - 1, i));
  rep.threshold = (directed ? 7.0 : 3.0) / logn;
  bool low_ok = directed ? (rep.m_low == 0) : (rep.m_low <= 1);
  rep.member = low_ok && rep.tail_sum <= rep.threshold;
  return rep;
}

}  // namespace

TrReport t_r_membership(const MSeries& m, std::uint32_t R, std::uint32_t d,
                        std::uint64_t n) {
  return t_r_impl(m, R, d, n, false);
}

TrReport t_r_membership_directed(const MSeries& m, std::uint32_t R,
                                 std::uint32_t d, std::uint64_t n) {
  return t_r_impl(m, R, d, n, true);
}

std::int64_t edge_count_lower_bound(const MSeries& m, std::uint32_t R,
                                    std::uint32_t d, std::uint32_t delta1) {
  if (R < 1)
    throw Error(ErrorCode::InvalidArgument, "edge bound needs R >= 1");
  if (d < 3) throw Error(ErrorCode::InvalidDegree, "degree must be at least 3");
  if (delta1 != d && delta1 != d - 2)
    throw Error(ErrorCode::InvalidArgument,
                "first frontier size must be d or d-2");
  if (m.R < R)
    throw Error(ErrorCode::InvalidArgument, "collision series too short");
  cpp_int b = d - 1;
  // Scale everything by (d-1) so the i = R term stays integral, then take
  // the ceiling of the division at the end.
  cpp_int scaled = delta1 * pow(b, R);  // (d-1) * (d-1)^{R-1} * delta1
  for (std::uint32_t i = 1; i <= R; ++i) {
    cpp_int weight = pow(b, R - i);  // (d-1) * (d-1)^{R-1-i}
    scaled -= weight * (2 * (d - 1) * m.gamma_half[i] + d * m.gamma_int[i]);
  }
  cpp_int q = scaled / b;
  if (scaled > 0 && scaled % b != 0) q += 1;  // ceiling for positive values
  if (q > std::numeric_limits<std::int64_t>::max() ||
      q < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::DomainError, "edge bound out of integer range");
  return static_cast<std::int64_t>(q);
}

PackingReport packing_report(const CycleStructure& c, std::uint32_t R,
                             std::uint32_t d) {
  if (d < 3) throw Error(ErrorCode::InvalidDegree, "degree must be at least 3");
  PackingReport rep;
  rep.edges = c.arcs.size();
  rep.gamma = gamma(c);
  if (rep.gamma == 0) return rep;
  rep.vacuous = false;
  double lg = std::log(static_cast<double>(rep.gamma)) /
              std::log(static_cast<double>(d - 1));
  rep.bound = 2.0 * rep.gamma * (static_cast<double>(R) - lg);
  rep.within = static_cast<double>(rep.edges) <= rep.bound;
  return rep;
}

namespace {

struct EditState {
  std::uint32_t n = 0, ns = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// Removes dangling non-source leaves and isolated non-sources, then
// relabels compactly with sources kept in front. Returns false when a
// piece of the graph floats free of every source.
bool prune_and_relabel(EditState& s) {
  while (true) {
    std::vector<std::uint32_t> deg(s.n, 0);
    for (auto [a, b] : s.edges) {
      deg[a] += (a == b) ? 2 : 1;
      if (a != b) ++deg[b];
    }
    std::int64_t drop = -1;
    for (std::uint32_t v = s.ns; v < s.n && drop < 0; ++v)
      if (deg[v] <= 1) drop = v;
    if (drop < 0) break;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> keep;
    for (auto [a, b] : s.edges)
      if (a != drop && b != drop) keep.emplace_back(a, b);
    s.edges = std::move(keep);
    for (auto& [a, b] : s.edges) {
      if (a > drop) --a;
      if (b > drop) --b;
    }
    --s.n;
  }
  // Reachability from the sources.
  std::vector<std::vector<std::uint32_t>> adj(s.n);
  for (auto [a, b] : s.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::uint8_t> seen(s.n, 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t v = 0; v < s.ns; ++v) {
    seen[v] = 1;
    stack.push_back(v);
  }
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  for (std::uint32_t v = 0; v < s.n; ++v)
    if (!seen[v]) return false;
  return true;
}

std::string state_code(const EditState& s, std::uint64_t budget) {
  detail::SmallGraph k = bundle_arcs(s.n, s.edges);
  std::vector<std::uint32_t> roots(s.ns);
  for (std::uint32_t i = 0; i < s.ns; ++i) roots[i] = i;
  std::vector<std::string> decor(k.n);
  return detail::canonical_skeleton_code(k, roots, decor, budget);
}

}  // namespace

std::optional<std::uint32_t> cycle_distance(const CycleStructure& a,
                                            const CycleStructure& b,
                                            std::uint32_t R,
                                            std::uint64_t budget) {
  if (a.nsources != b.nsources)
    throw Error(ErrorCode::InvalidArgument,
                "structures have different source counts");
  if (a.nsources == 0)
    throw Error(ErrorCode::InvalidArgument, "structures need sources");
  auto to_state = [](const CycleStructure& c) {
    EditState s;
    s.n = static_cast<std::uint32_t>(c.vertex_count());
    s.ns = c.nsources;
    for (const StructArc& arc : c.arcs) s.edges.emplace_back(arc.src, arc.dst);
    return s;
  };
  EditState sa = to_state(a);
  std::string target = state_code(to_state(b), kDefaultCodeBudget);
  std::string start = state_code(sa, kDefaultCodeBudget);
  if (start == target) return 0;

  std::unordered_set<std::string> seen;
  seen.insert(start);
  std::deque<std::pair<EditState, std::uint32_t>> queue;
  queue.emplace_back(std::move(sa), 0);
  std::uint64_t generated = 0;
  while (!queue.empty()) {
    auto [s, dist] = std::move(queue.front());
    queue.pop_front();
    std::vector<EditState> next;
    // Joining moves: a fresh path of length 1..2R between two existing
    // vertices (or one vertex to itself).
    for (std::uint32_t u = 0; u < s.n; ++u) {
      for (std::uint32_t w = u; w < s.n; ++w) {
        for (std::uint32_t len = 1; len <= 2 * R; ++len) {
          EditState t = s;
          std::uint32_t prev = u;
          for (std::uint32_t step = 1; step < len; ++step) {
            t.edges.emplace_back(prev, t.n);
            prev = t.n++;
          }
          t.edges.emplace_back(prev, w);
          next.push_back(std::move(t));
        }
      }
    }
    // Removal moves: drop one arc, prune the dangling remainder.
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
      EditState t = s;
      t.edges.erase(t.edges.begin() + static_cast<std::ptrdiff_t>(e));
      if (prune_and_relabel(t)) next.push_back(std::move(t));
    }
    for (EditState& t : next) {
      if (++generated > budget) return std::nullopt;
      std::string code = state_code(t, kDefaultCodeBudget);
      if (code == target) return dist + 1;
      if (seen.insert(std::move(code)).second)
        queue.emplace_back(std::move(t), dist + 1);
    }
  }
  return std::nullopt;
}

}  // namespace shotgun
