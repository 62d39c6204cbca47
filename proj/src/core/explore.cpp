#include "core/explore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/error.hpp"

namespace shotgun {

std::uint32_t ExplorationDag::collision_count() const {
  std::uint32_t c = 0;
  for (const DagArrow& a : arrows) c += a.collision ? 1 : 0;
  return c;
}

std::vector<CollisionEvent> ExplorationDag::collisions() const {
  std::vector<CollisionEvent> out;
  for (std::uint32_t t = 0; t < arrows.size(); ++t) {
    const DagArrow& a = arrows[t];
    if (!a.collision) continue;
    out.push_back(CollisionEvent{t, vertex[a.src], vertex[a.dst],
                                 depth[a.src], depth[a.dst]});
  }
  return out;
}

std::vector<std::uint32_t> ExplorationDag::indegree() const {
  std::vector<std::uint32_t> in(vertex.size(), 0);
  for (const DagArrow& a : arrows) ++in[a.dst];
  return in;
}

void ExploreScratch::begin(const Multigraph& g) {
  if (vertex_epoch.size() < g.n) {
    vertex_epoch.assign(g.n, 0);
    disc_index.resize(g.n);
  }
  if (he_epoch.size() < g.half_edge_count())
    he_epoch.assign(g.half_edge_count(), 0);
  ++epoch;
  if (epoch == 0) {  // stamp wrap-around: wipe and restart
    std::fill(vertex_epoch.begin(), vertex_epoch.end(), 0);
    std::fill(he_epoch.begin(), he_epoch.end(), 0);
    epoch = 1;
  }
  queue.clear();
  vtx.clear();
  dep.clear();
  par.clear();
  arr.clear();
  delta.clear();
}

void explore_into(ExploreScratch& sc, const Multigraph& g,
                  const std::vector<Vertex>& sources,
                  const std::vector<HalfEdge>& init_slots,
                  const std::vector<HalfEdge>& blocked, std::uint32_t radius) {
  sc.begin(g);
  for (Vertex s : sources) {
    if (s >= g.n)
      throw Error(ErrorCode::InvalidArgument, "source vertex out of range");
    if (sc.vertex_epoch[s] == sc.epoch)
      throw Error(ErrorCode::InvalidArgument, "duplicate source vertex");
    sc.vertex_epoch[s] = sc.epoch;
    sc.disc_index[s] = static_cast<std::uint32_t>(sc.vtx.size());
    sc.vtx.push_back(s);
    sc.dep.push_back(0);
    sc.par.push_back(kNoArrow);
  }
  for (HalfEdge b : blocked) sc.he_epoch[b] = sc.epoch;
  for (HalfEdge h : init_slots) sc.queue.push_back(h);

  const bool check_delta = sources.size() == 1 && blocked.empty() &&
                           g.half_edge_count() <= 10000;
  std::uint64_t live = init_slots.size();
  std::uint64_t seen_collisions = 0;
  sc.delta.push_back(live);
  std::size_t head = 0;
  while (head < sc.queue.size()) {
    HalfEdge gq = sc.queue[head];
    if (sc.he_epoch[gq] == sc.epoch) {  // already consumed as a target
      ++head;
      continue;
    }
    std::uint32_t ui = sc.disc_index[g.owner(gq)];
    std::uint32_t du = sc.dep[ui];
    if (du >= radius) break;  // queue depths are nondecreasing
    ++head;
    sc.he_epoch[gq] = sc.epoch;
    --live;
    HalfEdge h = g.match[gq];
    if (sc.he_epoch[h] == sc.epoch) {
      // Only a blocked slot can already be stamped here: a consumed
      // partner would have consumed gq along with it.
      if (blocked.empty())
        throw std::logic_error("explore: matched an already-consumed slot");
      continue;
    }
    sc.he_epoch[h] = sc.epoch;
    Vertex w = g.owner(h);
    if (sc.vertex_epoch[w] != sc.epoch) {
      std::uint32_t wi = static_cast<std::uint32_t>(sc.vtx.size());
      sc.vertex_epoch[w] = sc.epoch;
      sc.disc_index[w] = wi;
      sc.vtx.push_back(w);
      sc.dep.push_back(du + 1);
      sc.par.push_back(static_cast<std::uint32_t>(sc.arr.size()));
      sc.arr.push_back(DagArrow{ui, wi, gq, h, false});
      for (std::uint32_t k = 0; k < g.d; ++k) {
        HalfEdge slot = g.first_slot(w) + k;
        if (slot != h) sc.queue.push_back(slot);
      }
      live += g.d - 1;
    } else {
      --live;
      std::uint32_t wi = sc.disc_index[w];
      std::uint32_t dw = sc.dep[wi];
      if (dw != du && dw != du + 1)
        throw std::logic_error("explore: collision depth outside {du, du+1}");
      ++seen_collisions;
      sc.arr.push_back(DagArrow{ui, wi, gq, h, true});
    }
    sc.delta.push_back(live);
    if (check_delta) {
      // Frontier identity for a single full source: after t steps the
      // frontier holds d + (d-2)t - d * (collisions so far) slots.
      std::uint64_t t = sc.arr.size();
      std::int64_t want = static_cast<std::int64_t>(g.d) +
                          static_cast<std::int64_t>(g.d - 2) *
                              static_cast<std::int64_t>(t) -
                          static_cast<std::int64_t>(g.d) *
                              static_cast<std::int64_t>(seen_collisions);
      if (static_cast<std::int64_t>(live) != want)
        throw std::logic_error("explore: frontier size identity violated");
    }
  }
}

namespace {

ExplorationDag materialize(const ExploreScratch& sc, const Multigraph& g,
                           const std::vector<Vertex>& sources,
                           std::uint32_t radius) {
  ExplorationDag dag;
  dag.sources = sources;
  dag.radius = radius;
  dag.d = g.d;
  dag.vertex = sc.vtx;
  dag.depth = sc.dep;
  dag.parent_arrow = sc.par;
  dag.arrows = sc.arr;
  dag.delta = sc.delta;
  return dag;
}

std::vector<HalfEdge> all_slots(const Multigraph& g,
                                const std::vector<Vertex>& sources) {
  std::vector<HalfEdge> slots;
  slots.reserve(sources.size() * g.d);
  for (Vertex s : sources)
    for (std::uint32_t k = 0; k < g.d; ++k)
      if (s < g.n) slots.push_back(g.first_slot(s) + k);
  return slots;
}

void check_direction(const Multigraph& g, const DirectionSet& dir) {
  if (dir.v >= g.n)
    throw Error(ErrorCode::InvalidArgument, "direction vertex out of range");
  if (dir.slots.empty())
    throw Error(ErrorCode::InvalidArgument, "empty direction set");
  for (HalfEdge h : dir.slots)
    if (g.owner(h) != dir.v)
      throw Error(ErrorCode::InvalidArgument,
                  "direction slot not owned by its vertex");
  for (std::size_t i = 1; i < dir.slots.size(); ++i)
    if (dir.slots[i - 1] >= dir.slots[i])
      throw Error(ErrorCode::InvalidArgument,
                  "direction slots must be strictly increasing");
}

std::vector<HalfEdge> complement_slots(const Multigraph& g,
                                       const DirectionSet& dir) {
  std::vector<HalfEdge> rest;
  std::size_t j = 0;
  for (std::uint32_t k = 0; k < g.d; ++k) {
    HalfEdge slot = g.first_slot(dir.v) + k;
    if (j < dir.slots.size() && dir.slots[j] == slot)
      ++j;
    else
      rest.push_back(slot);
  }
  return rest;
}

RootedBall ball_from_scratch(const ExploreScratch& sc, const Multigraph& g,
                             Vertex root, std::uint32_t radius) {
  RootedBall ball;
  ball.d = g.d;
  ball.radius = radius;
  ball.root_label = root;
  ball.depth = sc.dep;
  ball.edges.reserve(sc.arr.size());
  for (const DagArrow& a : sc.arr) ball.edges.emplace_back(a.src, a.dst);
  return ball;
}

}  // namespace

ExplorationDag bfs_explore(const Multigraph& g,
                           const std::vector<Vertex>& sources,
                           std::uint32_t radius, ExploreScratch& sc) {
  explore_into(sc, g, sources, all_slots(g, sources), {}, radius);
  return materialize(sc, g, sources, radius);
}

ExplorationDag bfs_explore(const Multigraph& g,
                           const std::vector<Vertex>& sources,
                           std::uint32_t radius) {
  ExploreScratch sc;
  return bfs_explore(g, sources, radius, sc);
}

RootedBall extract_ball(const Multigraph& g, Vertex v, std::uint32_t radius,
                        ExploreScratch& sc) {
  explore_into(sc, g, {v}, all_slots(g, {v}), {}, radius);
  return ball_from_scratch(sc, g, v, radius);
}

RootedBall extract_ball(const Multigraph& g, Vertex v, std::uint32_t radius) {
  ExploreScratch sc;
  return extract_ball(g, v, radius, sc);
}

RootedBall directed_bfs(const Multigraph& g, const DirectionSet& dir,
                        std::uint32_t radius, ExploreScratch& sc) {
  check_direction(g, dir);
  explore_into(sc, g, {dir.v}, dir.slots, complement_slots(g, dir), radius);
  return ball_from_scratch(sc, g, dir.v, radius);
}

RootedBall directed_bfs(const Multigraph& g, const DirectionSet& dir,
                        std::uint32_t radius) {
  ExploreScratch sc;
  return directed_bfs(g, dir, radius, sc);
}

ExplorationDag directed_explore(const Multigraph& g, const DirectionSet& dir,
                                std::uint32_t radius) {
  check_direction(g, dir);
  ExploreScratch sc;
  explore_into(sc, g, {dir.v}, dir.slots, complement_slots(g, dir), radius);
  return materialize(sc, g, {dir.v}, radius);
}

std::vector<std::uint64_t> distance_sequence(const Multigraph& g, Vertex v,
                                             std::uint32_t radius) {
  ExploreScratch sc;
  explore_into(sc, g, {v}, all_slots(g, {v}), {}, radius);
  std::vector<std::uint64_t> seq(radius, 0);
  for (std::size_t i = 1; i < sc.dep.size(); ++i) ++seq[sc.dep[i] - 1];
  return seq;
}

MSeries collision_series(const ExplorationDag& dag, std::uint32_t R) {
  MSeries ms;
  ms.R = R;
  ms.gamma_half.assign(R + 1, 0);
  ms.gamma_int.assign(R + 1, 0);
  for (const DagArrow& a : dag.arrows) {
    if (!a.collision) continue;
    std::uint32_t du = dag.depth[a.src], dw = dag.depth[a.dst];
    std::uint32_t i = std::max(du, dw) + (du == dw ? 1 : 0);
    if (i > R)
      throw Error(ErrorCode::InvalidArgument,
                  "collision beyond requested series radius");
    if (du == dw)
      ++ms.gamma_half[i];
    else
      ++ms.gamma_int[i];
  }
  return ms;
}

namespace {

bool is_tree_dag(const ExploreScratch& sc) {
  for (const DagArrow& a : sc.arr)
    if (a.collision) return false;
  return true;
}

// All (d-2)-subsets of a vertex's slots, lexicographically.
std::vector<std::vector<HalfEdge>> direction_subsets(const Multigraph& g,
                                                     Vertex v) {
  std::uint32_t k = g.d - 2;
  std::vector<std::uint32_t> idx(k);
  for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<std::vector<HalfEdge>> out;
  while (true) {
    std::vector<HalfEdge> slots(k);
    for (std::uint32_t i = 0; i < k; ++i) slots[i] = g.first_slot(v) + idx[i];
    out.push_back(std::move(slots));
    // next combination
    std::int32_t i = static_cast<std::int32_t>(k) - 1;
    while (i >= 0 && idx[i] == g.d - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (std::uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::uint32_t default_separation_radius(std::uint64_t n, std::uint32_t d) {
  if (n < 2 || d < 3)
    throw Error(ErrorCode::DomainError, "separation radius needs n >= 2, d >= 3");
  double L = std::log(static_cast<double>(n)) /
             (16.0 * std::log(static_cast<double>(d - 1)));
  return static_cast<std::uint32_t>(L);
}

std::optional<std::pair<DirectionSet, DirectionSet>> find_separated_directions(
    const Multigraph& g, Vertex u, Vertex v, std::uint32_t L) {
  if (u >= g.n || v >= g.n)
    throw Error(ErrorCode::InvalidArgument, "vertex out of range");
  if (u == v)
    throw Error(ErrorCode::InvalidArgument,
                "separated directions need distinct vertices");
  if (g.d < 3)
    throw Error(ErrorCode::InvalidDegree, "degree must be at least 3");
  auto u_subs = direction_subsets(g, u);
  auto v_subs = direction_subsets(g, v);
  ExploreScratch sa, sb;
  std::vector<std::uint8_t> in_a(g.n, 0);
  for (const auto& us : u_subs) {
    DirectionSet du{u, us};
    explore_into(sa, g, {u}, du.slots, complement_slots(g, du), L);
    bool a_tree = is_tree_dag(sa);
    for (Vertex x : sa.vtx) in_a[x] = 1;
    for (const auto& vs : v_subs) {
      DirectionSet dv{v, vs};
      explore_into(sb, g, {v}, dv.slots, complement_slots(g, dv), L);
      bool disjoint = true;
      for (Vertex x : sb.vtx)
        if (in_a[x]) {
          disjoint = false;
          break;
        }
      if (disjoint && (a_tree || is_tree_dag(sb))) {
        for (Vertex x : sa.vtx) in_a[x] = 0;
        return std::make_pair(du, dv);
      }
    }
    for (Vertex x : sa.vtx) in_a[x] = 0;
  }
  return std::nullopt;
}

}  // namespace shotgun
