#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "core/graph.hpp"

namespace shotgun {

inline constexpr std::uint32_t kUnbounded =
    std::numeric_limits<std::uint32_t>::max();
inline constexpr std::uint32_t kNoArrow =
    std::numeric_limits<std::uint32_t>::max();

struct DagArrow {
  std::uint32_t src, dst;  // discovery indices
  HalfEdge g, h;           // g popped from the frontier, h = match(g)
  bool collision;          // dst was already discovered
};

struct CollisionEvent {
  std::uint32_t time;  // index into arrows
  Vertex u, w;
  std::uint32_t depth_u, depth_w;
  // The collision depth (depth_u + depth_w + 1)/2 is a half-integer;
  // depth2x keeps it integral.
  std::uint32_t depth2x() const { return depth_u + depth_w + 1; }
};

// Record of one breadth-first exploration. The frontier is a FIFO queue of
// half-edge slots, seeded with the sources' slots (source order, ascending
// slot index within a vertex) and extended in discovery order. Slots owned
// by vertices at the radius cut-off are enqueued (they count toward the
// frontier size) but never popped.
struct ExplorationDag {
  std::vector<Vertex> sources;
  std::uint32_t radius = 0;
  std::uint32_t d = 0;
  std::vector<Vertex> vertex;                // discovery index -> vertex id
  std::vector<std::uint32_t> depth;          // discovery index -> depth
  std::vector<std::uint32_t> parent_arrow;   // first-arrival arrow, kNoArrow for sources
  std::vector<DagArrow> arrows;              // reveal order
  std::vector<std::uint64_t> delta;          // delta[t] = frontier size after t steps

  std::uint32_t collision_count() const;
  std::vector<CollisionEvent> collisions() const;
  std::vector<std::uint32_t> indegree() const;  // arrows into each discovery index
};

// Reusable buffers so repeated explorations over one graph avoid O(n)
// clearing; epoch stamps invalidate previous runs.
struct ExploreScratch {
  std::vector<std::uint32_t> vertex_epoch, he_epoch;
  std::vector<std::uint32_t> disc_index;
  std::uint32_t epoch = 0;
  std::vector<HalfEdge> queue;
  std::vector<Vertex> vtx;
  std::vector<std::uint32_t> dep, par;
  std::vector<DagArrow> arr;
  std::vector<std::uint64_t> delta;

  void begin(const Multigraph& g);
  bool discovered(Vertex v) const { return vertex_epoch[v] == epoch; }
};

// Core run; sources are pre-registered at depth 0, init_slots seed the
// queue, blocked half-edges behave as if absent from the graph.
void explore_into(ExploreScratch& sc, const Multigraph& g,
                  const std::vector<Vertex>& sources,
                  const std::vector<HalfEdge>& init_slots,
                  const std::vector<HalfEdge>& blocked, std::uint32_t radius);

ExplorationDag bfs_explore(const Multigraph& g,
                           const std::vector<Vertex>& sources,
                           std::uint32_t radius);
ExplorationDag bfs_explore(const Multigraph& g,
                           const std::vector<Vertex>& sources,
                           std::uint32_t radius, ExploreScratch& sc);

// Rooted unlabelled ball; local vertex 0 is the root. Edges joining two
// vertices both at depth exactly `radius` are excluded by construction
// (boundary rule), as are loops at such vertices.
struct RootedBall {
  std::uint32_t d = 0;
  std::uint32_t radius = 0;
  Vertex root_label = 0;
  std::vector<std::uint32_t> depth;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::size_t vertex_count() const { return depth.size(); }
  std::size_t edge_count() const { return edges.size(); }
};

RootedBall extract_ball(const Multigraph& g, Vertex v, std::uint32_t radius);
RootedBall extract_ball(const Multigraph& g, Vertex v, std::uint32_t radius,
                        ExploreScratch& sc);

struct DirectionSet {
  Vertex v = 0;
  std::vector<HalfEdge> slots;  // nonempty subset of v's half-edges
};

// Ball grown from dir.v along dir.slots only; paths through the other
// root half-edges are forbidden.
RootedBall directed_bfs(const Multigraph& g, const DirectionSet& dir,
                        std::uint32_t radius);
RootedBall directed_bfs(const Multigraph& g, const DirectionSet& dir,
                        std::uint32_t radius, ExploreScratch& sc);

// dag restricted to a directed run keeps the same arrow record; this
// variant also reports whether the directed ball is a tree.
ExplorationDag directed_explore(const Multigraph& g, const DirectionSet& dir,
                                std::uint32_t radius);

// d_i = number of vertices at distance exactly i, i = 1..radius.
std::vector<std::uint64_t> distance_sequence(const Multigraph& g, Vertex v,
                                             std::uint32_t radius);

// Per-depth collision counts of a single-source exploration:
// gamma_half[i] counts collisions with depth_u = depth_w = i-1 (collision
// depth i - 1/2), gamma_int[i] those with depths {i-1, i} (collision
// depth i). Indices run 1..R; slot 0 is unused.
struct MSeries {
  std::uint32_t R = 0;
  std::vector<std::uint32_t> gamma_half, gamma_int;

  std::uint32_t m(std::uint32_t i) const {
    return gamma_half[i] + gamma_int[i];
  }
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (std::uint32_t i = 1; i <= R; ++i) t += m(i);
    return t;
  }
};

MSeries collision_series(const ExplorationDag& dag, std::uint32_t R);

// Searches all (d-2)-subset pairs of the two vertices' half-edges, in
// lexicographic order, for directed L-balls that are vertex-disjoint with
// at least one of them a tree. Deterministic; nullopt when none exists.
std::optional<std::pair<DirectionSet, DirectionSet>> find_separated_directions(
    const Multigraph& g, Vertex u, Vertex v, std::uint32_t L);

// Default L in the separation search.
std::uint32_t default_separation_radius(std::uint64_t n, std::uint32_t d);

}  // namespace shotgun
