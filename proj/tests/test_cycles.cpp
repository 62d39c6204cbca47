#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "core/cycles.hpp"
#include "core/error.hpp"
#include "core/explore.hpp"
#include "core/graph.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace shotgun;

namespace {

// Independent reference: the structure is what survives repeatedly
// stripping non-source leaves (and isolated non-sources) from the ball.
// Works on discovery indices of a dag explored to exactly the radius of
// interest.
struct Stripped {
  std::vector<std::uint32_t> survivors;  // ascending discovery indices
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // normalized
};

Stripped leaf_strip(const ExplorationDag& dag) {
  std::size_t nv = dag.vertex.size();
  std::vector<std::uint8_t> vdead(nv, 0), edead(dag.arrows.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::uint32_t> deg(nv, 0);
    for (std::size_t e = 0; e < dag.arrows.size(); ++e) {
      if (edead[e]) continue;
      deg[dag.arrows[e].src] += dag.arrows[e].src == dag.arrows[e].dst ? 2 : 1;
      if (dag.arrows[e].src != dag.arrows[e].dst) ++deg[dag.arrows[e].dst];
    }
    for (std::uint32_t v = static_cast<std::uint32_t>(dag.sources.size());
         v < nv; ++v) {
      if (vdead[v] || deg[v] > 1) continue;
      vdead[v] = 1;
      changed = true;
      for (std::size_t e = 0; e < dag.arrows.size(); ++e)
        if (!edead[e] && (dag.arrows[e].src == v || dag.arrows[e].dst == v))
          edead[e] = 1;
      break;  // recompute degrees from scratch, slow and obvious
    }
  }
  Stripped out;
  for (std::uint32_t v = 0; v < nv; ++v)
    if (!vdead[v]) out.survivors.push_back(v);
  for (std::size_t e = 0; e < dag.arrows.size(); ++e)
    if (!edead[e])
      out.edges.emplace_back(
          std::min(dag.arrows[e].src, dag.arrows[e].dst),
          std::max(dag.arrows[e].src, dag.arrows[e].dst));
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

void check_against_strip(const Multigraph& g, const std::vector<Vertex>& s,
                         std::uint32_t R) {
  ExplorationDag dag = bfs_explore(g, s, R);
  CycleStructure c = extract_cycle_structure(dag, R);
  Stripped ref = leaf_strip(dag);

  REQUIRE(c.vertex_count() == ref.survivors.size());
  // Structure labels follow discovery order, so the sorted survivor list
  // is exactly the structure-to-discovery map.
  for (std::size_t k = 0; k < ref.survivors.size(); ++k)
    CHECK(c.depth[k] == dag.depth[ref.survivors[k]]);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> got;
  for (const StructArc& a : c.arcs)
    got.emplace_back(std::min(ref.survivors[a.src], ref.survivors[a.dst]),
                     std::max(ref.survivors[a.src], ref.survivors[a.dst]));
  std::sort(got.begin(), got.end());
  CHECK(got == ref.edges);

  // Cycle count agrees with the dag's collision count, and the internal
  // arc-surplus identity holds (gamma itself verifies it).
  CHECK(gamma(c) == dag.collision_count());

  // Depths inside the structure are graph distances from the sources.
  std::vector<std::vector<std::uint32_t>> adj(c.vertex_count());
  for (const StructArc& a : c.arcs) {
    adj[a.src].push_back(a.dst);
    adj[a.dst].push_back(a.src);
  }
  std::vector<std::uint32_t> dist(c.vertex_count(), kUnbounded);
  std::vector<std::uint32_t> frontier;
  for (std::uint32_t i = 0; i < c.nsources; ++i) {
    dist[i] = 0;
    frontier.push_back(i);
  }
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t v : frontier)
      for (std::uint32_t w : adj[v])
        if (dist[w] == kUnbounded) {
          dist[w] = dist[v] + 1;
          next.push_back(w);
        }
    frontier = std::move(next);
  }
  for (std::size_t k = 0; k < c.vertex_count(); ++k) CHECK(dist[k] == c.depth[k]);
}

CycleStructure hand_structure(
    std::uint32_t ns, std::vector<std::uint32_t> depth,
    std::vector<StructArc> arcs) {
  CycleStructure c;
  c.d = 3;
  c.nsources = ns;
  c.depth = std::move(depth);
  c.arcs = std::move(arcs);
  return c;
}

}  // namespace

TEST_SUITE_BEGIN("cycles");

TEST_CASE("K4 and prism structures by hand") {
  // K4 at radius 2 is all cycle: nothing strips away.
  CycleStructure k = extract_cycle_structure(bfs_explore(oracle::k4(), {0}, 2), 2);
  CHECK(k.vertex_count() == 4);
  CHECK(k.arcs.size() == 6);
  CHECK(gamma(k) == 3);
  CHECK(k.max_depth() == 1);

  // Same for the 2-ball of the prism: all eight revealed edges carry cycles.
  CycleStructure p =
      extract_cycle_structure(bfs_explore(oracle::prism(), {0}, 2), 2);
  CHECK(p.vertex_count() == 6);
  CHECK(p.arcs.size() == 8);
  CHECK(gamma(p) == 3);
  CHECK(p.max_depth() == 2);
  CHECK(canonical_structure_code(p) != canonical_structure_code(k));

  // At radius 1 no collision has happened yet, so only the root remains.
  CycleStructure p1 =
      extract_cycle_structure(bfs_explore(oracle::prism(), {0}, 1), 1);
  CHECK(p1.vertex_count() == 1);
  CHECK(p1.arcs.empty());
  CHECK(gamma(p1) == 0);
}

TEST_CASE("a deep exploration restricts to any shallower radius") {
  Multigraph g = sample_simple(60, 3, 414);
  ExplorationDag deep = bfs_explore(g, {7}, 5);
  for (std::uint32_t R = 0; R <= 5; ++R) {
    CycleStructure a = extract_cycle_structure(deep, R);
    CycleStructure b = extract_cycle_structure(bfs_explore(g, {7}, R), R);
    CHECK(a.vertex_count() == b.vertex_count());
    CHECK(a.depth == b.depth);
    REQUIRE(a.arcs.size() == b.arcs.size());
    for (std::size_t i = 0; i < a.arcs.size(); ++i) {
      CHECK(a.arcs[i].src == b.arcs[i].src);
      CHECK(a.arcs[i].dst == b.arcs[i].dst);
      CHECK(a.arcs[i].collision == b.arcs[i].collision);
    }
  }
  CHECK_THROWS_AS(extract_cycle_structure(deep, 6), Error);
}

TEST_CASE("structure equals the leaf-strip reference on small graphs") {
  check_against_strip(oracle::k4(), {0}, 2);
  check_against_strip(oracle::prism(), {0}, 2);
  check_against_strip(oracle::k33(), {0}, 2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Multigraph g = sample_simple(30, 3, seed);
    for (Vertex v = 0; v < 30; v += 7)
      for (std::uint32_t R = 1; R <= 4; ++R) check_against_strip(g, {v}, R);
  }
  Multigraph g4 = sample_simple(24, 4, 9);
  for (Vertex v = 0; v < 24; v += 5)
    for (std::uint32_t R = 1; R <= 3; ++R) check_against_strip(g4, {v}, R);
  // Multi-source runs exercise the sources-always-kept rule.
  Multigraph g2 = sample_simple(40, 3, 2);
  check_against_strip(g2, {0, 20}, 2);
  check_against_strip(g2, {3, 4, 5}, 3);
}

TEST_CASE("two adjacent sources form a one-cycle structure") {
  // Prism vertices 0 and 3 share a rung; with both as sources the rung is
  // revealed as a collision between two depth-0 vertices.
  ExplorationDag dag = bfs_explore(oracle::prism(), {0, 3}, 1);
  CycleStructure c = extract_cycle_structure(dag, 1);
  CHECK(c.nsources == 2);
  CHECK(c.vertex_count() == 2);
  REQUIRE(c.arcs.size() == 1);
  CHECK(c.arcs[0].collision);
  CHECK(gamma(c) == 1);
  // Two root blocks appear in the serialization.
  TypeCode code = canonical_structure_code(c);
  CHECK(std::count(code.begin(), code.end(), '{') == 2);
}

TEST_CASE("structure codes ignore vertex labels") {
  Rng rng = make_rng(77);
  Multigraph g = sample_simple(30, 3, 6);
  std::vector<Vertex> perm(30);
  for (Vertex v = 0; v < 30; ++v) perm[v] = v;
  std::shuffle(perm.begin(), perm.end(), rng);
  Multigraph h = oracle::permute_graph(g, perm);
  for (Vertex v = 0; v < 30; v += 3) {
    CycleStructure a =
        extract_cycle_structure(bfs_explore(g, {v}, 3), 3);
    CycleStructure b =
        extract_cycle_structure(bfs_explore(h, {perm[v]}, 3), 3);
    CHECK(canonical_structure_code(a) == canonical_structure_code(b));
  }
}

TEST_CASE("heavy-ball membership thresholds") {
  // A depth-2 cubic tree ball has 9 edges, comfortably above (1/3) * 2^2.
  RootedBall tree;
  tree.d = 3;
  tree.radius = 2;
  tree.depth = {0, 1, 1, 1, 2, 2, 2, 2, 2, 2};
  tree.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5},
                {2, 6}, {2, 7}, {3, 8}, {3, 9}};
  CHECK(omega_membership(tree, 2, 3));
  // The same ball fails once the radius demanded of it is large.
  CHECK_FALSE(omega_membership(tree, 8, 3));
  // Saturating exponent: a gigantic radius must not wrap around.
  CHECK_FALSE(omega_membership(tree, 400, 3));
  CHECK_THROWS_AS(omega_membership(tree, 2, 2), Error);
}

TEST_CASE("collision-series membership splits at the (log n)^4 depth") {
  // ln n = 20 puts the split at the first i with 2^i >= 160000, i.e. 18.
  std::uint64_t n = 485165195;  // e^20 to the nearest integer
  MSeries m;
  m.R = 20;
  m.gamma_half.assign(21, 0);
  m.gamma_int.assign(21, 0);
  m.gamma_int[17] = 1;   // shallow side
  m.gamma_half[18] = 1;  // deep side, damped by 2^-18

  TrReport rep = t_r_membership(m, 20, 3, n);
  CHECK(rep.i0 == 18);
  CHECK(rep.m_low == 1);
  CHECK(rep.tail_sum == doctest::Approx(1.0 / 262144.0));
  CHECK(rep.threshold == doctest::Approx(3.0 / 20.0).epsilon(1e-6));
  CHECK(rep.member);

  // One shallow collision is already too many in the directed variant.
  TrReport dir = t_r_membership_directed(m, 20, 3, n);
  CHECK(dir.threshold == doctest::Approx(7.0 / 20.0).epsilon(1e-6));
  CHECK_FALSE(dir.member);
  m.gamma_int[17] = 0;
  CHECK(t_r_membership_directed(m, 20, 3, n).member);
  m.gamma_int[17] = 2;
  CHECK_FALSE(t_r_membership(m, 20, 3, n).member);

  // A heavy deep tail also disqualifies.
  m.gamma_int[17] = 0;
  m.gamma_int[18] = 60000;  // tail 0.228 > 0.15
  CHECK_FALSE(t_r_membership(m, 20, 3, n).member);

  CHECK_THROWS_AS(t_r_membership(m, 20, 3, 2), Error);
  CHECK_THROWS_AS(t_r_membership(m, 21, 3, n), Error);
}

TEST_CASE("edge-count bound closed forms") {
  MSeries zero;
  zero.R = 3;
  zero.gamma_half.assign(4, 0);
  zero.gamma_int.assign(4, 0);
  // Collision-free series: d (d-1)^{R-1} for a ball, (d-2)(d-1)^{R-1}
  // for a directed one.
  CHECK(edge_count_lower_bound(zero, 3, 3, 3) == 12);
  CHECK(edge_count_lower_bound(zero, 3, 3, 1) == 4);
  CHECK(edge_count_lower_bound(zero, 2, 4, 4) == 12);

  MSeries m;
  m.R = 2;
  m.gamma_half.assign(3, 0);
  m.gamma_int.assign(3, 0);
  m.gamma_int[1] = 1;
  CHECK(edge_count_lower_bound(m, 2, 3, 3) == 3);  // 6 - 3
  m.gamma_int[1] = 0;
  m.gamma_int[2] = 1;
  CHECK(edge_count_lower_bound(m, 2, 3, 3) == 5);  // ceil(6 - 3/2)
  m.gamma_int[2] = 0;
  m.gamma_half[2] = 1;
  CHECK(edge_count_lower_bound(m, 2, 3, 3) == 4);  // 6 - 4/2

  MSeries neg;
  neg.R = 1;
  neg.gamma_half.assign(2, 0);
  neg.gamma_int.assign(2, 0);
  neg.gamma_int[1] = 5;
  CHECK(edge_count_lower_bound(neg, 1, 3, 3) == -4);  // ceil(3 - 15/2)

  CHECK_THROWS_AS(edge_count_lower_bound(zero, 0, 3, 3), Error);
  CHECK_THROWS_AS(edge_count_lower_bound(zero, 3, 3, 2), Error);
  CHECK_THROWS_AS(edge_count_lower_bound(zero, 4, 3, 3), Error);
}

TEST_CASE("edge-count bound never exceeds the true ball size") {
  for (std::uint64_t seed = 11; seed <= 13; ++seed) {
    Multigraph g = sample_simple(100, 3, seed);
    ExploreScratch sc;
    sc.begin(g);
    for (Vertex v = 0; v < 100; v += 9) {
      for (std::uint32_t R = 1; R <= 4; ++R) {
        ExplorationDag dag = bfs_explore(g, {v}, R, sc);
        MSeries m = collision_series(dag, R);
        RootedBall b = extract_ball(g, v, R, sc);
        std::int64_t bound = edge_count_lower_bound(m, R, 3, 3);
        CHECK(bound <= static_cast<std::int64_t>(b.edge_count()));
      }
    }
  }
  // Directed variant with first frontier d-2.
  Multigraph g = sample_simple(100, 4, 5);
  for (Vertex v = 0; v < 100; v += 11) {
    DirectionSet dir;
    dir.v = v;
    dir.slots = {4 * v, 4 * v + 1};
    for (std::uint32_t R = 1; R <= 3; ++R) {
      ExplorationDag dag = directed_explore(g, dir, R);
      MSeries m = collision_series(dag, R);
      RootedBall b = directed_bfs(g, dir, R);
      std::int64_t bound = edge_count_lower_bound(m, R, 4, 2);
      CHECK(bound <= static_cast<std::int64_t>(b.edge_count()));
    }
  }
}

TEST_CASE("packing report arithmetic") {
  CycleStructure p =
      extract_cycle_structure(bfs_explore(oracle::prism(), {0}, 2), 2);
  PackingReport rep = packing_report(p, 2, 3);
  CHECK(rep.edges == 8);
  CHECK(rep.gamma == 3);
  CHECK_FALSE(rep.vacuous);
  CHECK(rep.bound == doctest::Approx(6.0 * (2.0 - std::log(3.0) / std::log(2.0))));
  CHECK_FALSE(rep.within);  // tiny dense graph, far outside the regime

  CycleStructure tree = hand_structure(1, {0}, {});
  PackingReport t = packing_report(tree, 5, 3);
  CHECK(t.vacuous);
  CHECK(t.gamma == 0);

  // A single cycle through the root always fits: its structure has at most
  // 2R edges and the bound is exactly 2R.
  Multigraph g = sample_simple(600, 3, 21);
  ExploreScratch sc;
  sc.begin(g);
  bool found = false;
  for (Vertex v = 0; v < 600 && !found; ++v) {
    ExplorationDag dag = bfs_explore(g, {v}, 4, sc);
    if (dag.collision_count() != 1) continue;
    found = true;
    PackingReport one = packing_report(extract_cycle_structure(dag, 4), 4, 3);
    CHECK(one.gamma == 1);
    CHECK(one.bound == doctest::Approx(8.0));
    CHECK(one.within);
  }
  CHECK(found);
}

TEST_CASE("edit distance between small structures") {
  CycleStructure bare = hand_structure(1, {0}, {});
  CycleStructure loop = hand_structure(1, {0}, {{0, 0, true}});
  CycleStructure dbl = hand_structure(1, {0, 1}, {{0, 1, false}, {0, 1, true}});
  CycleStructure tri = hand_structure(
      1, {0, 1, 1}, {{0, 1, false}, {0, 2, false}, {1, 2, true}});

  CHECK(cycle_distance(bare, bare, 2) == 0);
  CHECK(cycle_distance(bare, loop, 2) == 1);   // add a length-1 loop
  CHECK(cycle_distance(bare, dbl, 2) == 1);    // add a length-2 path, 0 to 0
  CHECK(cycle_distance(bare, tri, 2) == 1);    // add a length-3 path, 0 to 0
  CHECK(cycle_distance(tri, bare, 2) == 1);    // delete one arc, prune chain
  CHECK(cycle_distance(loop, dbl, 2) == 2);    // no single move does both
  CHECK(cycle_distance(dbl, loop, 2) == 2);
  CHECK(cycle_distance(tri, loop, 2) == 2);

  // Unreachable within a tiny state budget.
  CycleStructure p =
      extract_cycle_structure(bfs_explore(oracle::prism(), {0}, 2), 2);
  CHECK(!cycle_distance(bare, p, 2, 50).has_value());

  CycleStructure two = hand_structure(2, {0, 0}, {{0, 1, true}});
  CHECK_THROWS_AS(cycle_distance(bare, two, 2), Error);
}

TEST_SUITE_END();
