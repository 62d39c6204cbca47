#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/canon.hpp"
#include "core/explore.hpp"

namespace shotgun {

// The cycle-carrying part of an explored ball: every collision edge, the
// breadth-first ancestor chains of collision endpoints, and the sources.
// Vertices are relabeled 0.. in discovery order, sources first; arcs keep
// the exploration's reveal order. Depths inside the structure equal ball
// depths because ancestor chains are shortest paths.
struct StructArc {
  std::uint32_t src, dst;
  bool collision;
};

struct CycleStructure {
  std::uint32_t d = 0;
  std::uint32_t nsources = 0;
  std::vector<std::uint32_t> depth;
  std::vector<StructArc> arcs;

  std::size_t vertex_count() const { return depth.size(); }
  std::uint32_t max_depth() const;
};

CycleStructure extract_cycle_structure(const ExplorationDag& dag,
                                       std::uint32_t R);

// Number of independent cycles; also checked against
// |arcs| - (|V| - |sources|).
std::uint32_t gamma(const CycleStructure& c);

// Canonical identity of a structure as a sources-rooted multigraph.
TypeCode canonical_structure_code(const CycleStructure& c,
                                  std::uint64_t budget = kDefaultCodeBudget);

// Vertices whose ball carries at least (1/3)(d-1)^R edges.
bool omega_membership(const RootedBall& b, std::uint32_t R, std::uint32_t d);

// Collision-series membership test: few shallow collisions, and deeper
// ones damped geometrically. i0 is the first depth with
// (d-1)^i >= (log n)^4; the shallow count is m_low and the damped deep sum
// must stay under threshold.
struct TrReport {
  bool member = false;
  std::uint32_t i0 = 0;
  std::uint64_t m_low = 0;
  double tail_sum = 0.0;
  double threshold = 0.0;
};

TrReport t_r_membership(const MSeries& m, std::uint32_t R, std::uint32_t d,
                        std::uint64_t n);
TrReport t_r_membership_directed(const MSeries& m, std::uint32_t R,
                                 std::uint32_t d, std::uint64_t n);

// Exact lower bound on a ball's edge count from its collision series:
// ceil( (d-1)^{R-1} delta1
//       - sum_{i=1..R} (d-1)^{R-1-i} (2(d-1) gamma_{i-1/2} + d gamma_i) ).
// delta1 is d for a plain ball and d-2 for a directed one.
std::int64_t edge_count_lower_bound(const MSeries& m, std::uint32_t R,
                                    std::uint32_t d, std::uint32_t delta1);

struct PackingReport {
  std::uint64_t edges = 0;
  std::uint32_t gamma = 0;
  bool vacuous = true;  // no cycles, nothing to bound
  double bound = 0.0;   // 2 gamma (R - log_{d-1} gamma)
  bool within = false;
};

PackingReport packing_report(const CycleStructure& c, std::uint32_t R,
                             std::uint32_t d);

// Edit distance between structures: one move either joins two existing
// vertices by a fresh path of length 1..2R or removes an arc and prunes
// the dangling remainder. Breadth-first search over canonical forms;
// nullopt once the explored-state budget runs out.
std::optional<std::uint32_t> cycle_distance(const CycleStructure& a,
                                            const CycleStructure& b,
                                            std::uint32_t R,
                                            std::uint64_t budget = 100000);

}  // namespace shotgun
