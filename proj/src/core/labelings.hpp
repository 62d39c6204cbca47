#pragma once

#include <cstdint>
#include <vector>

#include "core/cycles.hpp"

namespace shotgun {

// Slot ranks carried by one structure arc. j is the rank of the half-edge
// popped at the arc's tail; jprime is the rank of the half-edge hit at the
// head for a collision arc, 0 for a tree arc. Sources expose ranks 1..d;
// any other vertex exposes 1..d-1 because its arrival half-edge never
// queues.
struct ArcLabel {
  std::uint32_t j = 0;
  std::uint32_t jprime = 0;
};

// One way the structure can materialize during the breadth-first reveal:
// vertices in discovery order (sources first), arcs in reveal order, and
// the slot ranks that carry each arc. The arcs always form a graph
// isomorphic to the structure that was enumerated, though arc order and
// vertex numbering are this realization's own.
struct Labeling {
  std::vector<std::uint32_t> depth;
  std::vector<StructArc> arcs;
  std::vector<ArcLabel> labels;
};

// All realizations of c's isomorphism class, found by replaying the
// exploration symbolically: structure slots pop in queue order and each
// pop branches over staying plain, revealing a new structure vertex, or
// colliding into a still-queued slot. Candidate outcomes are kept when
// their canonical structure code matches c's. The budget caps replay
// nodes; exceeding it raises BudgetExceeded. Ill-formed structures
// (depth inconsistencies, missing arrivals, strippable leaves) raise
// InvalidArgument.
std::vector<Labeling> enumerate_labelings(const CycleStructure& c,
                                          std::uint64_t budget = 1000000);

// Same search without materializing the list.
std::uint64_t count_labelings(const CycleStructure& c,
                              std::uint64_t budget = 1000000);

}  // namespace shotgun
