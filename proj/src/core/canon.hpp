#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/explore.hpp"

namespace shotgun {

// Canonical byte string identifying a rooted graph up to root-preserving
// isomorphism. Codes are comparable across graphs and degrees.
using TypeCode = std::string;

inline constexpr std::uint64_t kDefaultCodeBudget = 1000000;

// Works for any ball-shaped input: the cycle-bearing skeleton (what
// survives repeated removal of non-root leaves) is canonically labeled by
// color refinement with individualization, and the trees hanging off it
// contribute sorted subtree codes. Highly symmetric skeletons can force
// branching; the budget caps individualization nodes and overruns throw
// BudgetExceeded.
TypeCode canonical_code(const RootedBall& ball,
                        std::uint64_t budget = kDefaultCodeBudget);

bool isomorphic(const RootedBall& a, const RootedBall& b,
                std::uint64_t budget = kDefaultCodeBudget);

// Code of the radius-R ball of a degree-d vertex whose ball is a tree:
// the complete d-regular tree truncated at depth R.
TypeCode complete_tree_code(std::uint32_t d, std::uint32_t R);

// Code straight from a single-source exploration of a d-regular graph,
// skipping ball materialization: a collision-free exploration is the
// complete tree, and otherwise only the collision skeleton is serialized
// while hanging trees are coded by the complete-tree formula.
TypeCode code_from_exploration(const ExplorationDag& dag, std::uint32_t R,
                               std::uint64_t budget = kDefaultCodeBudget);

namespace detail {

// Multigraph on few vertices with parallel edges grouped into bundles.
struct SmallGraph {
  std::uint32_t n = 0;
  struct Bundle {
    std::uint32_t a, b;  // a <= b; loops have a == b
    std::uint32_t mult;
  };
  std::vector<Bundle> bundles;
};

// Canonical serialization of a skeleton whose vertices carry decoration
// strings, computed by color refinement with individualization. Roots are
// pinned to positions 0.. in the given order; every vertex must be
// reachable from a root. Emits one block per vertex in canonical order:
// "{<decor>|<tok>,...}" where tokens are "l" for loops and "e<j>" for the
// bundle to the j-th vertex (listed on its lower endpoint only), each
// optionally "*<mult>". The budget caps individualization nodes.
std::string canonical_skeleton_code(const SmallGraph& g,
                                    const std::vector<std::uint32_t>& roots,
                                    const std::vector<std::string>& decor,
                                    std::uint64_t budget);

// Sorted run-length concatenation of child codes, as used for hanging
// subtrees: "code" or "code*count" per distinct code.
std::string rle_codes(std::vector<std::string> codes);

}  // namespace detail

}  // namespace shotgun
