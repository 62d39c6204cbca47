#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/canon.hpp"
#include "core/cycles.hpp"
#include "core/graph.hpp"

namespace shotgun {

// A 4-edge switch witness pairs two radius-R balls whose decks agree at
// R-1 but can be told apart at R. Each side contributes four anchor
// vertices at tree depth R of its root; the anchors are matched up by
// one of two patterns. Within pairs the two anchors that share a
// depth-1 ancestor, closing two (2R-1)-cycles through that ancestor.
// Across pairs anchors from different depth-1 branches, closing two
// (2R+1)-cycles through the root. The closing edges join two depth-R
// vertices, so radius-R exploration from the root never pops them: both
// roots still see a plain tree at radius R, and the patterns only
// separate at radius R+1, where each closing edge surfaces as one
// collision between two depth-R vertices.
enum class SwitchPattern {
  WithinBranches,
  AcrossBranches,
};

// Smallest d-regular carrier exhibiting one pattern: a complete d-ary
// tree of depth R rooted at vertex 0, the two closing edges on anchors
// in corresponding positions, and one pendant completion vertex per
// remaining depth-R slot soaking up the missing degree. Pendant slots
// are paired among themselves (loops allowed); everything they add sits
// past depth R+1, so the radius-(R+1) view of the root is exactly the
// pattern. Requires d >= 3 and R >= 2.
struct SwitchTemplate {
  Multigraph graph;
  Vertex root = 0;
  // Anchor order: first the two anchors under the first depth-1 vertex,
  // then the two under the second. The closing edges are (0,1),(2,3)
  // for WithinBranches and (0,3),(1,2) for AcrossBranches.
  std::array<Vertex, 4> anchors{};
  std::uint32_t radius = 0;
  SwitchPattern pattern = SwitchPattern::WithinBranches;
};

SwitchTemplate build_switch_template(std::uint32_t d, std::uint32_t R,
                                     SwitchPattern pattern);

// Canonical code of the cycle structure a pattern shows to radius-(R+1)
// exploration from its root. The two patterns always get distinct codes.
TypeCode switch_pattern_code(std::uint32_t d, std::uint32_t R,
                             SwitchPattern pattern,
                             std::uint64_t budget = kDefaultCodeBudget);

// Both patterns in one graph (two disjoint carriers, sources 0 and the
// within carrier's size), explored from both roots at radius R+1 and
// extracted: the two-source structure with gamma 4 whose labelings feed
// the expected witness count.
CycleStructure joint_witness_structure(std::uint32_t d, std::uint32_t R);

// Replay labeling count of one pattern's single-source structure in
// closed form: binom(d,2) * binom(d-1,2)^2 * (d-1)^(4R-4), doubled for
// AcrossBranches (each across collision can land on either anchor of
// the far branch, and both land isomorphically). Checked against
// count_labelings on the extracted template structures in the tests.
// DomainError if the count overflows 64 bits.
std::uint64_t switch_pattern_labelings(std::uint32_t d, std::uint32_t R,
                                       SwitchPattern pattern);

// One switch instance: root u sees WithinBranches on anchors u_anchors
// (edges (u1,u2),(u3,u4)), root v sees AcrossBranches on v_anchors
// (edges (v1,v4),(v2,v3)). Meet depths record where each side's anchor
// pairs meet: 1,1 under u and 0,0 under v. Applying the switch cuts the
// four pattern edges and re-pairs the same eight half-edges the other
// way, exchanging the two patterns without touching degrees.
struct SwitchWitness {
  Vertex u = 0;
  Vertex v = 0;
  std::array<Vertex, 4> u_anchors{};
  std::array<Vertex, 4> v_anchors{};
  std::uint32_t radius = 0;
  std::array<std::uint32_t, 2> u_meet_depths{};
  std::array<std::uint32_t, 2> v_meet_depths{};
};

// Scans every vertex at radius R+1 for a ball whose cycle structure
// matches one pattern's code, then forms ordered pairs (within root,
// across root) whose radius-(R+1) balls are vertex disjoint, re-checks
// that the pair's joint two-source exploration has gamma 4, and keeps
// the pair only if the switched graph passes the radius-(R-1) deck
// check near the anchors. R < 3 finds nothing (the arms need length 2
// for the patterns to be simple). Empty result is a valid outcome.
std::vector<SwitchWitness> find_switch_witnesses(
    const Multigraph& g, std::uint32_t R,
    std::uint64_t budget = kDefaultCodeBudget);

// Cuts the witness edges (u1,u2),(u3,u4),(v1,v4),(v2,v3) and re-pairs
// the same half-edge slots as (u1,u4),(u2,u3),(v1,v2),(v3,v4).
// InvalidWitness if the anchors are not distinct or an edge is absent.
Multigraph apply_switch(const Multigraph& g, const SwitchWitness& w);

// The witness undoing apply_switch(g, w) on the switched graph: roles
// of u and v trade places along with their anchor quads. Applying w and
// then the reverse restores the original matching exactly.
SwitchWitness reverse_switch_witness(const SwitchWitness& w);

struct DeckComparison {
  bool invariant = true;
  // Lowest-numbered vertex whose two codes differ, when not invariant.
  std::optional<Vertex> first_difference;
};

// Compares the radius-R decks of two graphs on the same vertex set,
// vertex by vertex. InvalidArgument if sizes or degrees differ.
DeckComparison verify_deck_invariance(const Multigraph& g,
                                      const Multigraph& h, std::uint32_t R,
                                      std::uint64_t budget = kDefaultCodeBudget);

// Same comparison restricted to vertices within graph distance `reach`
// of some center, measured in g. When g and h differ only in edges
// among the centers, every other vertex's radius-(reach) ball is
// untouched, so the restricted verdict equals the full one with reach
// set to the deck radius. Used to verify switches without re-typing the
// whole graph.
DeckComparison verify_deck_invariance_near(
    const Multigraph& g, const Multigraph& h, std::uint32_t R,
    const std::vector<Vertex>& centers, std::uint32_t reach,
    std::uint64_t budget = kDefaultCodeBudget);

struct PlantResult {
  Multigraph graph;
  SwitchWitness witness;
};

// Rewires g to contain a verified switch at radius R and returns the
// rewired graph with its witness. Candidate roots must look like trees:
// preferably to radius R+1 (the planted patterns then match the
// templates exactly and find_switch_witnesses recovers the witness),
// falling back to radius R (pattern edges still invisible at R, decks
// at R-1 still verified). Each anchor donates its first non-parent
// slot; the four displaced partner pairs are re-matched to each other,
// which keeps their edges identical in the planted and switched graphs.
// The seed picks the scan origin; the result is deterministic per
// (g, R, seed). PlantFailed when no candidate pair verifies.
PlantResult plant_switch_structure(const Multigraph& g, std::uint32_t R,
                                   std::uint64_t seed,
                                   std::uint64_t budget = kDefaultCodeBudget);

// Expected number of ordered witness pairs in a uniform pairing on n
// vertices of degree d: n(n-1) times the joint structure's approximate
// probability, with exploration time overridden by the deterministic
// two-ball tree size T = 2d(d-1)^(R-1). The structure's labelings are
// counted per connected component and multiplied, so the joint count
// stays within replay budgets.
double expected_witness_count(std::uint64_t n, std::uint32_t d,
                              std::uint32_t R, const CycleStructure& c_joint,
                              std::uint64_t lab_budget = 1000000);

// Closed form of the same quantity from switch_pattern_labelings,
// evaluated in log space so large R underflows to 0 instead of failing.
double expected_witness_count(std::uint64_t n, std::uint32_t d,
                              std::uint32_t R);

// Witness file: one JSON object with "radius", per-side root, anchors
// and meet depths, and the redundant "cut_edges"/"new_edges" lists for
// human eyes. The reader checks the edge lists against the anchors and
// rejects inconsistent files.
void write_switch_witness(std::ostream& out, const SwitchWitness& w);
SwitchWitness read_switch_witness(std::istream& in);
void write_switch_witness_file(const std::string& path,
                               const SwitchWitness& w);
SwitchWitness read_switch_witness_file(const std::string& path);

}  // namespace shotgun
