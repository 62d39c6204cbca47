#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "core/canon.hpp"
#include "core/deck.hpp"
#include "core/explore.hpp"
#include "core/graph.hpp"

namespace shotgun {

// Gluing outcome: the labelled graph on success, ambiguity evidence
// otherwise (never both). duplicate_types lists root pairs whose
// truncated types coincide (capped like DistinctReport); unmatched_slots
// lists (root, index into the piece's root-incident edges) whose inner
// ball matched no root type; inconsistent_pairs lists endpoints whose two
// pieces disagree on the edge multiplicity between them, which only a
// corrupt deck can produce.
struct AssemblyResult {
  std::optional<Multigraph> graph;
  std::vector<std::pair<Vertex, Vertex>> duplicate_types;
  bool duplicates_truncated = false;
  std::vector<std::pair<Vertex, std::uint32_t>> unmatched_slots;
  std::vector<std::pair<Vertex, Vertex>> inconsistent_pairs;

  bool ok() const { return graph.has_value(); }
};

// Glues radius-(R+1) pieces back into the graph. Each root's R-type is
// the truncation of its piece; when all n types are distinct, u gets an
// edge to v for every root-incident edge of u's piece whose far endpoint
// has inner R-ball of v's type (the inner ball of a root neighbor inside
// an (R+1)-piece is its true R-ball, because no shortest path of length
// <= R from a neighbor leaves the piece and the boundary rule discards
// exactly the edges the inner ball must not see). Loops at the root are
// copied directly. Throws MalformedDeck when the input is not one piece
// per root 0..n-1 with uniform degree and radius >= 1 and root degree d.
AssemblyResult assemble(const std::vector<RootedBall>& pieces,
                        std::uint64_t budget = kDefaultCodeBudget);

// Same gluing with the distance sequence of a ball standing in for its
// type: succeeds only when all n distance sequences differ, a strictly
// weaker invariant than the full type.
AssemblyResult assemble_by_distance_sequence(
    const std::vector<RootedBall>& pieces);

enum class CertKind { Asymmetry, NonIsomorphism };

// Replayable comparison record. Asymmetry: codes holds the n per-vertex
// types whose pairwise distinctness was verified. NonIsomorphism: vertex
// is the adversarial root in g and codes holds its single type, absent
// from the other graph's deck.
struct Certificate {
  CertKind kind = CertKind::Asymmetry;
  std::uint32_t radius = 0;
  Vertex vertex = 0;
  std::vector<TypeCode> codes;
};

// Certificate iff all R-types of g are distinct, which forces the
// automorphism group to be trivial (any nontrivial automorphism moves
// some vertex onto another with an isomorphic ball).
std::optional<Certificate> certify_asymmetric(
    const Multigraph& g, std::uint32_t R,
    std::uint64_t budget = kDefaultCodeBudget);

// Picks the vertex of g with the largest ball edge count among those
// whose ball clears the omega threshold (lowest id on ties) and
// certifies non-isomorphism iff its R-type appears nowhere in h. h is
// any multigraph in the same representation, its degree need not match
// g's. Throws NoOmegaVertex when g has no qualifying vertex; nullopt
// means inconclusive, not isomorphic.
std::optional<Certificate> certify_nonisomorphic(
    const Multigraph& g, const Multigraph& h, std::uint32_t R,
    std::uint64_t budget = kDefaultCodeBudget);

// Re-runs the comparisons a certificate claims. The one-graph form
// replays asymmetry certificates, the two-graph form non-isomorphism
// certificates; passing the wrong kind is an InvalidArgument.
bool replay_certificate(const Certificate& cert, const Multigraph& g,
                        std::uint64_t budget = kDefaultCodeBudget);
bool replay_certificate(const Certificate& cert, const Multigraph& g,
                        const Multigraph& h,
                        std::uint64_t budget = kDefaultCodeBudget);

}  // namespace shotgun
