#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/canon.hpp"
#include "core/explore.hpp"
#include "core/graph.hpp"

namespace shotgun {

// Per-vertex neighborhood types at one radius; codes[v] belongs to
// vertex v. counts() is the multiset view.
struct Deck {
  std::vector<TypeCode> codes;

  std::map<TypeCode, std::uint32_t> counts() const;
};

// Types every vertex of g at radius R. Per-vertex canonization budget
// overruns are collected across the whole pass and reported in a single
// BudgetExceeded naming the failing vertex count, so one bad ball does
// not hide others.
Deck build_deck(const Multigraph& g, std::uint32_t R,
                std::uint64_t budget = kDefaultCodeBudget);

struct DistinctReport {
  bool distinct = false;
  // Unordered pairs (u < v) with equal codes, lexicographically sorted.
  // Large duplicate classes produce quadratically many pairs, so the list
  // stops at max_pairs and sets truncated; `distinct` is always exact.
  std::vector<std::pair<Vertex, Vertex>> duplicates;
  bool truncated = false;
};

DistinctReport all_types_distinct(const Multigraph& g, std::uint32_t R,
                                  std::uint64_t budget = kDefaultCodeBudget,
                                  std::size_t max_pairs = 100000);

// Smallest R <= r_max with all R-types distinct, nullopt when none.
// Distinctness only improves with R, so the scan runs upward; each level
// aborts on its first duplicate rather than completing the deck.
std::optional<std::uint32_t> r_distinct(const Multigraph& g,
                                        std::uint32_t r_max,
                                        std::uint64_t budget = kDefaultCodeBudget);

// One radius-R ball per vertex with root_label = vertex id: the pieces
// the assembly module consumes.
std::vector<RootedBall> build_pieces(const Multigraph& g, std::uint32_t R);

// Ball of a ball: BFS inside b from local vertex `root`, truncated at
// `radius` with the boundary rule (edges joining two depth-`radius`
// vertices are dropped, loops at such vertices included). Local ids are
// reassigned in discovery order with the new root first; root_label is
// cleared since the piece does not know the new root's identity.
RootedBall reroot_ball(const RootedBall& b, std::uint32_t root,
                       std::uint32_t radius);

// Deck file: one line per vertex, "<vertex> <code hex>", vertices in
// ascending order starting at 0.
void write_deck(std::ostream& out, const Deck& deck);
Deck read_deck(std::istream& in);
void write_deck_file(const std::string& path, const Deck& deck);
Deck read_deck_file(const std::string& path);

// Piece file: header line "n d R"; then per piece a line
// "root=<id> <vertex count> <edge count>" followed by one "u v" line per
// edge in local ids, local 0 being the root. Depths are not stored; the
// reader recovers them by BFS from the root and rejects files whose
// pieces are not balls (unreachable vertices, vertices past the radius,
// boundary-rule violations).
void write_pieces(std::ostream& out, const std::vector<RootedBall>& pieces);
std::vector<RootedBall> read_pieces(std::istream& in);
void write_pieces_file(const std::string& path,
                       const std::vector<RootedBall>& pieces);
std::vector<RootedBall> read_pieces_file(const std::string& path);

}  // namespace shotgun
