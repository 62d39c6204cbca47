#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace shotgun {

using Vertex = std::uint32_t;
using HalfEdge = std::uint32_t;

// d-regular multigraph in the half-edge representation: vertex v owns the
// half-edge indices [v*d, v*d + d), and `match` is a fixed-point-free
// involution pairing them up. Loops and parallel edges are allowed; the
// edge list is a derived view, never stored.
struct Multigraph {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::vector<HalfEdge> match;

  std::uint64_t half_edge_count() const {
    return std::uint64_t(n) * d;
  }
  std::uint64_t edge_count() const { return half_edge_count() / 2; }
  Vertex owner(HalfEdge h) const { return h / d; }
  HalfEdge first_slot(Vertex v) const { return HalfEdge(v) * d; }

  // Throws InvalidArgument unless match is a fixed-point-free involution
  // of the right size.
  void validate() const;
};

// Uniform perfect matching on the n*d half-edges via sequential random
// pairing. Deterministic per seed.
Multigraph sample_configuration(std::uint32_t n, std::uint32_t d,
                                std::uint64_t seed);

bool is_simple(const Multigraph& g);

// Rejection-samples configurations until is_simple holds. `attempts_out`,
// when non-null, receives the number of configurations drawn.
Multigraph sample_simple(std::uint32_t n, std::uint32_t d, std::uint64_t seed,
                         std::uint32_t retry_cap = 10000,
                         std::uint32_t* attempts_out = nullptr);

// Builds the matching realizing the given edge multiset (loops as (v,v)).
// Half-edge slots are assigned per vertex in the order edges are listed.
// Every vertex must end up with exactly d incident half-edges.
Multigraph from_edge_list(std::uint32_t n, std::uint32_t d,
                          const std::vector<std::pair<Vertex, Vertex>>& edges);

// Edge multiset as sorted (min,max) pairs, loops once. Two graphs are
// equal as labelled multigraphs iff these compare equal.
std::vector<std::pair<Vertex, Vertex>> edge_multiset(const Multigraph& g);

// Text format: line 1 "n d", then n*d/2 lines "h1 h2" with h1 < h2,
// sorted ascending by h1, each half-edge appearing exactly once.
void write_graph(std::ostream& out, const Multigraph& g);
Multigraph read_graph(std::istream& in);
void write_graph_file(const std::string& path, const Multigraph& g);
Multigraph read_graph_file(const std::string& path);

}  // namespace shotgun
