#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

#include "core/cycles.hpp"

namespace shotgun {

using Rational = boost::multiprecision::cpp_rational;

// Number of arrows a radius-R exploration reveals when its cycle structure
// is c: pops per depth follow from the collision counts alone. Raises
// InvalidArgument when c cannot occur within radius R (too deep, or the
// collision bookkeeping goes negative).
std::uint64_t exploration_steps(const CycleStructure& c, std::uint32_t R);

// Exact probability that the exploration of a uniformly random pairing
// (n vertices, degree d) produces a ball whose cycle structure is
// isomorphic to c, given its total step count T. Sums the per-realization
// transcript products over all labelings; the frontier identity
// delta_t = |s|d + (d-2)t - d*gamma_t collapses every fresh factor to
// d*(n - |s| - k) for the k-th fresh vertex, so the sum is the labeling
// count times one closed product. DomainError when nd <= 2T-1 (the
// pairing runs out); BudgetExceeded from the labeling search.
Rational structure_probability(const CycleStructure& c, std::uint64_t T,
                               std::uint64_t n, std::uint32_t d,
                               std::uint64_t lab_budget = 1000000);

// Asymptotic form |Lab| / (nd)^gamma * exp(-(d-2) T^2 / (2nd)), suitable
// when T^2 is small against n. No finite-n correction is applied.
double approx_structure_probability(std::uint64_t labelings,
                                    std::uint32_t gamma_c, std::uint64_t T,
                                    std::uint64_t n, std::uint32_t d);
double approx_structure_probability(const CycleStructure& c, std::uint64_t T,
                                    std::uint64_t n, std::uint32_t d,
                                    std::uint64_t lab_budget = 1000000);

}  // namespace shotgun
