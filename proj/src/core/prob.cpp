#include "core/prob.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/labelings.hpp"

namespace shotgun {

using boost::multiprecision::cpp_int;

std::uint64_t exploration_steps(const CycleStructure& c, std::uint32_t R) {
  if (c.d < 3)
    throw Error(ErrorCode::InvalidDegree, "degree must be at least 3");
  if (c.max_depth() > R)
    throw Error(ErrorCode::InvalidArgument,
                "structure reaches beyond the radius");
  // Collision counts per depth index; a collision indexed i is popped at
  // depth i-1, so anything indexed past R cannot happen in time.
  std::vector<std::uint64_t> gh(R + 2, 0), gi(R + 2, 0);
  for (const StructArc& a : c.arcs) {
    if (!a.collision) continue;
    std::uint32_t du = c.depth[a.src], dw = c.depth[a.dst];
    std::uint32_t idx = dw == du ? du + 1 : dw;
    if (idx > R)
      throw Error(ErrorCode::InvalidArgument,
                  "collision too deep for the radius");
    ++(dw == du ? gh : gi)[idx];
  }
  // March the per-depth slot counts: pops at depth i-1 are the slots not
  // eaten as collision targets; fresh reveals are the pops that are not
  // collisions themselves; each fresh vertex queues d-1 new slots.
  std::uint64_t slots = std::uint64_t(c.nsources) * c.d;
  std::uint64_t steps = 0;
  for (std::uint32_t i = 1; i <= R; ++i) {
    std::uint64_t eaten = gh[i] + gi[i - 1];
    if (slots < eaten)
      throw Error(ErrorCode::InvalidArgument,
                  "structure not realizable at this radius");
    std::uint64_t pops = slots - eaten;
    if (pops < gh[i] + gi[i])
      throw Error(ErrorCode::InvalidArgument,
                  "structure not realizable at this radius");
    std::uint64_t fresh = pops - gh[i] - gi[i];
    steps += pops;
    slots = std::uint64_t(c.d - 1) * fresh;
  }
  return steps;
}

Rational structure_probability(const CycleStructure& c, std::uint64_t T,
                               std::uint64_t n, std::uint32_t d,
                               std::uint64_t lab_budget) {
  if (d != c.d)
    throw Error(ErrorCode::InvalidArgument,
                "degree disagrees with the structure");
  std::uint32_t g = gamma(c);
  if (T < c.arcs.size())
    throw Error(ErrorCode::InvalidArgument,
                "step count smaller than the structure itself");
  std::uint64_t nd = n * d;
  if (T > 0 && nd <= 2 * T - 1)
    throw Error(ErrorCode::DomainError,
                "pairing has too few half-edges for this many steps");
  std::uint64_t lab = count_labelings(c, lab_budget);
  if (lab == 0) return Rational(0);

  std::uint64_t fresh = T - g;
  cpp_int num = lab;
  for (std::uint64_t k = 0; k < fresh; ++k) {
    if (c.nsources + k >= n) return Rational(0);  // no vertices left to meet
    num *= d * (n - c.nsources - k);
  }
  cpp_int den = 1;
  for (std::uint64_t t = 0; t < T; ++t) den *= nd - 2 * t - 1;
  return Rational(num, den);
}

double approx_structure_probability(std::uint64_t labelings,
                                    std::uint32_t gamma_c, std::uint64_t T,
                                    std::uint64_t n, std::uint32_t d) {
  double nd = static_cast<double>(n) * d;
  double tt = static_cast<double>(T);
  return static_cast<double>(labelings) / std::pow(nd, gamma_c) *
         std::exp(-(d - 2.0) * tt * tt / (2.0 * nd));
}

double approx_structure_probability(const CycleStructure& c, std::uint64_t T,
                                    std::uint64_t n, std::uint32_t d,
                                    std::uint64_t lab_budget) {
  if (d != c.d)
    throw Error(ErrorCode::InvalidArgument,
                "degree disagrees with the structure");
  return approx_structure_probability(count_labelings(c, lab_budget), gamma(c),
                                      T, n, d);
}

}  // namespace shotgun
