#pragma once

#include <cstdint>

namespace shotgun {

// Radii bracketing the reconstruction threshold at slack delta, plus the
// largest radius the tail estimates tolerate. Values are floors/ceilings
// of real expressions and can go negative for large delta; callers clamp
// where a nonnegative radius is needed.
struct RadiusWindow {
  std::int32_t r_minus = 0;
  std::int32_t r_plus = 0;
  std::int32_t r_max = 0;
};

// r_minus = floor((ln n + ln ln n - delta) / (2 ln(d-1)))
// r_plus  = ceil ((ln n + ln ln n + delta) / (2 ln(d-1)))
// r_max   = floor((ln n + 2 ln ln n) / (2 ln(d-1)))
// Natural logs throughout. Requires n >= 3 (ln ln n must be defined and
// positive), d >= 3, delta >= 0.
RadiusWindow radius_formulas(std::uint64_t n, std::uint32_t d, double delta);

}  // namespace shotgun
