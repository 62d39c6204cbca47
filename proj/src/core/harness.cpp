#include "core/harness.hpp"

#include <cmath>

#include "core/error.hpp"

namespace shotgun {

RadiusWindow radius_formulas(std::uint64_t n, std::uint32_t d, double delta) {
  if (n < 3)
    throw Error(ErrorCode::DomainError, "radius formulas need n >= 3");
  if (d < 3)
    throw Error(ErrorCode::InvalidDegree, "radius formulas need d >= 3");
  if (!(delta >= 0.0))
    throw Error(ErrorCode::DomainError, "delta must be nonnegative");
  double ln_n = std::log(double(n));
  double ln_ln_n = std::log(ln_n);
  double den = 2.0 * std::log(double(d) - 1.0);
  RadiusWindow w;
  w.r_minus = std::int32_t(std::floor((ln_n + ln_ln_n - delta) / den));
  w.r_plus = std::int32_t(std::ceil((ln_n + ln_ln_n + delta) / den));
  w.r_max = std::int32_t(std::floor((ln_n + 2.0 * ln_ln_n) / den));
  return w;
}

}  // namespace shotgun
