#pragma once

#include <cmath>
#include <cstdint>

namespace spanlab {

/// ceil(x) that ignores relative noise below 1e-9, so pow(8, 1/3.0) → 2.
inline std::int64_t ceil_robust(double x) {
  const double guard = 1e-9 * (std::abs(x) > 1.0 ? std::abs(x) : 1.0);
  return static_cast<std::int64_t>(std::ceil(x - guard));
}

/// log(a) / log(b), with the degenerate base b <= 1 mapped to 0.
inline double log_ratio(double a, double b) {
  return b > 1.0 ? std::log(a) / std::log(b) : 0.0;
}

}  // namespace spanlab
