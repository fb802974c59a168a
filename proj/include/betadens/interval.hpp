#pragma once

#include <cmath>

namespace betadens {

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const noexcept { return hi - lo; }
  bool finite() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }

  bool operator==(const Interval&) const = default;
};

}  // namespace betadens
