#pragma once

#include <cstdint>
#include <optional>

namespace betadens {

/// Parameters that drive the theoretical rates.
struct RateRegime {
  double p = 1.0;      ///< risk exponent, >= 1
  double s = 1.0;      ///< smoothness, > 0
  double delta = 0.0;  ///< dependence discount, in [0, 1)
  std::optional<double> gamma;  ///< intermittent-map parameter, in (0, 1)

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// C n^{-(1 - delta) / (2 s + 1)}.
double kernel_bandwidth(std::int64_t n, const RateRegime& regime, double c = 1.0);

/// floor(C n^{1/3}), at least 1.
int histogram_bins_bv(std::int64_t n, double c = 1.0);

/// floor(n^{1/(3 - 2 gamma)}) for gamma <= 1/2,
/// floor(n^{(1 - gamma) / (gamma (3 - 2 gamma))}) for gamma > 1/2; at least 1.
int histogram_bins_lsv(std::int64_t n, double gamma);

struct RateExponent {
  double exponent;
  bool log_factor;  ///< rate is (n / log n)^{-exponent} rather than n^{-exponent}

  bool operator==(const RateExponent&) const = default;
};

/// L1 rate exponent of the histogram of T_gamma iterates.
RateExponent lsv_rate_exponent(double gamma);

/// f_gamma(x) = (1 - gamma) x^{-gamma} on (0, 1]. Throws DomainError elsewhere.
double equivalent_density(double x, double gamma);

/// floor(v), except that values within a few ulps of an integer snap to it, so
/// that exact powers such as 1000^{1/3} are not floored to 9.
std::int64_t snapped_floor(double v);

}  // namespace betadens
