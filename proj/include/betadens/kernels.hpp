#pragma once

#include <string_view>
#include <vector>

namespace betadens {

enum class KernelName { Epanechnikov, Rectangular, Triangular };

std::string_view to_string(KernelName name);
/// Accepts "epanechnikov", "rectangular", "triangular". Throws DomainError otherwise.
KernelName kernel_name_from_string(std::string_view text);

/// Bounded-variation smoothing kernel with its analytic constants.
struct KernelSpec {
  KernelName name;
  double (*eval)(double u);
  double total_variation;  ///< ||dK||
  double l1_norm;          ///< ||K||_{1,lambda}
  double support_radius;   ///< K vanishes outside [-radius, radius]
  /// Points of [-radius, radius] where K is not smooth (excluding the ends).
  std::vector<double> interior_kinks;

  double operator()(double u) const { return eval(u); }
};

/// 3/4 (1 - u^2) on [-1, 1].
KernelSpec epanechnikov();
/// Height 1 on [-1/2, 1/2].
KernelSpec rectangular();
/// 1 - |u| on [-1, 1].
KernelSpec triangular();

KernelSpec make_kernel(KernelName name);

}  // namespace betadens
