#include "betadens/kernels.hpp"

#include <cmath>
#include <string>

#include "betadens/errors.hpp"

namespace betadens {

std::string_view to_string(KernelName name) {
  switch (name) {
    case KernelName::Epanechnikov:
      return "epanechnikov";
    case KernelName::Rectangular:
      return "rectangular";
    case KernelName::Triangular:
      return "triangular";
  }
  return "unknown";
}

KernelName kernel_name_from_string(std::string_view text) {
  if (text == "epanechnikov") return KernelName::Epanechnikov;
  if (text == "rectangular") return KernelName::Rectangular;
  if (text == "triangular") return KernelName::Triangular;
  throw DomainError("unknown kernel '" + std::string(text) + "'");
}

namespace {

double epanechnikov_eval(double u) { return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0; }
double rectangular_eval(double u) { return std::abs(u) <= 0.5 ? 1.0 : 0.0; }
double triangular_eval(double u) {
  const double a = std::abs(u);
  return a <= 1.0 ? 1.0 - a : 0.0;
}

}  // namespace

KernelSpec epanechnikov() {
  return {KernelName::Epanechnikov, &epanechnikov_eval, 1.5, 1.0, 1.0, {}};
}

KernelSpec rectangular() {
  return {KernelName::Rectangular, &rectangular_eval, 2.0, 1.0, 0.5, {}};
}

KernelSpec triangular() {
  return {KernelName::Triangular, &triangular_eval, 2.0, 1.0, 1.0, {0.0}};
}

KernelSpec make_kernel(KernelName name) {
  switch (name) {
    case KernelName::Epanechnikov:
      return epanechnikov();
    case KernelName::Rectangular:
      return rectangular();
    case KernelName::Triangular:
      return triangular();
  }
  throw DomainError("make_kernel: unknown kernel");
}

}  // namespace betadens
