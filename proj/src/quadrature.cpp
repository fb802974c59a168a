#include "betadens/quadrature.hpp"

namespace betadens {

const GaussLegendreRule<double>& gauss_legendre_64() {
  static const GaussLegendreRule<double> rule = gauss_legendre<double>(64);
  return rule;
}

}  // namespace betadens
