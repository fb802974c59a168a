#include "betadens/poly_basis.hpp"

#include <string>
#include <vector>

#include "betadens/errors.hpp"

namespace betadens {

namespace {

// Total variation of Q_{i+1} on [0, 1]: sum of |increments| between the
// critical points, located by a sign scan of the derivative and bisection.
double interior_variation(int i) {
  if (i == 0) return 0.0;
  constexpr int kScan = 8192;
  std::vector<double> points{0.0};
  double x_prev = 0.0;
  double d_prev = shifted_legendre_derivative(i, x_prev);
  for (int s = 1; s <= kScan; ++s) {
    const double x = static_cast<double>(s) / kScan;
    const double d = shifted_legendre_derivative(i, x);
    if (d == 0.0) {
      // Scan point is itself a (simple) critical point, e.g. x = 1/2 for even i.
      points.push_back(x);
      d_prev = -d_prev;
      x_prev = x;
      continue;
    }
    if ((d_prev < 0.0) != (d < 0.0)) {
      double lo = x_prev, hi = x;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((shifted_legendre_derivative(i, mid) < 0.0) == (d_prev < 0.0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      points.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    d_prev = d;
  }
  points.push_back(1.0);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    total += std::abs(shifted_legendre(i, points[k + 1]) - shifted_legendre(i, points[k]));
  }
  return total;
}

}  // namespace

PolyBasis::PolyBasis(int degree) : degree_(degree) {
  if (degree < 0 || degree > kMaxPolyDegree) {
    throw UnsupportedDegree("PolyBasis: degree " + std::to_string(degree) +
                            " outside [0, " + std::to_string(kMaxPolyDegree) + "]");
  }
  sup_norms_.resize(size());
  variation_norms_.resize(size());
  for (int i = 0; i < size(); ++i) {
    sup_norms_[i] = std::sqrt(2.0 * i + 1.0);
    variation_norms_[i] =
        std::abs(shifted_legendre(i, 0.0)) + std::abs(shifted_legendre(i, 1.0)) +
        interior_variation(i);
  }
}

Eigen::VectorXd PolyBasis::values(double x) const {
  Eigen::VectorXd p(size());
  legendre_values(2.0 * x - 1.0, degree_, p);
  for (int i = 0; i < size(); ++i) p[i] *= sup_norms_[i];
  return p;
}

double PolyBasis::c1(double p) const {
  return (sup_norms_.array().pow(1.5 * p) * variation_norms_.array().pow(0.5 * p)).sum();
}

double PolyBasis::c2(double p) const {
  return (sup_norms_.array().pow(p + 1.0) * variation_norms_.array().pow(p - 1.0)).sum();
}

PolyBasis build_poly_basis(int r) { return PolyBasis(r); }

}  // namespace betadens
