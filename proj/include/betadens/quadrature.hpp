#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

#include <Eigen/Core>

namespace betadens {

/// Gauss-Legendre nodes and weights on [-1, 1].
template <typename Scalar>
struct GaussLegendreRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;

  Eigen::Index size() const { return nodes.size(); }
};

/// n-point rule by Newton iteration on P_n, seeded with Tricomi's estimate.
template <typename Scalar = double>
GaussLegendreRule<Scalar> gauss_legendre(int n) {
  using std::abs;
  using std::cos;
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  GaussLegendreRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar x = cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const Scalar pn = n == 1 ? x : p1;
      const Scalar pnm1 = n == 1 ? Scalar(1) : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1);
      const Scalar step = pn / dp;
      x -= step;
      if (abs(step) < Scalar(4) * std::numeric_limits<Scalar>::epsilon()) break;
    }
    // Recompute the derivative at the converged node.
    Scalar p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? Scalar(1) : n * (x * p1 - p0) / (x * x - 1);
    const Scalar w = Scalar(2) / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0;
  return rule;
}

/// Shared 64-node rule used by every integral check in the library.
const GaussLegendreRule<double>& gauss_legendre_64();

/// Integral of f over [a, b] with the given rule.
template <typename F, typename Scalar>
Scalar integrate_panel(F&& f, Scalar a, Scalar b, const GaussLegendreRule<Scalar>& rule) {
  const Scalar half = (b - a) / 2;
  const Scalar mid = (a + b) / 2;
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

/// Sum of panel integrals between consecutive sorted breakpoints.
template <typename F>
double integrate_composite(F&& f, std::span<const double> breaks,
                           const GaussLegendreRule<double>& rule = gauss_legendre_64()) {
  double sum = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) sum += integrate_panel(f, breaks[i], breaks[i + 1], rule);
  }
  return sum;
}

/// Integral over [a, b] to absolute tolerance `tol`, bisecting a panel until
/// its 64-node value agrees with the sum over its halves.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double tol, int max_depth = 30) {
  const auto& rule = gauss_legendre_64();
  auto recurse = [&](auto&& self, double lo, double hi, double whole, double eps,
                     int depth) -> double {
    const double mid = 0.5 * (lo + hi);
    const double left = integrate_panel(f, lo, mid, rule);
    const double right = integrate_panel(f, mid, hi, rule);
    const double refined = left + right;
    if (depth >= max_depth || std::abs(refined - whole) <= eps) return refined;
    return self(self, lo, mid, left, eps / 2, depth + 1) +
           self(self, mid, hi, right, eps / 2, depth + 1);
  };
  if (!(b > a)) return 0.0;
  return recurse(recurse, a, b, integrate_panel(f, a, b, rule), tol, 0);
}

}  // namespace betadens
