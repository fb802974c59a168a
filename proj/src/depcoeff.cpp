#include "betadens/depcoeff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "betadens/errors.hpp"
#include "betadens/quadrature.hpp"

namespace betadens {

namespace {

void check_x0(double x0) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw DomainError("x0 must lie in [0, 1]");
}

void check_lag(int k, int max_lag) {
  if (k < 1) throw DomainError("lag k must be >= 1");
  if (k > max_lag) {
    throw CapacityError("lag k = " + std::to_string(k) + " exceeds the limit " +
                        std::to_string(max_lag));
  }
}

}  // namespace

ConditionalAtomSet conditional_atoms(double x0, int k) {
  check_x0(x0);
  check_lag(k, kMaxEnumeratedLag);
  const Eigen::Index count = Eigen::Index{1} << k;
  const double w = std::ldexp(1.0, -k);
  ConditionalAtomSet set{x0, k, Eigen::VectorXd(count)};
  for (Eigen::Index j = 0; j < count; ++j) set.atoms[j] = (x0 + static_cast<double>(j)) * w;
  return set;
}

double staircase_deviation(const Eigen::Ref<const Eigen::VectorXd>& sorted_atoms,
                           const std::function<double(double)>& marginal_cdf) {
  const auto count = static_cast<double>(sorted_atoms.size());
  double sup = 0.0;
  for (Eigen::Index j = 0; j < sorted_atoms.size(); ++j) {
    const double F = marginal_cdf(sorted_atoms[j]);
    const double below = static_cast<double>(j) / count;
    const double at = static_cast<double>(j + 1) / count;
    sup = std::max({sup, std::abs(below - F), std::abs(at - F)});
  }
  return sup;
}

double b0_exact(double x0, int k) {
  check_x0(x0);
  check_lag(k, kMaxClosedFormLag);
  return std::ldexp(std::max(x0, 1.0 - x0), -k);
}

double beta1_estimate(int k, int panels) {
  check_lag(k, kMaxEnumeratedLag);
  if (panels < 16) throw DomainError("beta1_estimate: need at least 16 panels");
  static const GaussLegendreRule<double> rule = gauss_legendre<double>(8);
  double sum = 0.0;
  for (int q = 0; q < panels; ++q) {
    const double a = static_cast<double>(q) / panels;
    const double b = static_cast<double>(q + 1) / panels;
    sum += integrate_panel([k](double x0) { return b0_exact(x0, k); }, a, b, rule);
  }
  return sum;
}

double b0_pair_grid_lower_bound(double x0, int i, int j, int grid) {
  check_x0(x0);
  if (!(i > j && j >= 1)) throw DomainError("b0_pair_grid_lower_bound: need i > j >= 1");
  if (i > 12) throw CapacityError("b0_pair_grid_lower_bound: i must be <= 12");
  if (grid < 2) throw DomainError("b0_pair_grid_lower_bound: grid must be >= 2");

  // Given X_0 = x0, X_j has atoms a_u = (x0 + u) 2^{-j}; given X_j = a,
  // X_i has atoms (a + v) 2^{-d}, d = i - j.
  const int d = i - j;
  const auto outer = Eigen::Index{1} << j;
  const auto inner = Eigen::Index{1} << d;
  const double w_outer = std::ldexp(1.0, -j);
  const double w_inner = std::ldexp(1.0, -d);
  const double w = w_outer * w_inner;

  // Stationary pair: X_j = U uniform, X_i = (U + V) 2^{-d}, V uniform on
  // {0..2^d - 1}; P(X_i <= t, X_j <= s) = 2^{-d} sum_V clamp(min(s, 2^d t - V)).
  auto joint_stationary = [&](double t, double s) {
    double acc = 0.0;
    for (Eigen::Index v = 0; v < inner; ++v) {
      const double upper = std::min(s, std::ldexp(t, d) - static_cast<double>(v));
      acc += std::clamp(upper, 0.0, 1.0);
    }
    return acc * w_inner;
  };

  Eigen::VectorXd grid_pts(grid);
  for (int g = 0; g < grid; ++g) grid_pts[g] = (g + 0.5) / grid;

  // Conditional law on the grid: drop each atom pair into the first grid cell
  // at or above it, then take cumulative sums.
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(grid + 1, grid + 1);  // (t, s)
  auto first_at_or_above = [&](double x) {
    return std::lower_bound(grid_pts.begin(), grid_pts.end(), x) - grid_pts.begin();
  };
  for (Eigen::Index u = 0; u < outer; ++u) {
    const double a = (x0 + static_cast<double>(u)) * w_outer;
    const auto s_cell = first_at_or_above(a);
    for (Eigen::Index v = 0; v < inner; ++v) {
      mass(first_at_or_above((a + static_cast<double>(v)) * w_inner), s_cell) += w;
    }
  }
  Eigen::MatrixXd cond_joint = mass.topLeftCorner(grid, grid);  // P(X_i <= t, X_j <= s | x0)
  for (int t = 1; t < grid; ++t) cond_joint.row(t) += cond_joint.row(t - 1);
  for (int s = 1; s < grid; ++s) cond_joint.col(s) += cond_joint.col(s - 1);
  Eigen::VectorXd cond_i = mass.topRows(grid).rowwise().sum();  // P(X_i <= t | x0)
  for (int t = 1; t < grid; ++t) cond_i[t] += cond_i[t - 1];
  Eigen::VectorXd cond_j = mass.leftCols(grid).colwise().sum().transpose();  // P(X_j <= s | x0)
  for (int s = 1; s < grid; ++s) cond_j[s] += cond_j[s - 1];

  double sup = 0.0;
  for (int t = 0; t < grid; ++t) {
    const double tv = grid_pts[t];
    for (int s = 0; s < grid; ++s) {
      const double sv = grid_pts[s];
      const double conditional = cond_joint(t, s) - sv * cond_i[t] - tv * cond_j[s] + tv * sv;
      const double stationary = joint_stationary(tv, sv) - tv * sv;
      sup = std::max(sup, std::abs(conditional - stationary));
    }
  }
  return sup;
}

}  // namespace betadens
