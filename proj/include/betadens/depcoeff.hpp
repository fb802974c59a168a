#pragma once

#include <functional>

#include <Eigen/Core>

namespace betadens {

inline constexpr int kMaxEnumeratedLag = 24;
inline constexpr int kMaxClosedFormLag = 40;

/// Conditional law of X_k given X_0 = x0 for the dyadic AR(1) chain: the
/// 2^k equally likely atoms (x0 + j) 2^{-k}, j = 0..2^k - 1, sorted.
struct ConditionalAtomSet {
  double x0;
  int k;
  Eigen::VectorXd atoms;

  double weight() const { return std::ldexp(1.0, -k); }
};

/// Throws DomainError for x0 outside [0, 1] or k < 1, CapacityError for k > 24.
ConditionalAtomSet conditional_atoms(double x0, int k);

/// sup_t |G_atoms(t) - F(t)| where G_atoms is the CDF of equal-weight atoms
/// (sorted) and F a continuous marginal CDF. Scans both sides of every jump.
double staircase_deviation(const Eigen::Ref<const Eigen::VectorXd>& sorted_atoms,
                           const std::function<double(double)>& marginal_cdf);

/// b_0(k) at X_0 = x0 against the uniform marginal, in closed form.
///
/// Left of atom j the staircase sits at j 2^{-k} against t = (x0 + j) 2^{-k};
/// at the atom it sits at (j + 1) 2^{-k}. Every jump therefore deviates by
/// x0 2^{-k} or (1 - x0) 2^{-k}, so b_0(k) = max(x0, 1 - x0) 2^{-k}.
/// Valid for 1 <= k <= 40.
double b0_exact(double x0, int k);

/// beta_{1,X}(k) = E b_0(k) with X_0 ~ U[0,1]: composite Gauss-Legendre over
/// x0 with `panels` equal panels of 8 nodes each (panels >= 16), k <= 24.
double beta1_estimate(int k, int panels);

/// Grid lower bound for the two-index quantity b_0(i, j) at X_0 = x0:
/// the sup over a grid x grid lattice of (s, t) in [0,1]^2 of
/// |E[f_t^0(X_i) f_s^0(X_j) | X_0 = x0] - E[f_t^0(X_i) f_s^0(X_j)]|.
/// Exploratory only, not an exact value. Needs i > j >= 1 and i <= 12.
double b0_pair_grid_lower_bound(double x0, int i, int j, int grid = 256);

}  // namespace betadens
