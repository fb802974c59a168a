#pragma once

#include <cmath>

#include <Eigen/Core>

namespace betadens {

inline constexpr int kMaxPolyDegree = 10;

/// Values P_0(t), ..., P_r(t) of the Legendre polynomials, written into `out`.
template <typename Scalar, typename Derived>
void legendre_values(Scalar t, int r, Eigen::MatrixBase<Derived>& out) {
  out[0] = Scalar(1);
  if (r >= 1) out[1] = t;
  for (int k = 1; k < r; ++k) {
    out[k + 1] = (Scalar(2 * k + 1) * t * out[k] - Scalar(k) * out[k - 1]) / Scalar(k + 1);
  }
}

/// Orthonormal shifted Legendre polynomial Q_{i+1}(x) = sqrt(2i+1) P_i(2x - 1) on [0, 1].
template <typename Scalar>
Scalar shifted_legendre(int i, Scalar x) {
  using std::sqrt;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> p(i + 1);
  legendre_values(Scalar(2) * x - Scalar(1), i, p);
  return sqrt(Scalar(2 * i + 1)) * p[i];
}

/// Derivative of shifted_legendre(i, .) at x.
template <typename Scalar>
Scalar shifted_legendre_derivative(int i, Scalar x) {
  using std::sqrt;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> p(i + 1);
  legendre_values(Scalar(2) * x - Scalar(1), i, p);
  // P'_{k+1} = P'_{k-1} + (2k + 1) P_k
  Scalar d_prev = 0, d_cur = 0;  // P'_{-1} := 0, P'_0 = 0
  for (int k = 0; k < i; ++k) {
    const Scalar d_next = d_prev + Scalar(2 * k + 1) * p[k];
    d_prev = d_cur;
    d_cur = d_next;
  }
  return Scalar(2) * sqrt(Scalar(2 * i + 1)) * d_cur;
}

/// Orthonormal basis Q_1, ..., Q_{r+1} of polynomials of degree <= r on [0, 1],
/// with R_i = Q_i on (0, 1] and 0 elsewhere.
class PolyBasis {
 public:
  /// Throws UnsupportedDegree for degree < 0 or degree > kMaxPolyDegree.
  explicit PolyBasis(int degree);

  int degree() const noexcept { return degree_; }
  int size() const noexcept { return degree_ + 1; }

  /// Q_{i+1}(x) for 0-based i; no support restriction.
  double q(int i, double x) const { return shifted_legendre(i, x); }

  /// R_{i+1}(x): Q_{i+1}(x) on (0, 1], zero elsewhere.
  double r(int i, double x) const { return x > 0.0 && x <= 1.0 ? q(i, x) : 0.0; }

  /// All Q values at x (size r+1).
  Eigen::VectorXd values(double x) const;

  /// ||R_i||_inf = sqrt(2i - 1), attained at x = 1.
  const Eigen::VectorXd& sup_norms() const noexcept { return sup_norms_; }

  /// ||dR_i||: interior variation of Q_i plus the two boundary jumps.
  const Eigen::VectorXd& variation_norms() const noexcept { return variation_norms_; }

  /// Sum_i ||R_i||_inf^{3p/2} ||dR_i||^{p/2}.
  double c1(double p) const;
  /// Sum_i ||R_i||_inf^{p+1} ||dR_i||^{p-1}.
  double c2(double p) const;

 private:
  int degree_;
  Eigen::VectorXd sup_norms_;
  Eigen::VectorXd variation_norms_;
};

PolyBasis build_poly_basis(int r);

}  // namespace betadens
