#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "fractherm/quadrature.hpp"

namespace fractherm {

/// A scalar function on [-1, 1] with optional analytic derivatives.  When df
/// is absent, routines that need it fall back to second-order central
/// differences with step 1e-6 (accuracy near 1e-10, documented trade-off).
struct SpaceFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
};

/// Mass matrix of the basis phi_k = L_k - L_{k+2}, k = 0..N-2:
/// M_kk = 2/(2k+1) + 2/(2k+5), M_{k,k+2} = -2/(2k+5), zero elsewhere.
Eigen::MatrixXd assemble_mass(int degree);

/// Diagonal of the stiffness matrix, S_kk = 4k + 6.
Eigen::VectorXd assemble_stiffness(int degree);

/// The polynomial trial/test space {v in P_N : v(+-1) = 0} on (-1, 1),
/// spanned by phi_k = L_k - L_{k+2}.  Carries the over-integration
/// quadrature rule (default N + 16 points) and tabulated basis values for
/// load assembly.  Immutable after construction.
class SpectralSpace {
 public:
  explicit SpectralSpace(int degree, int quad_points = 0);

  int degree() const { return degree_; }   // N
  int dim() const { return degree_ - 1; }  // number of basis functions
  const QuadratureRule& quad() const { return quad_; }
  const Eigen::MatrixXd& mass() const { return mass_; }
  const Eigen::VectorXd& stiffness() const { return stiffness_; }
  const Eigen::MatrixXd& basis_values() const { return basis_values_; }
  const Eigen::MatrixXd& basis_derivatives() const { return basis_derivatives_; }

  /// (f, phi_i) for all i, by the space's quadrature rule.
  Eigen::VectorXd load_vector(const std::function<double(double)>& f) const;

  /// Pointwise values of the represented function at the quadrature nodes.
  Eigen::VectorXd values_at_quad(const Eigen::Ref<const Eigen::VectorXd>& coeffs) const;

 private:
  int degree_;
  QuadratureRule quad_;
  Eigen::MatrixXd mass_;
  Eigen::VectorXd stiffness_;
  Eigen::MatrixXd basis_values_;       // q x dim
  Eigen::MatrixXd basis_derivatives_;  // q x dim
};

/// Factorization of A = M + alpha0 * S.  The basis couples only indices of
/// equal parity two apart, so A splits into two SPD tridiagonal chains,
/// each factored LDL^T once and solved in O(N).
class HelmholtzSolver {
 public:
  HelmholtzSolver(const SpectralSpace& space, double alpha0);

  double alpha0() const { return alpha0_; }
  Eigen::VectorXd solve(const Eigen::Ref<const Eigen::VectorXd>& rhs) const;

 private:
  struct Chain {
    std::vector<int> index;  // positions in the full coefficient vector
    Eigen::VectorXd d;       // pivot diagonal
    Eigen::VectorXd l;       // unit-lower subdiagonal
  };

  int dim_;
  double alpha0_;
  Chain chains_[2];
};

/// H1-orthogonal projection onto the space: solves
/// (M + alpha0 S) c = [(psi, phi_i) + alpha0 (psi', phi_i')].
/// psi must vanish at x = +-1 to 1e-10.
Eigen::VectorXd project_h1(const SpaceFunction& psi, const SpectralSpace& space,
                           double alpha0);

double l2_norm(const SpectralSpace& space,
               const Eigen::Ref<const Eigen::VectorXd>& coeffs);

/// Discrete realization of ||v||_1 = (||v||_0^2 + alpha0 ||v'||_0^2)^{1/2}.
double h1_norm(const SpectralSpace& space,
               const Eigen::Ref<const Eigen::VectorXd>& coeffs, double alpha0);

/// Evaluates sum_k c_k (L_k - L_{k+2}) at the given points; exactly 0 at +-1.
Eigen::VectorXd synthesize(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                           const Eigen::Ref<const Eigen::VectorXd>& points);

/// Derivative of the represented function, via phi_k' = -(2k+3) L_{k+1}.
Eigen::VectorXd synthesize_derivative(
    const Eigen::Ref<const Eigen::VectorXd>& coeffs,
    const Eigen::Ref<const Eigen::VectorXd>& points);

}  // namespace fractherm
