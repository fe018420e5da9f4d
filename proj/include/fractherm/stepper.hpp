#pragma once

#include <Eigen/Core>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractherm/conductivity.hpp"
#include "fractherm/fractional.hpp"
#include "fractherm/spectral.hpp"

namespace fractherm {

enum class Linearization {
  picard,  // resolve the implicit nonlocal term by fixed-point iteration
  lagged   // evaluate the nonlocal term at u^k; one linear solve per step
};

struct PicardSettings {
  double tol = 1e-12;  // infinity norm on coefficient updates
  int max_iter = 50;
};

struct ProblemConfig {
  FractionalOrder alpha;
  double lambda = 0.0;
  TimeGrid grid{1.0, 16};
  int degree = 16;  // spectral N
  std::string conductivity = "const_one";
  SpaceFunction initial;                         // must vanish at x = +-1
  std::function<double(double, double)> source;  // g(x, t); empty = none
  PicardSettings picard;
  bool nonlocal_alpha0_factor = true;
  Linearization linearization = Linearization::picard;
};

/// Trajectory plus per-step diagnostics; all vectors indexed 0..K with the
/// k = 0 entries describing the projected initial state.
struct RunRecord {
  std::vector<Eigen::VectorXd> trajectory;
  std::vector<int> picard_iters;
  std::vector<double> picard_residuals;
  std::vector<double> l2_norms;
  std::vector<double> h1_norms;
};

/// Raised when the fixed-point iteration exhausts max_iter; carries the
/// failing step, the residual history of that step, and the partial record.
struct PicardFailure : std::runtime_error {
  PicardFailure(int step_, std::vector<double> residuals_, RunRecord partial_);
  int step;
  std::vector<double> residuals;
  RunRecord partial;
};

/// Boundary and discrete W^{1,inf} screen applied to initial data: values at
/// +-1 below 1e-10, finite samples and finite difference quotients on the
/// quadrature grid.  Throws std::invalid_argument on violation.
void check_initial_condition(const SpaceFunction& u0, const QuadratureRule& quad);

/// Marches the fully discrete scheme: at each step solve
///   (M + alpha0 S) c^{k+1} = M f^k + nonlocal load(c^{k+1}) + source load,
/// with f^k the convex history combination.  The system matrix is factored
/// once per run.  Strictly sequential in k; distinct instances share nothing.
class TimeStepper {
 public:
  explicit TimeStepper(const ProblemConfig& config);
  TimeStepper(const ProblemConfig& config, const Eigen::VectorXd& initial_coeffs);

  const ProblemConfig& config() const { return config_; }
  const SpectralSpace& space() const { return space_; }
  const L1Weights& weights() const { return weights_; }
  double alpha0() const { return weights_.alpha0; }
  int completed_steps() const { return static_cast<int>(trajectory_.size()) - 1; }
  const std::vector<Eigen::VectorXd>& trajectory() const { return trajectory_; }

  /// Computes u^{k+1} from the filled trajectory u^0..u^k.
  const Eigen::VectorXd& advance();

  /// Advances to k = K and returns the full record.
  RunRecord run_to_end();

  RunRecord record() const;

 private:
  TimeStepper(const ProblemConfig& config, bool);  // shared setup

  void push_state(const Eigen::VectorXd& coeffs, int iters, double residual);

  ProblemConfig config_;
  SpectralSpace space_;
  L1Weights weights_;
  HelmholtzSolver solver_;
  const Conductivity* conductivity_;
  std::vector<Eigen::VectorXd> trajectory_;
  std::vector<int> iters_;
  std::vector<double> residuals_;
  std::vector<double> l2_;
  std::vector<double> h1_;
};

RunRecord run(const ProblemConfig& config);
RunRecord run_from_coeffs(const ProblemConfig& config,
                          const Eigen::VectorXd& initial_coeffs);

}  // namespace fractherm
