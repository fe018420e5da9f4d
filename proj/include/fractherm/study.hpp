#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "fractherm/oracle.hpp"
#include "fractherm/stepper.hpp"

namespace fractherm {

enum class FitMode { loglog, semilog };

/// Least-squares slope of log(error) against log(x) (loglog, algebraic
/// rates) or against x (semilog, exponential rates).  Needs >= 3 points,
/// positive errors, non-degenerate axis.
double fit_order(const Eigen::Ref<const Eigen::VectorXd>& xs,
                 const Eigen::Ref<const Eigen::VectorXd>& errors, FitMode mode);

struct ErrorNorms {
  double l2 = 0.0;
  double h1 = 0.0;      // alpha0-weighted norm used by the error estimates
  double h1_std = 0.0;  // unit-weight H1 variant, reported for context
};

/// Error between the represented function and the manufactured solution at
/// time t, by a reference rule with ref_points nodes (callers use 4N).
ErrorNorms continuum_error(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                           const ManufacturedSolution& exact, double t,
                           double alpha0, int ref_points);

struct StudyPoint {
  double axis = 0.0;  // delta (temporal) or N (spatial)
  double error_h1 = 0.0;
  double error_l2 = 0.0;
  double error_h1_std = 0.0;
  int max_picard_iters = 0;
};

struct ConvergenceStudy {
  std::vector<StudyPoint> points;  // ordered as requested
  FitMode mode = FitMode::loglog;
  double fitted_order = 0.0;     // from error_h1
  double fitted_order_l2 = 0.0;
  double floor_estimate = 0.0;   // smallest observed error
};

/// Runs the solver against `exact` for each step size; errors are measured
/// at T in the alpha0-weighted norm.  Points run concurrently when jobs > 1;
/// results are ordered by the input axis regardless.
ConvergenceStudy temporal_order_study(const ProblemConfig& base,
                                      const ManufacturedSolution& exact,
                                      const std::vector<double>& deltas,
                                      int jobs = 1);

/// Errors against `exact` for each polynomial degree at fixed delta; the
/// smallest error doubles as the reported temporal floor.
ConvergenceStudy spatial_study(const ProblemConfig& base,
                               const ManufacturedSolution& exact,
                               const std::vector<int>& degrees, int jobs = 1);

/// Classical implicit Euler marching with the same spectral space and the
/// same fixed-point treatment of the nonlocal term.  A deliberately separate
/// code path (no shared time-stepping logic) used as the alpha -> 1 oracle;
/// config.alpha is ignored.
RunRecord backward_euler_reference(const ProblemConfig& config);

// Brute-force quadrature assembly, the oracle half of the matrix checks.
Eigen::MatrixXd quadrature_assembled_mass(int degree, const QuadratureRule& rule);
Eigen::MatrixXd quadrature_assembled_stiffness(int degree, const QuadratureRule& rule);

/// One row of a pass/fail table produced by the self-check suites.
struct CheckLine {
  std::string name;
  bool pass = false;
  double value = 0.0;
  std::string detail;
};

std::vector<CheckLine> check_caputo();
std::vector<CheckLine> check_matrices();
std::vector<CheckLine> check_hypotheses();

}  // namespace fractherm
