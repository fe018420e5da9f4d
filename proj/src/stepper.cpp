#include "fractherm/stepper.hpp"

#include <cmath>
#include <utility>

namespace fractherm {

PicardFailure::PicardFailure(int step_, std::vector<double> residuals_,
                             RunRecord partial_)
    : std::runtime_error("Picard iteration did not converge at step " +
                         std::to_string(step_) + " (last residual " +
                         std::to_string(residuals_.empty() ? 0.0 : residuals_.back()) +
                         ")"),
      step(step_),
      residuals(std::move(residuals_)),
      partial(std::move(partial_)) {}

void check_initial_condition(const SpaceFunction& u0, const QuadratureRule& quad) {
  if (!u0.f) throw std::invalid_argument("initial condition: missing handle");
  if (std::abs(u0.f(-1.0)) > 1e-10 || std::abs(u0.f(1.0)) > 1e-10)
    throw std::invalid_argument("initial condition must vanish at x = +-1");
  double prev_x = quad.nodes(0);
  double prev_v = u0.f(prev_x);
  if (!std::isfinite(prev_v))
    throw std::invalid_argument("initial condition is not finite on the grid");
  for (int i = 1; i < quad.size(); ++i) {
    const double x = quad.nodes(i);
    const double v = u0.f(x);
    if (!std::isfinite(v))
      throw std::invalid_argument("initial condition is not finite on the grid");
    if (!std::isfinite((v - prev_v) / (x - prev_x)))
      throw std::invalid_argument(
          "initial condition fails the discrete W^{1,inf} screen");
    prev_x = x;
    prev_v = v;
  }
}

TimeStepper::TimeStepper(const ProblemConfig& config, bool)
    : config_(config),
      space_(config.degree),
      weights_(compute_weights(config.alpha, config.grid)),
      solver_(space_, weights_.alpha0),
      conductivity_(&find_conductivity(config.conductivity)) {
  if (!(config.picard.tol > 0.0) || config.picard.max_iter < 1)
    throw std::invalid_argument("TimeStepper: invalid Picard settings");
  if (!(config.lambda >= 0.0) || !std::isfinite(config.lambda))
    throw std::invalid_argument("TimeStepper: lambda must be finite and >= 0");
}

TimeStepper::TimeStepper(const ProblemConfig& config)
    : TimeStepper(config, true) {
  check_initial_condition(config.initial, space_.quad());
  push_state(project_h1(config.initial, space_, weights_.alpha0), 0, 0.0);
}

TimeStepper::TimeStepper(const ProblemConfig& config,
                         const Eigen::VectorXd& initial_coeffs)
    : TimeStepper(config, true) {
  if (initial_coeffs.size() != space_.dim())
    throw std::invalid_argument("TimeStepper: initial coefficient size mismatch");
  push_state(initial_coeffs, 0, 0.0);
}

void TimeStepper::push_state(const Eigen::VectorXd& coeffs, int iters,
                             double residual) {
  trajectory_.push_back(coeffs);
  iters_.push_back(iters);
  residuals_.push_back(residual);
  l2_.push_back(l2_norm(space_, coeffs));
  h1_.push_back(h1_norm(space_, coeffs, weights_.alpha0));
}

const Eigen::VectorXd& TimeStepper::advance() {
  const int k = completed_steps();
  if (k >= config_.grid.steps)
    throw std::logic_error("TimeStepper::advance: trajectory already complete");
  const double t_next = config_.grid.time_at(k + 1);

  Eigen::VectorXd rhs =
      space_.mass() *
      history_combination({trajectory_.data(), trajectory_.size()}, weights_, k);
  if (config_.source)
    rhs += weights_.alpha0 *
           space_.load_vector([&](double x) { return config_.source(x, t_next); });
  const double load_scale =
      config_.nonlocal_alpha0_factor ? weights_.alpha0 : 1.0;

  Eigen::VectorXd next;
  int iters = 1;
  double residual = 0.0;
  if (config_.lambda == 0.0) {
    next = solver_.solve(rhs);  // the step is linear, one solve is exact
  } else if (config_.linearization == Linearization::lagged) {
    next = solver_.solve(rhs + nonlocal_load(trajectory_.back(), *conductivity_,
                                             config_.lambda, load_scale, space_));
  } else {
    Eigen::VectorXd cur = trajectory_.back();
    std::vector<double> history;
    bool converged = false;
    for (int m = 1; m <= config_.picard.max_iter; ++m) {
      next = solver_.solve(rhs + nonlocal_load(cur, *conductivity_, config_.lambda,
                                               load_scale, space_));
      residual = (next - cur).lpNorm<Eigen::Infinity>();
      history.push_back(residual);
      cur = next;
      if (residual <= config_.picard.tol) {
        iters = m;
        converged = true;
        break;
      }
    }
    if (!converged) throw PicardFailure(k + 1, std::move(history), record());
  }
  push_state(next, iters, residual);
  return trajectory_.back();
}

RunRecord TimeStepper::run_to_end() {
  while (completed_steps() < config_.grid.steps) advance();
  return record();
}

RunRecord TimeStepper::record() const {
  return {trajectory_, iters_, residuals_, l2_, h1_};
}

RunRecord run(const ProblemConfig& config) {
  return TimeStepper(config).run_to_end();
}

RunRecord run_from_coeffs(const ProblemConfig& config,
                          const Eigen::VectorXd& initial_coeffs) {
  return TimeStepper(config, initial_coeffs).run_to_end();
}

}  // namespace fractherm
