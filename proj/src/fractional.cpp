#include "fractherm/fractional.hpp"

#include <cmath>
#include <stdexcept>

namespace fractherm {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument(
        "FractionalOrder: alpha must lie strictly in (0, 1)");
}

TimeGrid::TimeGrid(double T, int K) : horizon(T), steps(K), delta(T / K) {
  if (!(T > 0.0) || !std::isfinite(T))
    throw std::invalid_argument("TimeGrid: T must be positive and finite");
  if (K < 1) throw std::invalid_argument("TimeGrid: need at least one step");
}

L1Weights compute_weights(FractionalOrder alpha, const TimeGrid& grid) {
  L1Weights w;
  w.alpha = alpha;
  w.delta = grid.delta;
  w.b.resize(grid.steps);
  // direct formula; the power-difference cancellation stays below 1e-12
  // through K = 1e4 (spot-checked against long double in the tests)
  for (int j = 0; j < grid.steps; ++j) w.b(j) = l1_weight(alpha.value(), static_cast<long>(j));
  w.alpha0 = std::tgamma(2.0 - alpha.value()) * std::pow(grid.delta, alpha.value());
  return w;
}

namespace {

void check_history(std::span<const Eigen::VectorXd> history, const L1Weights& weights,
                   int k, const char* who) {
  if (k < 0 || static_cast<int>(history.size()) != k + 1)
    throw std::invalid_argument(std::string(who) + ": history must hold exactly u^0..u^k");
  if (k >= weights.b.size())
    throw std::invalid_argument(std::string(who) + ": k exceeds the weight range");
  for (const auto& u : history)
    if (u.size() != history[0].size())
      throw std::invalid_argument(std::string(who) + ": history entries differ in length");
}

}  // namespace

Eigen::VectorXd history_combination(std::span<const Eigen::VectorXd> history,
                                    const L1Weights& weights, int k) {
  check_history(history, weights, k, "history_combination");
  if (k == 0) return history[0];
  const auto& b = weights.b;
  Eigen::VectorXd f = (1.0 - b(1)) * history[k];
  for (int j = 1; j < k; ++j) f += (b(j) - b(j + 1)) * history[k - j];
  f += b(k) * history[0];
  return f;
}

Eigen::VectorXd history_combination_direct(std::span<const Eigen::VectorXd> history,
                                           const L1Weights& weights, int k) {
  check_history(history, weights, k, "history_combination_direct");
  const auto& b = weights.b;
  Eigen::VectorXd f = b(0) * history[k];
  for (int j = 1; j <= k; ++j) f -= b(j) * (history[k + 1 - j] - history[k - j]);
  return f;
}

double l1_caputo_apply(const Eigen::Ref<const Eigen::VectorXd>& samples,
                       const L1Weights& weights) {
  const int len = static_cast<int>(samples.size());
  if (len < 2)
    throw std::invalid_argument("l1_caputo_apply: need at least two samples");
  const int k = len - 2;
  if (k >= weights.b.size())
    throw std::invalid_argument("l1_caputo_apply: more samples than stepping weights");
  double acc = 0.0;
  for (int j = 0; j <= k; ++j)
    acc += weights.b(j) * (samples(k + 1 - j) - samples(k - j));
  return acc / weights.alpha0;
}

double weight_identity_defect(const L1Weights& weights) {
  const int K = static_cast<int>(weights.b.size());
  double worst = 0.0;
  double partial = 0.0;
  for (int k = 0; k < K; ++k) {
    const double next = (k + 1 < K)
                            ? weights.b(k + 1)
                            : l1_weight(weights.alpha.value(), static_cast<long>(k + 1));
    partial += weights.b(k) - next;
    worst = std::max(worst, std::abs(partial + next - 1.0));
  }
  return worst;
}

}  // namespace fractherm
