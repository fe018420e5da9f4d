#pragma once

#include <Eigen/Core>
#include <cmath>
#include <span>

namespace fractherm {

/// Caputo order, restricted to the open interval (0, 1).  The classical
/// limit is reached only through values close to 1 (e.g. 0.999).
class FractionalOrder {
 public:
  FractionalOrder() : alpha_(0.5) {}
  explicit FractionalOrder(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

/// Uniform time grid t_k = k * delta with delta = T / K.
struct TimeGrid {
  double horizon = 1.0;  // T
  int steps = 1;         // K
  double delta = 1.0;

  TimeGrid() = default;
  TimeGrid(double T, int K);
  double time_at(int k) const { return k * delta; }
};

/// b_j = (j+1)^{1-alpha} - j^{1-alpha}.  Templated so the mild cancellation
/// for large j can be spot-checked against extended precision.
template <typename Scalar>
Scalar l1_weight(Scalar alpha, long j) {
  using std::pow;
  const Scalar e = Scalar(1) - alpha;
  return pow(Scalar(j + 1), e) - pow(Scalar(j), e);
}

/// The L1 stepping weights b_0..b_{K-1} together with the elliptic scale
/// alpha0 = Gamma(2 - alpha) * delta^alpha.
struct L1Weights {
  FractionalOrder alpha;
  double delta = 1.0;
  Eigen::VectorXd b;
  double alpha0 = 0.0;
};

L1Weights compute_weights(FractionalOrder alpha, const TimeGrid& grid);

/// f^k = (1 - b_1) u^k + sum_{j=1}^{k-1} (b_j - b_{j+1}) u^{k-j} + b_k u^0,
/// with the empty-sum conventions f^0 = u^0 and f^1 = (1 - b_1) u^1 + b_1 u^0.
/// history must hold exactly u^0..u^k.
Eigen::VectorXd history_combination(std::span<const Eigen::VectorXd> history,
                                    const L1Weights& weights, int k);

/// The same combination assembled without rearrangement,
/// b_0 u^k - sum_{j=1}^{k} b_j (u^{k+1-j} - u^{k-j}); agrees with
/// history_combination to round-off.
Eigen::VectorXd history_combination_direct(
    std::span<const Eigen::VectorXd> history, const L1Weights& weights, int k);

/// Discrete Caputo operator on scalar samples u(t_0)..u(t_{k+1}):
/// (1/alpha0) sum_{j=0}^{k} b_j (u_{k+1-j} - u_{k-j}).
double l1_caputo_apply(const Eigen::Ref<const Eigen::VectorXd>& samples,
                       const L1Weights& weights);

/// Largest defect of the telescoping identity
/// sum_{j=0}^{k} (b_j - b_{j+1}) + b_{k+1} = 1 over k = 0..K-1, with the sum
/// accumulated term by term (no algebraic shortcut).
double weight_identity_defect(const L1Weights& weights);

}  // namespace fractherm
