#pragma once

#include <Eigen/Core>

namespace fractherm {

/// L_k(x) by the three-term recurrence (k+1) L_{k+1} = (2k+1) x L_k - k L_{k-1}.
/// Total on [-1, 1]; the recurrence is exact at x = +/-1.
template <typename Scalar>
Scalar legendre_eval(int k, Scalar x) {
  if (k <= 0) return Scalar(1);
  Scalar prev = Scalar(1);
  Scalar cur = x;
  for (int n = 1; n < k; ++n) {
    const Scalar next =
        (Scalar(2 * n + 1) * x * cur - Scalar(n) * prev) / Scalar(n + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// L_k and its first two derivatives at one point.
struct LegendreJet {
  double value = 1.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

LegendreJet legendre_jet(int k, double x);

/// Fills values(i) = L_i(x) for i = 0..kmax.  values must have size kmax + 1.
void legendre_values(int kmax, double x, Eigen::Ref<Eigen::VectorXd> values);

/// Fills derivs(i) = L_i'(x) for i = 0..kmax.
void legendre_derivatives(int kmax, double x, Eigen::Ref<Eigen::VectorXd> derivs);

}  // namespace fractherm
