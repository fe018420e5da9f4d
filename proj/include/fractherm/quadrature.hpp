#pragma once

#include <Eigen/Core>

namespace fractherm {

/// Nodes and positive weights for integration over [-1, 1].
struct QuadratureRule {
  Eigen::VectorXd nodes;    // ascending
  Eigen::VectorXd weights;  // sum to 2 = |Omega|

  int size() const { return static_cast<int>(nodes.size()); }

  template <typename F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (int i = 0; i < size(); ++i) acc += weights(i) * f(nodes(i));
    return acc;
  }

  /// Affine image of the rule on [a, b].
  QuadratureRule mapped(double a, double b) const;
};

/// Legendre-Gauss-Lobatto rule with q >= 2 points: endpoints +/-1 plus the
/// roots of L'_{q-1}, weights 2 / (q (q-1) L_{q-1}(x)^2).  Exact through
/// polynomial degree 2q - 3.  Interior roots are isolated by sign changes on
/// a Chebyshev-spaced scan and bisected to full precision; the root count is
/// verified, so a missed bracket raises instead of returning a bad rule.
QuadratureRule lgl_rule(int q);

}  // namespace fractherm
