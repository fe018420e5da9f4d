#include "fractherm/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fractherm/legendre.hpp"

namespace fractherm {

QuadratureRule QuadratureRule::mapped(double a, double b) const {
  const double half = 0.5 * (b - a);
  QuadratureRule out;
  out.nodes = ((nodes.array() + 1.0) * half + a).matrix();
  out.weights = weights * half;
  return out;
}

namespace {

// Bisection on L'_n over a bracket with a strict sign change.
double bisect_deriv_root(int n, double lo, double hi, double flo) {
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = legendre_jet(n, mid).d1;
    if (fm == 0.0) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

QuadratureRule lgl_rule(int q) {
  if (q < 2) throw std::invalid_argument("lgl_rule: need at least two points");
  const int n = q - 1;  // interior nodes are the roots of L'_n
  Eigen::VectorXd x(q);
  x(0) = -1.0;
  x(q - 1) = 1.0;

  if (q > 2) {
    // Chebyshev-spaced scan: consecutive roots are separated by more than
    // the sample spacing in the arccos variable, so every root shows up as
    // a sign change.  L'_n(+-1) != 0, roots are strictly interior.
    const int scan = 4 * q;
    std::vector<double> roots;
    double xa = -1.0;
    double fa = legendre_jet(n, xa).d1;
    for (int i = 1; i <= scan; ++i) {
      const double xb = -std::cos(std::numbers::pi * i / scan);
      const double fb = legendre_jet(n, xb).d1;
      if (fa == 0.0) {
        // recorded when first seen
      } else if (fb == 0.0) {
        roots.push_back(xb);
      } else if ((fa < 0.0) != (fb < 0.0)) {
        roots.push_back(bisect_deriv_root(n, xa, xb, fa));
      }
      xa = xb;
      fa = fb;
    }
    if (static_cast<int>(roots.size()) != q - 2)
      throw std::runtime_error("lgl_rule: interior root isolation failed");
    for (int i = 0; i < q - 2; ++i) x(i + 1) = roots[i];
  }

  // enforce x_i = -x_{q-1-i} exactly
  for (int i = 0; i < q / 2; ++i) {
    const double m = 0.5 * (x(i) - x(q - 1 - i));
    x(i) = m;
    x(q - 1 - i) = -m;
  }
  if (q % 2 == 1) x((q - 1) / 2) = 0.0;

  Eigen::VectorXd w(q);
  const double scale = 2.0 / (static_cast<double>(q) * (q - 1));
  for (int i = 0; i < q; ++i) {
    const double L = legendre_eval(n, x(i));
    w(i) = scale / (L * L);
  }
  for (int i = 0; i < q / 2; ++i) {
    const double m = 0.5 * (w(i) + w(q - 1 - i));
    w(i) = m;
    w(q - 1 - i) = m;
  }

  QuadratureRule rule;
  rule.nodes = std::move(x);
  rule.weights = std::move(w);
  return rule;
}

}  // namespace fractherm
