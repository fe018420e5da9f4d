#include "fractherm/legendre.hpp"

namespace fractherm {

LegendreJet legendre_jet(int k, double x) {
  LegendreJet jet;
  if (k <= 0) return jet;
  // value, first and second derivative recurrences run side by side
  double pm = 1.0, p = x;
  double dm = 0.0, d = 1.0;
  double sm = 0.0, s = 0.0;
  for (int n = 1; n < k; ++n) {
    const double a = 2.0 * n + 1.0;
    const double div = n + 1.0;
    const double pn = (a * x * p - n * pm) / div;
    const double dn = (a * (p + x * d) - n * dm) / div;
    const double sn = (a * (2.0 * d + x * s) - n * sm) / div;
    pm = p;
    p = pn;
    dm = d;
    d = dn;
    sm = s;
    s = sn;
  }
  jet.value = p;
  jet.d1 = d;
  jet.d2 = s;
  return jet;
}

void legendre_values(int kmax, double x, Eigen::Ref<Eigen::VectorXd> values) {
  values(0) = 1.0;
  if (kmax == 0) return;
  values(1) = x;
  for (int n = 1; n < kmax; ++n)
    values(n + 1) = ((2.0 * n + 1.0) * x * values(n) - n * values(n - 1)) / (n + 1.0);
}

void legendre_derivatives(int kmax, double x, Eigen::Ref<Eigen::VectorXd> derivs) {
  derivs(0) = 0.0;
  if (kmax == 0) return;
  derivs(1) = 1.0;
  double pm = 1.0, p = x;
  for (int n = 1; n < kmax; ++n) {
    const double a = 2.0 * n + 1.0;
    derivs(n + 1) = (a * (p + x * derivs(n)) - n * derivs(n - 1)) / (n + 1.0);
    const double pn = (a * x * p - n * pm) / (n + 1.0);
    pm = p;
    p = pn;
  }
}

}  // namespace fractherm
