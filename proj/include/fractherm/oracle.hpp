#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "fractherm/conductivity.hpp"
#include "fractherm/spectral.hpp"

namespace fractherm {

struct OracleFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A scalar function of time with analytic derivative; caputo(alpha, t) is
/// the closed-form Caputo derivative when one is known (empty otherwise).
struct TimeFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double, double)> caputo;
};

/// Caputo derivative of order alpha at t by direct quadrature of
/// (1/Gamma(1-alpha)) int_0^t u'(s) (t-s)^{-alpha} ds.  The substitution
/// s = t (1 - tau^{1/(1-alpha)}) cancels the endpoint singularity exactly;
/// the remaining integral is evaluated on dyadically graded panels refined
/// until successive levels agree to rtol.  Independent of the L1 machinery.
double caputo_oracle(const TimeFunction& u, double alpha, double t,
                     double rtol = 1e-12);

/// Closed form when available, quadrature oracle otherwise.
double caputo_value(const TimeFunction& u, double alpha, double t,
                    double rtol = 1e-12);

/// Separable exact solution u(x, t) = w(t) * phi(x) used for order checks.
struct ManufacturedSolution {
  TimeFunction w;
  SpaceFunction phi;  // needs f, df, d2f; phi(+-1) = 0

  double value(double x, double t) const { return w.f(t) * phi.f(x); }
};

/// Forcing g(x,t) = d^alpha_t w * phi - w * phi'' - lambda f(u)/(int f(u))^2
/// that makes `exact` solve the problem.  The returned handle caches the
/// per-time Caputo factor and denominator integral; create one handle per
/// run (the cache is not synchronized across threads).
std::function<double(double, double)> manufactured_source(
    const ManufacturedSolution& exact, const Conductivity& cond, double lambda,
    double alpha, int fine_points = 256);

/// Initial condition w(0) * phi consistent with a manufactured solution.
SpaceFunction manufactured_initial(const ManufacturedSolution& exact);

// Stock time profiles.
TimeFunction tf_constant(double c);
TimeFunction tf_monomial(int p);     // t^p, p >= 1, closed-form Caputo
TimeFunction tf_linear();            // 1 + t
TimeFunction tf_one_plus_t2();       // 1 + t^2
TimeFunction tf_exp();               // e^t, no closed form

// Stock space profiles, all vanishing at x = +-1.
SpaceFunction sf_sinpi();  // sin(pi x)
SpaceFunction sf_phi0();   // L_0 - L_2 = 3(1 - x^2)/2
SpaceFunction sf_bump();   // (1 - x^2)^2

/// Named presets: "t2_sinpi", "t3_sinpi", "one_plus_t2_sinpi", "linear_sinpi".
ManufacturedSolution mms_preset(const std::string& name);

}  // namespace fractherm
