#include "fractherm/oracle.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "fractherm/quadrature.hpp"

namespace fractherm {

double caputo_oracle(const TimeFunction& u, double alpha, double t, double rtol) {
  if (!u.df)
    throw std::invalid_argument("caputo_oracle: analytic derivative required");
  if (!(t > 0.0)) throw std::invalid_argument("caputo_oracle: t must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("caputo_oracle: alpha must lie in (0, 1)");

  // After s = t (1 - tau^{1/(1-alpha)}) the weighted integral becomes
  // t^{1-alpha}/Gamma(2-alpha) * int_0^1 u'(t (1 - tau^{1/(1-alpha)})) dtau,
  // smooth except for a mild tau^{1/(1-alpha)} kink at tau = 0.  Dyadically
  // graded panels make each panel analytic with a tail error that shrinks
  // geometrically in the grading depth.
  const double p = 1.0 / (1.0 - alpha);
  const auto g = [&](double tau) { return u.df(t * (1.0 - std::pow(tau, p))); };

  static const QuadratureRule panel = lgl_rule(32);
  const auto graded = [&](int levels) {
    double acc = 0.0;
    double hi = 1.0;
    for (int m = 0; m < levels; ++m) {
      const double lo = 0.5 * hi;
      acc += panel.mapped(lo, hi).integrate(g);
      hi = lo;
    }
    acc += panel.mapped(0.0, hi).integrate(g);
    return acc;
  };

  const double scale = std::pow(t, 1.0 - alpha) / std::tgamma(2.0 - alpha);
  double prev = graded(8);
  for (int levels : {16, 32, 64, 128}) {
    const double cur = graded(levels);
    if (std::abs(cur - prev) <= rtol * std::max(std::abs(cur), 1e-300))
      return scale * cur;
    prev = cur;
  }
  throw OracleFailure("caputo_oracle: refinement stagnated before tolerance");
}

double caputo_value(const TimeFunction& u, double alpha, double t, double rtol) {
  if (u.caputo) return u.caputo(alpha, t);
  return caputo_oracle(u, alpha, t, rtol);
}

SpaceFunction manufactured_initial(const ManufacturedSolution& exact) {
  const double w0 = exact.w.f(0.0);
  SpaceFunction phi = exact.phi;
  SpaceFunction out;
  out.f = [w0, phi](double x) { return w0 * phi.f(x); };
  if (phi.df) out.df = [w0, phi](double x) { return w0 * phi.df(x); };
  if (phi.d2f) out.d2f = [w0, phi](double x) { return w0 * phi.d2f(x); };
  return out;
}

std::function<double(double, double)> manufactured_source(
    const ManufacturedSolution& exact, const Conductivity& cond, double lambda,
    double alpha, int fine_points) {
  if (!exact.phi.d2f)
    throw std::invalid_argument("manufactured_source: phi needs a second derivative");
  if (std::abs(exact.phi.f(-1.0)) > 1e-10 || std::abs(exact.phi.f(1.0)) > 1e-10)
    throw std::invalid_argument("manufactured_source: phi must vanish at x = +-1");

  struct Cache {
    double t = std::numeric_limits<double>::quiet_NaN();
    double caputo_w = 0.0;
    double denom_sq = 1.0;
  };
  auto cache = std::make_shared<Cache>();
  auto rule = std::make_shared<QuadratureRule>(lgl_rule(fine_points));
  TimeFunction w = exact.w;
  SpaceFunction phi = exact.phi;
  Conductivity f = cond;

  return [cache, rule, w, phi, f, lambda, alpha](double x, double t) {
    if (t != cache->t) {
      cache->caputo_w = (t == 0.0) ? 0.0 : caputo_value(w, alpha, t);
      if (lambda != 0.0) {
        const double wt = w.f(t);
        const double denom =
            rule->integrate([&](double y) { return f.f(wt * phi.f(y)); });
        cache->denom_sq = denom * denom;
      }
      cache->t = t;
    }
    double g = cache->caputo_w * phi.f(x) - w.f(t) * phi.d2f(x);
    if (lambda != 0.0) g -= lambda * f.f(w.f(t) * phi.f(x)) / cache->denom_sq;
    return g;
  };
}

TimeFunction tf_constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; },
          [](double, double) { return 0.0; }};
}

TimeFunction tf_monomial(int p) {
  if (p < 1) throw std::invalid_argument("tf_monomial: p must be >= 1");
  const double dp = p;
  return {[dp](double t) { return std::pow(t, dp); },
          [dp](double t) { return dp * std::pow(t, dp - 1.0); },
          // Gamma(p+1)/Gamma(p+1-alpha) t^{p-alpha}
          [dp](double alpha, double t) {
            return std::tgamma(dp + 1.0) / std::tgamma(dp + 1.0 - alpha) *
                   std::pow(t, dp - alpha);
          }};
}

TimeFunction tf_linear() {
  return {[](double t) { return 1.0 + t; }, [](double) { return 1.0; },
          [](double alpha, double t) {
            return std::pow(t, 1.0 - alpha) / std::tgamma(2.0 - alpha);
          }};
}

TimeFunction tf_one_plus_t2() {
  return {[](double t) { return 1.0 + t * t; }, [](double t) { return 2.0 * t; },
          [](double alpha, double t) {
            return 2.0 / std::tgamma(3.0 - alpha) * std::pow(t, 2.0 - alpha);
          }};
}

TimeFunction tf_exp() {
  return {[](double t) { return std::exp(t); },
          [](double t) { return std::exp(t); },
          nullptr};
}

SpaceFunction sf_sinpi() {
  constexpr double pi = 3.14159265358979323846264338327950288;
  return {[](double x) { return std::sin(pi * x); },
          [](double x) { return pi * std::cos(pi * x); },
          [](double x) { return -pi * pi * std::sin(pi * x); }};
}

SpaceFunction sf_phi0() {
  return {[](double x) { return 1.5 * (1.0 - x * x); },
          [](double x) { return -3.0 * x; },
          [](double) { return -3.0; }};
}

SpaceFunction sf_bump() {
  return {[](double x) { return (1.0 - x * x) * (1.0 - x * x); },
          [](double x) { return -4.0 * x * (1.0 - x * x); },
          [](double x) { return -4.0 + 12.0 * x * x; }};
}

ManufacturedSolution mms_preset(const std::string& name) {
  if (name == "t2_sinpi") return {tf_monomial(2), sf_sinpi()};
  if (name == "t3_sinpi") return {tf_monomial(3), sf_sinpi()};
  if (name == "one_plus_t2_sinpi") return {tf_one_plus_t2(), sf_sinpi()};
  if (name == "linear_sinpi") return {tf_linear(), sf_sinpi()};
  throw std::invalid_argument("unknown manufactured preset '" + name + "'");
}

}  // namespace fractherm
