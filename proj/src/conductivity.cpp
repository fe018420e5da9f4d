#include "fractherm/conductivity.hpp"

#include <cmath>
#include <limits>

namespace fractherm {

namespace {

std::vector<Conductivity> build_registry() {
  std::vector<Conductivity> reg;
  reg.push_back({"const_one",
                 [](double) { return 1.0; },
                 [](double) { return 0.0; },
                 1.0, 1.0, 0.0, true});
  reg.push_back({"shifted_sine",
                 [](double s) { return 2.0 + std::sin(s); },
                 [](double s) { return std::cos(s); },
                 1.0, 3.0, 0.0, true});
  reg.push_back({"sat_quadratic",
                 [](double s) { return 1.0 + s * s / (1.0 + s * s); },
                 [](double s) {
                   const double d = 1.0 + s * s;
                   return 2.0 * s / (d * d);
                 },
                 1.0, 2.0, 0.0, true});
  // deliberately violates positivity; kept so the failure path stays wired
  reg.push_back({"linear_unsafe",
                 [](double s) { return s; },
                 [](double) { return 1.0; },
                 1.0, 1.0, 0.0, false});
  return reg;
}

const std::vector<Conductivity>& registry() {
  static const std::vector<Conductivity> reg = build_registry();
  return reg;
}

}  // namespace

const Conductivity& find_conductivity(const std::string& id) {
  for (const auto& c : registry())
    if (c.id == id) return c;
  throw std::invalid_argument("unknown conductivity '" + id + "'");
}

std::vector<std::string> conductivity_ids() {
  std::vector<std::string> ids;
  for (const auto& c : registry()) ids.push_back(c.id);
  return ids;
}

Conductivity make_user_conductivity(std::string id,
                                    std::function<double(double)> f,
                                    std::function<double(double)> f_prime,
                                    double lower_bound, double envelope_const,
                                    double growth_exponent) {
  return {std::move(id), std::move(f), std::move(f_prime),
          lower_bound,   envelope_const, growth_exponent, false};
}

double integral_f(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                  const Conductivity& cond, const SpectralSpace& space) {
  const Eigen::VectorXd uv = space.values_at_quad(coeffs);
  double acc = 0.0;
  for (int i = 0; i < uv.size(); ++i)
    acc += space.quad().weights(i) * cond.f(uv(i));
  if (!(acc > 1e-12))
    throw DegenerateDenominator("integral_f: denominator " + std::to_string(acc) +
                                " is at quadrature-noise scale");
  return acc;
}

Eigen::VectorXd nonlocal_load(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                              const Conductivity& cond, double lambda,
                              double scale, const SpectralSpace& space) {
  if (lambda == 0.0) return Eigen::VectorXd::Zero(space.dim());
  const double denom = integral_f(coeffs, cond, space);
  const Eigen::VectorXd uv = space.values_at_quad(coeffs);
  Eigen::VectorXd fv(uv.size());
  for (int i = 0; i < uv.size(); ++i) fv(i) = cond.f(uv(i));
  const double factor = scale * lambda / (denom * denom);
  return factor * (space.basis_values().transpose() *
                   space.quad().weights.cwiseProduct(fv));
}

HypothesisReport hypothesis_check(const Conductivity& cond, double lo,
                                  double hi, int samples) {
  if (samples < 2)
    throw std::invalid_argument("hypothesis_check: need at least two samples");
  if (!(hi > lo))
    throw std::invalid_argument("hypothesis_check: empty range");

  HypothesisReport report;
  report.metadata_checked = cond.checked;
  report.min_value = std::numeric_limits<double>::infinity();
  report.envelope_margin = std::numeric_limits<double>::infinity();

  const double step = (hi - lo) / (samples - 1);
  double prev = 0.0;
  bool lower_ok = true, upper_ok = true;
  for (int i = 0; i < samples; ++i) {
    const double s = lo + i * step;
    const double v = cond.f(s);
    report.min_value = std::min(report.min_value, v);
    if (i > 0)
      report.lipschitz_estimate =
          std::max(report.lipschitz_estimate, std::abs(v - prev) / step);
    prev = v;
    if (v < cond.lower_bound - 1e-12) lower_ok = false;
    const double cap = cond.envelope_const *
                       (std::pow(std::abs(s), cond.growth_exponent + 1.0) + 1.0);
    report.envelope_margin = std::min(report.envelope_margin, cap - v);
    if (v > cap + 1e-12) upper_ok = false;
  }
  report.positivity_ok = report.min_value > 0.0 && lower_ok;
  report.envelope_ok = upper_ok && std::isfinite(report.lipschitz_estimate);
  return report;
}

}  // namespace fractherm
