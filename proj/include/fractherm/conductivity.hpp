#pragma once

#include <Eigen/Core>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractherm/spectral.hpp"

namespace fractherm {

/// Raised when the denominator integral of the nonlocal term falls below the
/// quadrature-noise threshold 1e-12; positivity of f guarantees it stays
/// near 2c, so a near-zero value signals misuse or blow-up.
struct DegenerateDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A temperature-dependent conductivity with the metadata needed to police
/// the standing hypotheses: positivity bound c <= f, growth envelope
/// f(s) <= C (|s|^{beta+1} + 1), and a derivative for Lipschitz sampling.
struct Conductivity {
  std::string id;
  std::function<double(double)> f;
  std::function<double(double)> f_prime;
  double lower_bound = 1.0;    // c in the positivity bound
  double envelope_const = 1.0; // C in the growth envelope
  double growth_exponent = 0.0;  // beta
  bool checked = true;  // false: user-asserted metadata, flagged in reports
};

/// Built-in registry: "const_one", "shifted_sine" (2 + sin), "sat_quadratic"
/// (1 + s^2/(1+s^2)), plus "linear_unsafe" (f(s) = s), an unchecked entry
/// kept to exercise the hypothesis-failure path.  Throws on unknown ids.
const Conductivity& find_conductivity(const std::string& id);
std::vector<std::string> conductivity_ids();

/// User-supplied conductivity with caller-asserted metadata (checked=false).
Conductivity make_user_conductivity(std::string id,
                                    std::function<double(double)> f,
                                    std::function<double(double)> f_prime,
                                    double lower_bound, double envelope_const,
                                    double growth_exponent);

/// Quadrature value of the denominator integral of f(u_N) over (-1, 1).
double integral_f(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                  const Conductivity& cond, const SpectralSpace& space);

/// Load vector g_i = scale * lambda * (f(u_N), phi_i) / (integral_f)^2.
/// scale is alpha0 in the stepping scheme (or 1 when the alpha0 factor is
/// disabled by configuration).
Eigen::VectorXd nonlocal_load(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                              const Conductivity& cond, double lambda,
                              double scale, const SpectralSpace& space);

struct HypothesisReport {
  double min_value = 0.0;
  double lipschitz_estimate = 0.0;
  double envelope_margin = 0.0;  // min over samples of C(|s|^{b+1}+1) - f(s)
  bool positivity_ok = false;    // min_value > 0 and f >= lower_bound
  bool envelope_ok = false;      // growth envelope holds at every sample
  bool metadata_checked = true;

  bool pass() const { return positivity_ok && envelope_ok; }
};

/// Samples f over [lo, hi] and reports the positivity, Lipschitz, and growth
/// checks against the registered constants.
HypothesisReport hypothesis_check(const Conductivity& cond, double lo,
                                  double hi, int samples);

}  // namespace fractherm
