#include "fractherm/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "fractherm/legendre.hpp"

namespace fractherm {

Eigen::MatrixXd assemble_mass(int degree) {
  if (degree < 2)
    throw std::invalid_argument("assemble_mass: the space is empty below degree 2");
  const int n = degree - 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    m(k, k) = 2.0 / (2.0 * k + 1.0) + 2.0 / (2.0 * k + 5.0);
    if (k + 2 < n) {
      m(k, k + 2) = -2.0 / (2.0 * k + 5.0);
      m(k + 2, k) = m(k, k + 2);
    }
  }
  return m;
}

Eigen::VectorXd assemble_stiffness(int degree) {
  if (degree < 2)
    throw std::invalid_argument("assemble_stiffness: the space is empty below degree 2");
  const int n = degree - 1;
  Eigen::VectorXd s(n);
  for (int k = 0; k < n; ++k) s(k) = 4.0 * k + 6.0;
  return s;
}

SpectralSpace::SpectralSpace(int degree, int quad_points)
    : degree_(degree),
      quad_(lgl_rule(quad_points > 0 ? quad_points : degree + 16)),
      mass_(assemble_mass(degree)),
      stiffness_(assemble_stiffness(degree)) {
  const int q = quad_.size();
  const int n = dim();
  basis_values_.resize(q, n);
  basis_derivatives_.resize(q, n);
  Eigen::VectorXd L(degree_ + 1);
  for (int i = 0; i < q; ++i) {
    legendre_values(degree_, quad_.nodes(i), L);
    for (int k = 0; k < n; ++k) {
      basis_values_(i, k) = L(k) - L(k + 2);
      basis_derivatives_(i, k) = -(2.0 * k + 3.0) * L(k + 1);
    }
  }
}

Eigen::VectorXd SpectralSpace::load_vector(const std::function<double(double)>& f) const {
  Eigen::VectorXd fv(quad_.size());
  for (int i = 0; i < quad_.size(); ++i) fv(i) = f(quad_.nodes(i));
  return basis_values_.transpose() * quad_.weights.cwiseProduct(fv);
}

Eigen::VectorXd SpectralSpace::values_at_quad(
    const Eigen::Ref<const Eigen::VectorXd>& coeffs) const {
  return basis_values_ * coeffs;
}

HelmholtzSolver::HelmholtzSolver(const SpectralSpace& space, double alpha0)
    : dim_(space.dim()), alpha0_(alpha0) {
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0))
    throw std::invalid_argument("HelmholtzSolver: alpha0 must be positive");
  const auto& m = space.mass();
  const auto& s = space.stiffness();
  for (int parity = 0; parity < 2; ++parity) {
    Chain& ch = chains_[parity];
    for (int i = parity; i < dim_; i += 2) ch.index.push_back(i);
    const int len = static_cast<int>(ch.index.size());
    ch.d.resize(len);
    ch.l.resize(len > 0 ? len - 1 : 0);
    for (int r = 0; r < len; ++r) {
      const int i = ch.index[r];
      double piv = m(i, i) + alpha0 * s(i);
      if (r > 0) piv -= ch.l(r - 1) * ch.l(r - 1) * ch.d(r - 1);
      if (!(piv > 0.0))
        throw std::runtime_error("HelmholtzSolver: lost positive definiteness");
      ch.d(r) = piv;
      if (r + 1 < len) ch.l(r) = m(i, ch.index[r + 1]) / piv;
    }
  }
}

Eigen::VectorXd HelmholtzSolver::solve(const Eigen::Ref<const Eigen::VectorXd>& rhs) const {
  if (rhs.size() != dim_)
    throw std::invalid_argument("HelmholtzSolver::solve: size mismatch");
  Eigen::VectorXd out(dim_);
  for (const Chain& ch : chains_) {
    const int len = static_cast<int>(ch.index.size());
    if (len == 0) continue;
    Eigen::VectorXd z(len);
    z(0) = rhs(ch.index[0]);
    for (int r = 1; r < len; ++r) z(r) = rhs(ch.index[r]) - ch.l(r - 1) * z(r - 1);
    for (int r = 0; r < len; ++r) z(r) /= ch.d(r);
    for (int r = len - 2; r >= 0; --r) z(r) -= ch.l(r) * z(r + 1);
    for (int r = 0; r < len; ++r) out(ch.index[r]) = z(r);
  }
  return out;
}

namespace {

// second-order difference quotient, one-sided at the interval ends
double numeric_derivative(const std::function<double(double)>& f, double x) {
  const double h = 1e-6;
  if (x + h > 1.0) return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
  if (x - h < -1.0) return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

Eigen::VectorXd project_h1(const SpaceFunction& psi, const SpectralSpace& space,
                           double alpha0) {
  if (!psi.f) throw std::invalid_argument("project_h1: missing function handle");
  if (std::abs(psi.f(-1.0)) > 1e-10 || std::abs(psi.f(1.0)) > 1e-10)
    throw std::invalid_argument("project_h1: target must vanish at x = +-1");

  const QuadratureRule& quad = space.quad();
  Eigen::VectorXd fv(quad.size()), dv(quad.size());
  for (int i = 0; i < quad.size(); ++i) {
    const double x = quad.nodes(i);
    fv(i) = psi.f(x);
    dv(i) = psi.df ? psi.df(x) : numeric_derivative(psi.f, x);
  }
  const Eigen::VectorXd rhs =
      space.basis_values().transpose() * quad.weights.cwiseProduct(fv) +
      alpha0 * (space.basis_derivatives().transpose() * quad.weights.cwiseProduct(dv));
  return HelmholtzSolver(space, alpha0).solve(rhs);
}

double l2_norm(const SpectralSpace& space,
               const Eigen::Ref<const Eigen::VectorXd>& coeffs) {
  return std::sqrt(std::max(0.0, coeffs.dot(space.mass() * coeffs)));
}

double h1_norm(const SpectralSpace& space,
               const Eigen::Ref<const Eigen::VectorXd>& coeffs, double alpha0) {
  const double m = coeffs.dot(space.mass() * coeffs);
  const double s = (space.stiffness().array() * coeffs.array().square()).sum();
  return std::sqrt(std::max(0.0, m + alpha0 * s));
}

Eigen::VectorXd synthesize(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                           const Eigen::Ref<const Eigen::VectorXd>& points) {
  const int n = static_cast<int>(coeffs.size());
  const int degree = n + 1;
  Eigen::VectorXd L(degree + 1);
  Eigen::VectorXd out(points.size());
  for (int p = 0; p < points.size(); ++p) {
    legendre_values(degree, points(p), L);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += coeffs(k) * (L(k) - L(k + 2));
    out(p) = acc;
  }
  return out;
}

Eigen::VectorXd synthesize_derivative(
    const Eigen::Ref<const Eigen::VectorXd>& coeffs,
    const Eigen::Ref<const Eigen::VectorXd>& points) {
  const int n = static_cast<int>(coeffs.size());
  const int degree = n + 1;
  Eigen::VectorXd L(degree + 1);
  Eigen::VectorXd out(points.size());
  for (int p = 0; p < points.size(); ++p) {
    legendre_values(degree, points(p), L);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc -= coeffs(k) * (2.0 * k + 3.0) * L(k + 1);
    out(p) = acc;
  }
  return out;
}

}  // namespace fractherm
