#include "fractherm/study.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "fractherm/legendre.hpp"

namespace fractherm {

double fit_order(const Eigen::Ref<const Eigen::VectorXd>& xs,
                 const Eigen::Ref<const Eigen::VectorXd>& errors, FitMode mode) {
  if (xs.size() != errors.size() || xs.size() < 3)
    throw std::invalid_argument("fit_order: need >= 3 matching points");
  if ((errors.array() <= 0.0).any())
    throw std::invalid_argument("fit_order: errors must be positive");
  Eigen::VectorXd a(xs.size());
  if (mode == FitMode::loglog) {
    if ((xs.array() <= 0.0).any())
      throw std::invalid_argument("fit_order: log-log axis must be positive");
    a = xs.array().log();
  } else {
    a = xs;
  }
  const Eigen::VectorXd b = errors.array().log();
  const double am = a.mean(), bm = b.mean();
  const double sxx = (a.array() - am).square().sum();
  if (sxx < 1e-300) throw std::invalid_argument("fit_order: degenerate axis");
  return (a.array() - am).cwiseProduct(b.array() - bm).sum() / sxx;
}

ErrorNorms continuum_error(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                           const ManufacturedSolution& exact, double t,
                           double alpha0, int ref_points) {
  const QuadratureRule ref = lgl_rule(ref_points);
  const Eigen::VectorXd uh = synthesize(coeffs, ref.nodes);
  const Eigen::VectorXd duh = synthesize_derivative(coeffs, ref.nodes);
  const double wt = exact.w.f(t);
  double e0 = 0.0, e1 = 0.0;
  for (int i = 0; i < ref.size(); ++i) {
    const double x = ref.nodes(i);
    const double ev = wt * exact.phi.f(x) - uh(i);
    const double ed = wt * exact.phi.df(x) - duh(i);
    e0 += ref.weights(i) * ev * ev;
    e1 += ref.weights(i) * ed * ed;
  }
  ErrorNorms out;
  out.l2 = std::sqrt(e0);
  out.h1 = std::sqrt(e0 + alpha0 * e1);
  out.h1_std = std::sqrt(e0 + e1);
  return out;
}

namespace {

// Runs worker(i) for i = 0..count-1 on up to `jobs` threads; results land in
// pre-sized slots, so the output order never depends on scheduling.
void run_indexed(int count, int jobs, const std::function<void(int)>& worker) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) worker(i);
    return;
  }
  std::atomic<int> cursor{0};
  std::vector<std::thread> pool;
  const int threads = std::min(jobs, count);
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1))
          worker(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

ConvergenceStudy finish_study(std::vector<StudyPoint> points, FitMode mode) {
  ConvergenceStudy study;
  study.points = std::move(points);
  study.mode = mode;
  const int n = static_cast<int>(study.points.size());
  Eigen::VectorXd axis(n), eh1(n), el2(n);
  study.floor_estimate = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    axis(i) = study.points[i].axis;
    eh1(i) = study.points[i].error_h1;
    el2(i) = study.points[i].error_l2;
    study.floor_estimate = std::min(study.floor_estimate, eh1(i));
  }
  study.fitted_order = fit_order(axis, eh1, mode);
  study.fitted_order_l2 = fit_order(axis, el2, mode);
  return study;
}

}  // namespace

ConvergenceStudy temporal_order_study(const ProblemConfig& base,
                                      const ManufacturedSolution& exact,
                                      const std::vector<double>& deltas,
                                      int jobs) {
  if (deltas.size() < 3)
    throw std::invalid_argument("temporal_order_study: need >= 3 step sizes");
  const double T = base.grid.horizon;
  std::vector<StudyPoint> points(deltas.size());
  run_indexed(static_cast<int>(deltas.size()), jobs, [&](int i) {
    const int K = static_cast<int>(std::llround(T / deltas[i]));
    ProblemConfig cfg = base;
    cfg.grid = TimeGrid(T, K);
    cfg.initial = manufactured_initial(exact);
    cfg.source = manufactured_source(exact, find_conductivity(cfg.conductivity),
                                     cfg.lambda, cfg.alpha.value());
    const RunRecord record = run(cfg);
    const double alpha0 =
        std::tgamma(2.0 - cfg.alpha.value()) * std::pow(cfg.grid.delta, cfg.alpha.value());
    const ErrorNorms err = continuum_error(record.trajectory.back(), exact, T,
                                           alpha0, 4 * cfg.degree);
    StudyPoint& p = points[i];
    p.axis = cfg.grid.delta;
    p.error_h1 = err.h1;
    p.error_l2 = err.l2;
    p.error_h1_std = err.h1_std;
    for (int it : record.picard_iters) p.max_picard_iters = std::max(p.max_picard_iters, it);
  });
  return finish_study(std::move(points), FitMode::loglog);
}

ConvergenceStudy spatial_study(const ProblemConfig& base,
                               const ManufacturedSolution& exact,
                               const std::vector<int>& degrees, int jobs) {
  if (degrees.size() < 3)
    throw std::invalid_argument("spatial_study: need >= 3 degrees");
  const double T = base.grid.horizon;
  std::vector<StudyPoint> points(degrees.size());
  run_indexed(static_cast<int>(degrees.size()), jobs, [&](int i) {
    ProblemConfig cfg = base;
    cfg.degree = degrees[i];
    cfg.initial = manufactured_initial(exact);
    cfg.source = manufactured_source(exact, find_conductivity(cfg.conductivity),
                                     cfg.lambda, cfg.alpha.value());
    const RunRecord record = run(cfg);
    const double alpha0 =
        std::tgamma(2.0 - cfg.alpha.value()) * std::pow(cfg.grid.delta, cfg.alpha.value());
    const ErrorNorms err = continuum_error(record.trajectory.back(), exact, T,
                                           alpha0, 4 * cfg.degree);
    StudyPoint& p = points[i];
    p.axis = degrees[i];
    p.error_h1 = err.h1;
    p.error_l2 = err.l2;
    p.error_h1_std = err.h1_std;
    for (int it : record.picard_iters) p.max_picard_iters = std::max(p.max_picard_iters, it);
  });
  return finish_study(std::move(points), FitMode::semilog);
}

RunRecord backward_euler_reference(const ProblemConfig& config) {
  SpectralSpace space(config.degree);
  const double dt = config.grid.delta;
  HelmholtzSolver solver(space, dt);
  const Conductivity& cond = find_conductivity(config.conductivity);
  check_initial_condition(config.initial, space.quad());

  RunRecord record;
  auto push = [&](const Eigen::VectorXd& c, int iters, double resid) {
    record.trajectory.push_back(c);
    record.picard_iters.push_back(iters);
    record.picard_residuals.push_back(resid);
    record.l2_norms.push_back(l2_norm(space, c));
    record.h1_norms.push_back(h1_norm(space, c, dt));
  };
  push(project_h1(config.initial, space, dt), 0, 0.0);

  for (int k = 0; k < config.grid.steps; ++k) {
    const double t_next = config.grid.time_at(k + 1);
    Eigen::VectorXd rhs = space.mass() * record.trajectory.back();
    if (config.source)
      rhs += dt * space.load_vector([&](double x) { return config.source(x, t_next); });

    Eigen::VectorXd next;
    int iters = 1;
    double residual = 0.0;
    if (config.lambda == 0.0) {
      next = solver.solve(rhs);
    } else {
      Eigen::VectorXd cur = record.trajectory.back();
      std::vector<double> history;
      bool converged = false;
      for (int m = 1; m <= config.picard.max_iter; ++m) {
        next = solver.solve(rhs + nonlocal_load(cur, cond, config.lambda, dt, space));
        residual = (next - cur).lpNorm<Eigen::Infinity>();
        history.push_back(residual);
        cur = next;
        if (residual <= config.picard.tol) {
          iters = m;
          converged = true;
          break;
        }
      }
      if (!converged) throw PicardFailure(k + 1, std::move(history), record);
    }
    push(next, iters, residual);
  }
  return record;
}

Eigen::MatrixXd quadrature_assembled_mass(int degree, const QuadratureRule& rule) {
  const int n = degree - 1;
  Eigen::MatrixXd phi(rule.size(), n);
  Eigen::VectorXd L(degree + 1);
  for (int i = 0; i < rule.size(); ++i) {
    legendre_values(degree, rule.nodes(i), L);
    for (int k = 0; k < n; ++k) phi(i, k) = L(k) - L(k + 2);
  }
  return phi.transpose() * rule.weights.asDiagonal() * phi;
}

Eigen::MatrixXd quadrature_assembled_stiffness(int degree, const QuadratureRule& rule) {
  const int n = degree - 1;
  Eigen::MatrixXd dphi(rule.size(), n);
  Eigen::VectorXd D(degree + 1);
  for (int i = 0; i < rule.size(); ++i) {
    legendre_derivatives(degree, rule.nodes(i), D);
    for (int k = 0; k < n; ++k) dphi(i, k) = D(k) - D(k + 2);
  }
  return dphi.transpose() * rule.weights.asDiagonal() * dphi;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::vector<CheckLine> check_caputo() {
  std::vector<CheckLine> lines;
  // oracle against closed forms
  for (int p : {1, 2, 3}) {
    const TimeFunction u = tf_monomial(p);
    double worst = 0.0;
    for (double alpha : {0.3, 0.5, 0.7}) {
      const TimeFunction raw{u.f, u.df, nullptr};  // force the quadrature path
      const double got = caputo_oracle(raw, alpha, 1.0, 1e-12);
      const double want = u.caputo(alpha, 1.0);
      worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
    lines.push_back({"caputo oracle vs closed form t^" + std::to_string(p),
                     worst < 1e-10, worst, "max rel err " + fmt(worst)});
  }
  // L1 truncation order against the oracle
  for (double alpha : {0.3, 0.5, 0.7}) {
    const TimeFunction u = tf_monomial(3);
    const double exact = u.caputo(alpha, 1.0);
    Eigen::VectorXd ds(5), errs(5);
    for (int m = 0; m < 5; ++m) {
      const int K = 1 << (m + 3);
      const TimeGrid grid(1.0, K);
      const L1Weights w = compute_weights(FractionalOrder(alpha), grid);
      Eigen::VectorXd samples(K + 1);
      for (int j = 0; j <= K; ++j) samples(j) = u.f(grid.time_at(j));
      ds(m) = grid.delta;
      errs(m) = std::abs(l1_caputo_apply(samples, w) - exact);
    }
    const double slope = fit_order(ds, errs, FitMode::loglog);
    const double target = 2.0 - alpha;
    lines.push_back({"L1 truncation order, alpha = " + fmt(alpha),
                     std::abs(slope - target) <= 0.1, slope,
                     "fitted " + fmt(slope) + ", target " + fmt(target)});
  }
  return lines;
}

std::vector<CheckLine> check_matrices() {
  std::vector<CheckLine> lines;
  for (int degree : {4, 8, 16, 32, 64}) {
    const SpectralSpace space(degree);
    const Eigen::MatrixXd mq = quadrature_assembled_mass(degree, space.quad());
    const Eigen::MatrixXd sq = quadrature_assembled_stiffness(degree, space.quad());
    const double dm = (mq - space.mass()).cwiseAbs().maxCoeff();
    const double ds =
        (sq - Eigen::MatrixXd(space.stiffness().asDiagonal())).cwiseAbs().maxCoeff();
    const double worst = std::max(dm, ds);
    lines.push_back({"closed-form vs quadrature assembly, N = " + std::to_string(degree),
                     worst < 1e-12, worst, "max abs diff " + fmt(worst)});
  }
  return lines;
}

std::vector<CheckLine> check_hypotheses() {
  std::vector<CheckLine> lines;
  for (const std::string& id : conductivity_ids()) {
    const Conductivity& cond = find_conductivity(id);
    const HypothesisReport report = hypothesis_check(cond, -10.0, 10.0, 2001);
    const bool expected_fail = id == "linear_unsafe";
    lines.push_back({"hypotheses for '" + id + "'",
                     report.pass() != expected_fail, report.min_value,
                     "min " + fmt(report.min_value) + ", Lipschitz " +
                         fmt(report.lipschitz_estimate) +
                         (report.metadata_checked ? "" : " [unchecked]") +
                         (expected_fail ? " (expected to violate positivity)" : "")});
  }
  return lines;
}

}  // namespace fractherm
