// Command-line front door: solve | convergence | check.  All numerics live
// in the library; this file only wires configuration, orchestration, and
// persistence together.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fractherm/config.hpp"
#include "fractherm/io.hpp"
#include "fractherm/stepper.hpp"
#include "fractherm/study.hpp"

namespace fs = std::filesystem;
using namespace fractherm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitHypotheses = 3;
constexpr int kExitNonconvergence = 4;
constexpr int kExitStudyPoint = 5;

void print_report(const std::string& id, const HypothesisReport& r) {
  std::printf("  %-14s min %-12.6g Lipschitz %-12.6g %s%s\n", id.c_str(),
              r.min_value, r.lipschitz_estimate, r.pass() ? "pass" : "FAIL",
              r.metadata_checked ? "" : " [unchecked metadata]");
}

int cmd_solve(const std::string& config_path, const std::string& out_dir) {
  ConfigMap raw;
  ProblemConfig cfg;
  try {
    raw = read_config_file(config_path);
    cfg = make_problem_config(raw);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  // standing hypotheses: conductivity sweep plus the initial-data screen
  const Conductivity& cond = find_conductivity(cfg.conductivity);
  const HypothesisReport report = hypothesis_check(cond, -10.0, 10.0, 2001);
  if (!report.pass()) {
    std::cerr << "hypothesis check failed for conductivity '" << cfg.conductivity
              << "' (min " << report.min_value << ")\n";
    return kExitHypotheses;
  }
  try {
    check_initial_condition(cfg.initial, SpectralSpace(cfg.degree).quad());
  } catch (const std::invalid_argument& e) {
    std::cerr << "hypothesis check failed for u0: " << e.what() << "\n";
    return kExitHypotheses;
  }

  RunRecord record;
  try {
    record = run(cfg);
  } catch (const PicardFailure& e) {
    std::cerr << e.what() << "\n  residual history:";
    for (double r : e.residuals) std::cerr << ' ' << r;
    std::cerr << "\n";
    return kExitNonconvergence;
  }

  fs::create_directories(out_dir);
  const std::string traj = (fs::path(out_dir) / "trajectory.csv").string();
  const std::string sol = (fs::path(out_dir) / "solution_final.csv").string();
  write_text_file(traj, trajectory_csv(record, cfg.grid));
  write_text_file(sol, solution_csv(record.trajectory.back(), 201));
  write_manifest((fs::path(out_dir) / "manifest.json").string(), "solve",
                 resolved_config(raw), {traj, sol});
  std::printf("solve: %d steps, final l2 %.6g, outputs in %s\n", cfg.grid.steps,
              record.l2_norms.back(), out_dir.c_str());
  return kExitOk;
}

int cmd_convergence(const std::string& config_path, const std::string& axis,
                    const std::string& values, const std::string& out_dir,
                    int jobs) {
  ConfigMap raw;
  ProblemConfig cfg;
  try {
    raw = read_config_file(config_path);
    cfg = make_problem_config(raw);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  std::vector<double> list;
  std::stringstream ss(values);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      list.push_back(std::stod(item));
    } catch (const std::exception&) {
      std::cerr << "config error: key '--values': '" << item << "' is not a number\n";
      return kExitConfig;
    }
  }
  if (list.size() < 3) {
    std::cerr << "config error: key '--values': need at least 3 values\n";
    return kExitConfig;
  }

  // studies measure against a manufactured solution: quadratic-in-time to
  // expose the temporal order, linear-in-time (time-exact stepping) to
  // isolate the spatial error
  ConvergenceStudy study;
  try {
    if (axis == "time") {
      study = temporal_order_study(cfg, mms_preset("t2_sinpi"), list, jobs);
    } else if (axis == "space") {
      std::vector<int> degrees;
      for (double v : list) degrees.push_back(static_cast<int>(v));
      study = spatial_study(cfg, mms_preset("linear_sinpi"), degrees, jobs);
    } else {
      std::cerr << "config error: key '--axis': expected time | space\n";
      return kExitConfig;
    }
  } catch (const PicardFailure& e) {
    std::cerr << "study point failed: " << e.what() << "\n";
    return kExitStudyPoint;
  } catch (const std::exception& e) {
    std::cerr << "study failed: " << e.what() << "\n";
    return kExitStudyPoint;
  }

  fs::create_directories(out_dir);
  const std::string csv = (fs::path(out_dir) / "study.csv").string();
  write_text_file(csv, study_csv(study));
  std::ostringstream extra;
  extra << "{\"axis\":\"" << axis << "\",\"fitted_order\":"
        << format_double(study.fitted_order) << ",\"floor\":"
        << format_double(study.floor_estimate) << "}";
  write_manifest((fs::path(out_dir) / "manifest.json").string(), "convergence",
                 resolved_config(raw), {csv}, extra.str());
  std::printf("fitted order (%s axis): %.4f\n", axis.c_str(), study.fitted_order);
  return kExitOk;
}

int run_suite(const char* title, const std::vector<CheckLine>& lines, bool& all_ok) {
  std::printf("%s\n", title);
  for (const CheckLine& line : lines) {
    std::printf("  %-52s %s  %s\n", line.name.c_str(),
                line.pass ? "pass" : "FAIL", line.detail.c_str());
    all_ok = all_ok && line.pass;
  }
  return 0;
}

int cmd_check(bool caputo, bool hypotheses, bool matrices) {
  const bool all = !(caputo || hypotheses || matrices);
  bool ok = true;
  if (caputo || all) run_suite("caputo / L1 truncation", check_caputo(), ok);
  if (matrices || all) run_suite("matrix assembly", check_matrices(), ok);
  if (hypotheses || all) {
    std::printf("conductivity hypotheses\n");
    bool suite_ok = true;
    for (const CheckLine& line : check_hypotheses()) {
      std::printf("  %-52s %s  %s\n", line.name.c_str(),
                  line.pass ? "pass" : "FAIL", line.detail.c_str());
      suite_ok = suite_ok && line.pass;
    }
    for (const std::string& id : conductivity_ids())
      print_report(id, hypothesis_check(find_conductivity(id), -10.0, 10.0, 2001));
    ok = ok && suite_ok;
  }
  std::printf("%s\n", ok ? "all checks passed" : "CHECKS FAILED");
  return ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L1 / Legendre-Galerkin solver for the nonlocal fractional "
               "thermistor problem"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", axis = "time", values;
  int jobs = 1;

  CLI::App* solve = app.add_subcommand("solve", "march a configured problem");
  solve->add_option("-c,--config", config_path, "config file")->required();
  solve->add_option("-o,--out", out_dir, "output directory");

  CLI::App* conv = app.add_subcommand("convergence", "run an order study");
  conv->add_option("-c,--config", config_path, "config file")->required();
  conv->add_option("--axis", axis, "time | space")->required();
  conv->add_option("--values", values, "comma-separated delta or N list")->required();
  conv->add_option("-o,--out", out_dir, "output directory");
  conv->add_option("--jobs", jobs, "parallel study points");

  bool caputo = false, hypotheses = false, matrices = false;
  CLI::App* check = app.add_subcommand("check", "self-check suites");
  check->add_flag("--caputo", caputo, "Caputo oracle and L1 truncation order");
  check->add_flag("--hypotheses", hypotheses, "conductivity hypothesis sweep");
  check->add_flag("--matrices", matrices, "closed-form vs quadrature assembly");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitConfig : kExitOk;
  }

  try {
    if (solve->parsed()) return cmd_solve(config_path, out_dir);
    if (conv->parsed()) return cmd_convergence(config_path, axis, values, out_dir, jobs);
    return cmd_check(caputo, hypotheses, matrices);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
