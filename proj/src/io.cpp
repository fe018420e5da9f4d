#include "fractherm/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fractherm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trajectory_csv(const RunRecord& record, const TimeGrid& grid) {
  std::ostringstream os;
  os << "k,t,l2_norm,h1_norm,picard_iters,picard_residual\n";
  for (size_t k = 0; k < record.trajectory.size(); ++k) {
    os << k << ',' << format_double(grid.time_at(static_cast<int>(k))) << ','
       << format_double(record.l2_norms[k]) << ','
       << format_double(record.h1_norms[k]) << ',' << record.picard_iters[k]
       << ',' << format_double(record.picard_residuals[k]) << '\n';
  }
  return os.str();
}

std::string solution_csv(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                         int points) {
  Eigen::VectorXd x(points);
  for (int i = 0; i < points; ++i)
    x(i) = -1.0 + 2.0 * i / (points - 1);
  const Eigen::VectorXd u = synthesize(coeffs, x);
  std::ostringstream os;
  os << "x,u\n";
  for (int i = 0; i < points; ++i)
    os << format_double(x(i)) << ',' << format_double(u(i)) << '\n';
  return os.str();
}

std::string study_csv(const ConvergenceStudy& study) {
  std::ostringstream os;
  os << "axis_value,error_h1,error_l2\n";
  for (const StudyPoint& p : study.points)
    os << format_double(p.axis) << ',' << format_double(p.error_h1) << ','
       << format_double(p.error_l2) << '\n';
  os << "fitted_order," << format_double(study.fitted_order) << ','
     << format_double(study.fitted_order_l2) << '\n';
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream body;
  body << in.rdbuf();
  const std::string s = body.str();
  return fnv1a64(s.data(), s.size());
}

void write_manifest(const std::string& path, const std::string& command,
                    const ConfigMap& resolved,
                    const std::vector<std::string>& output_paths,
                    const std::string& extra_json) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  j["created_utc"] = stamp;
  j["seed"] = nullptr;  // nothing randomized in the CLI paths

  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [key, value] : resolved) cfg[key] = value;
  j["config"] = cfg;

  nlohmann::json outs = nlohmann::json::array();
  for (const std::string& p : output_paths) {
    char digest[24];
    std::snprintf(digest, sizeof(digest), "0x%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(p)));
    outs.push_back({{"path", p}, {"fnv1a64", digest}});
  }
  j["outputs"] = outs;

  if (!extra_json.empty()) j["study"] = nlohmann::json::parse(extra_json);

  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace fractherm
