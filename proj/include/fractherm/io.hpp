#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fractherm/config.hpp"
#include "fractherm/stepper.hpp"
#include "fractherm/study.hpp"

namespace fractherm {

inline constexpr const char* kToolName = "fractherm";
inline constexpr const char* kToolVersion = "0.1.0";

/// Full-precision, locale-independent rendering (17 significant digits).
std::string format_double(double v);

std::string trajectory_csv(const RunRecord& record, const TimeGrid& grid);

/// x,u at `points` uniform abscissae across [-1, 1] (callers use 201).
std::string solution_csv(const Eigen::Ref<const Eigen::VectorXd>& coeffs,
                         int points);

std::string study_csv(const ConvergenceStudy& study);

void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit digest of a file's bytes, for manifest tamper checks.
std::uint64_t fnv1a64_file(const std::string& path);
std::uint64_t fnv1a64(const void* data, std::size_t size);

/// Writes manifest.json next to the outputs: resolved config, tool version,
/// UTC timestamp, per-output checksums.  `extra` carries command-specific
/// fields (axis, values, fitted order) as preformatted JSON object content.
void write_manifest(const std::string& path, const std::string& command,
                    const ConfigMap& resolved,
                    const std::vector<std::string>& output_paths,
                    const std::string& extra_json = "");

}  // namespace fractherm
