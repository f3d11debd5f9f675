#pragma once

#include <string>

#include "ultrafn/config.hpp"

namespace ultra {

/// Executes one subcommand (solve | minimize | sweep | check) against a
/// parsed config. Writes CSV/JSON outputs atomically (temp file + rename)
/// under cfg.out_dir; payloads are byte-identical across repeated runs.
/// Returns the process exit status.
int run(const ExperimentConfig& cfg, const std::string& command, unsigned seed = 1);

/// 17-significant-digit, locale-independent decimal rendering used in CSV.
std::string format_double(double v);

/// Writes content to path atomically (temp file in the same directory,
/// then rename).
void atomic_write(const std::string& path, const std::string& content);

}  // namespace ultra
