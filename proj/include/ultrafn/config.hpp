#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ultrafn/netlab.hpp"

namespace ultra {

/// Parsed experiment configuration (sections [domain], [basis], [run],
/// [output] of the flat key-value format).
struct ExperimentConfig {
  Domain domain = Domain::unit_interval();
  FamilyKind family = FamilyKind::SpectralSine;
  std::vector<int> levels{1};
  int quadrature = 0;  // 0 = family default

  std::optional<Quantity> quantity;
  std::optional<Point> q;
  std::string rhs = "zero";  // zero | one | eigenmode:k
  double exponent = 0.0;
  SearchOptions search;
  int max_n = SpaceLevel::kDefaultMaxN;

  std::string out_dir = "out";
  std::string csv_name;
  std::string json_name;
};

/// Parses the documented schema. Unknown keys are errors with a
/// line-anchored message and a nearest-key suggestion.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig parse_config_file(const std::string& path);

}  // namespace ultra
