#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ultrafn/energy.hpp"

namespace ultra {

enum class Quantity {
  EnergyAtFixedQ,
  MinEnergy,
  MinimizerCoordinate,
  DeltaSelfEnergy,
  ElectrostaticAtFixedQ,
  ElectrostaticAtScaledQ,
};

std::string quantity_name(Quantity q);
Quantity quantity_from_name(const std::string& name);

struct NetSample {
  int level = 0;
  int n = 0;       // space dimension at that level
  double value = 0.0;
};

enum class NetModel { Constant, LogDivergent, PowerDivergent, Vanishing };
enum class NetClass { Infinitesimal, Finite, Infinite, Undetermined };

std::string model_name(NetModel m);
std::string class_name(NetClass c);

/// Fitted asymptotic behavior of a scalar net along the level chain.
/// alpha is the slope against ln n for the log model and the log-log slope
/// for the power models; beta is the intercept (log model) or the limit
/// value (constant/vanishing).
struct NetFit {
  std::vector<NetSample> samples;
  NetModel model = NetModel::Constant;
  double alpha = 0.0;
  double beta = 0.0;
  double rsq = 0.0;
  NetClass classification = NetClass::Undetermined;
};

struct NetSpec {
  Quantity quantity = Quantity::EnergyAtFixedQ;
  std::optional<Point> fixed_q;  // for the fixed-q quantities
  int axis = 0;                  // for MinimizerCoordinate
  double exponent = 0.0;         // for ElectrostaticAtScaledQ
  SearchOptions search;
  int max_n = SpaceLevel::kDefaultMaxN;
  int quad_override = 0;
};

/// Scaled placement for the near-boundary study: distance
/// half-extent * n^{-exponent} from the midpoint of the lower face of
/// axis 0 (exponent 0 places q at the domain center of that axis).
Point scaled_point(const Domain& d, double exponent, int n);

/// Samples the selected scalar quantity at each level of the chain.
std::vector<NetSample> run_net(const Domain& d, const BasisFamily& f, const NetSpec& spec,
                               const std::vector<int>& levels);

/// Least-squares fit of the sampled net against the candidate asymptotic
/// models, plus the growth classification.
NetFit fit_net(const std::vector<NetSample>& samples);

/// Electrostatic energy at points approaching the boundary with the given
/// scaling exponent, fitted and classified.
NetFit near_boundary_study(const Domain& d, const BasisFamily& f, double exponent,
                           const std::vector<int>& levels, const NetSpec& base = {});

// classification thresholds
inline constexpr double kFiniteSpreadTol = 1e-3;
inline constexpr double kInfiniteRsq = 0.99;
inline constexpr double kInfiniteGrowth = 1.10;
inline constexpr double kInfinitesimalTol = 1e-6;

}  // namespace ultra
