#include "ultrafn/netlab.hpp"

#include <cmath>
#include <stdexcept>

namespace ultra {

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::EnergyAtFixedQ: return "energy-at-fixed-q";
    case Quantity::MinEnergy: return "min-energy";
    case Quantity::MinimizerCoordinate: return "minimizer-coordinate";
    case Quantity::DeltaSelfEnergy: return "delta-self-energy";
    case Quantity::ElectrostaticAtFixedQ: return "electrostatic-at-fixed-q";
    case Quantity::ElectrostaticAtScaledQ: return "electrostatic-at-scaled-q";
  }
  return "?";
}

Quantity quantity_from_name(const std::string& name) {
  for (Quantity q : {Quantity::EnergyAtFixedQ, Quantity::MinEnergy, Quantity::MinimizerCoordinate,
                     Quantity::DeltaSelfEnergy, Quantity::ElectrostaticAtFixedQ,
                     Quantity::ElectrostaticAtScaledQ})
    if (quantity_name(q) == name) return q;
  throw std::invalid_argument("unknown quantity '" + name + "'");
}

std::string model_name(NetModel m) {
  switch (m) {
    case NetModel::Constant: return "constant";
    case NetModel::LogDivergent: return "log-divergent";
    case NetModel::PowerDivergent: return "power-divergent";
    case NetModel::Vanishing: return "vanishing";
  }
  return "?";
}

std::string class_name(NetClass c) {
  switch (c) {
    case NetClass::Infinitesimal: return "infinitesimal";
    case NetClass::Finite: return "finite";
    case NetClass::Infinite: return "infinite";
    case NetClass::Undetermined: return "undetermined";
  }
  return "?";
}

Point scaled_point(const Domain& d, double exponent, int n) {
  Point p = d.center();
  const double dist = 0.5 * d.length(0) * std::pow(static_cast<double>(n), -exponent);
  p[0] = d.lower(0) + dist;
  return p;
}

std::vector<NetSample> run_net(const Domain& d, const BasisFamily& f, const NetSpec& spec,
                               const std::vector<int>& levels) {
  if (levels.empty()) throw std::invalid_argument("run_net: empty level schedule");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1])
      throw std::invalid_argument("run_net: levels must be strictly increasing");

  const Point fixed_q = spec.fixed_q.value_or(d.center());
  std::vector<NetSample> out;
  out.reserve(levels.size());
  for (int lev : levels) {
    SpaceLevel s = SpaceLevel::build(d, f, lev, spec.max_n, spec.quad_override);
    double value = 0.0;
    switch (spec.quantity) {
      case Quantity::EnergyAtFixedQ:
        value = energy_at(s, fixed_q).total;
        break;
      case Quantity::MinEnergy:
        value = minimize(s, spec.search).f_min;
        break;
      case Quantity::MinimizerCoordinate:
        value = minimize(s, spec.search).q_min[spec.axis];
        break;
      case Quantity::DeltaSelfEnergy: {
        const Ultrafunction dq = delta_at(s, fixed_q);
        value = inner(dq, dq);
        break;
      }
      case Quantity::ElectrostaticAtFixedQ:
        value = energy_at(s, fixed_q).electrostatic;
        break;
      case Quantity::ElectrostaticAtScaledQ:
        value = energy_at(s, scaled_point(d, spec.exponent, s.size())).electrostatic;
        break;
    }
    out.push_back(NetSample{lev, s.size(), value});
  }
  return out;
}

namespace {

struct Candidate {
  NetModel model;
  double alpha = 0.0, beta = 0.0;
  double rsq = 0.0, rsq_adj = 0.0;
  int params = 1;
  bool valid = false;
};

double rsq_of(const std::vector<NetSample>& s, const std::vector<double>& pred) {
  double mean = 0.0;
  for (const auto& a : s) mean += a.value;
  mean /= static_cast<double>(s.size());
  double sstot = 0.0, ssres = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sstot += (s[i].value - mean) * (s[i].value - mean);
    ssres += (s[i].value - pred[i]) * (s[i].value - pred[i]);
  }
  if (sstot == 0.0) return ssres == 0.0 ? 1.0 : 0.0;
  return 1.0 - ssres / sstot;
}

double adjust(double rsq, std::size_t nsamp, int params) {
  const double denom = static_cast<double>(nsamp) - params - 1.0;
  if (denom <= 0.0) return rsq;
  return 1.0 - (1.0 - rsq) * (static_cast<double>(nsamp) - 1.0) / denom;
}

// OLS of y against x
void ols(const std::vector<double>& x, const std::vector<double>& y, double& slope,
         double& intercept) {
  const double nn = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = nn * sxx - sx * sx;
  slope = (nn * sxy - sx * sy) / det;
  intercept = (sy - slope * sx) / nn;
}

}  // namespace

NetFit fit_net(const std::vector<NetSample>& samples) {
  if (samples.size() < 4) throw std::invalid_argument("fit_net: need at least 4 samples");
  NetFit fit;
  fit.samples = samples;
  const std::size_t m = samples.size();

  double maxabs = 0.0;
  for (const auto& s : samples) maxabs = std::max(maxabs, std::abs(s.value));
  if (maxabs == 0.0) {
    // degenerate zero net: the boundary case
    fit.model = NetModel::Vanishing;
    fit.alpha = 0.0;
    fit.beta = 0.0;
    fit.rsq = 1.0;
    fit.classification = NetClass::Infinitesimal;
    return fit;
  }

  std::vector<double> lnn(m), val(m);
  for (std::size_t i = 0; i < m; ++i) {
    lnn[i] = std::log(static_cast<double>(samples[i].n));
    val[i] = samples[i].value;
  }

  std::vector<Candidate> cands;

  {  // constant: value = beta
    Candidate c{NetModel::Constant};
    c.params = 1;
    double mean = 0.0;
    for (double v : val) mean += v;
    c.beta = mean / static_cast<double>(m);
    std::vector<double> pred(m, c.beta);
    c.rsq = rsq_of(samples, pred);
    c.rsq_adj = c.rsq;  // no slope to reward
    c.valid = true;
    cands.push_back(c);
  }

  {  // log-divergent: value = alpha ln n + beta
    Candidate c{NetModel::LogDivergent};
    c.params = 2;
    ols(lnn, val, c.alpha, c.beta);
    std::vector<double> pred(m);
    for (std::size_t i = 0; i < m; ++i) pred[i] = c.alpha * lnn[i] + c.beta;
    c.rsq = rsq_of(samples, pred);
    c.rsq_adj = adjust(c.rsq, m, 2);
    c.valid = true;
    cands.push_back(c);
  }

  // power models value = beta * n^alpha: need one sign and no zeros
  bool same_sign = true;
  for (double v : val)
    if (v == 0.0 || v * val[0] < 0.0) same_sign = false;
  if (same_sign) {
    const double sign = val[0] > 0.0 ? 1.0 : -1.0;
    std::vector<double> lnv(m);
    for (std::size_t i = 0; i < m; ++i) lnv[i] = std::log(std::abs(val[i]));
    double p = 0.0, lc = 0.0;
    ols(lnn, lnv, p, lc);
    Candidate c{p >= 0.0 ? NetModel::PowerDivergent : NetModel::Vanishing};
    c.params = 2;
    c.alpha = p;
    c.beta = sign * std::exp(lc);
    std::vector<double> pred(m);
    for (std::size_t i = 0; i < m; ++i)
      pred[i] = c.beta * std::pow(static_cast<double>(samples[i].n), p);
    c.rsq = rsq_of(samples, pred);
    c.rsq_adj = adjust(c.rsq, m, 2);
    c.valid = true;
    cands.push_back(c);
  }

  const Candidate* best = &cands[0];
  for (const Candidate& c : cands)
    if (c.valid && c.rsq_adj > best->rsq_adj + 1e-12) best = &c;

  fit.model = best->model;
  fit.alpha = best->alpha;
  fit.beta = best->beta;
  fit.rsq = std::clamp(best->rsq, 0.0, 1.0);

  // growth classification
  const double first = std::abs(val.front()), last = std::abs(val.back());
  bool nonincreasing = true;
  for (std::size_t i = 1; i < m; ++i)
    if (std::abs(val[i]) > std::abs(val[i - 1]) * (1.0 + 1e-12)) nonincreasing = false;

  double w_lo = val[m - 3], w_hi = val[m - 3];
  for (std::size_t i = m - 3; i < m; ++i) {
    w_lo = std::min(w_lo, val[i]);
    w_hi = std::max(w_hi, val[i]);
  }
  const double spread = (w_hi - w_lo) / std::max(last, 1e-300);

  const bool divergent_model =
      best->model == NetModel::PowerDivergent ||
      (best->model == NetModel::LogDivergent && last > first);

  if (last <= kInfinitesimalTol && nonincreasing) {
    fit.classification = NetClass::Infinitesimal;
  } else if (spread <= kFiniteSpreadTol) {
    fit.classification = NetClass::Finite;
    // converged net: report the settled value, not a divergent extrapolation
    fit.model = NetModel::Constant;
    fit.alpha = 0.0;
    fit.beta = (val[m - 3] + val[m - 2] + val[m - 1]) / 3.0;
  } else if (divergent_model && fit.rsq >= kInfiniteRsq && last >= kInfiniteGrowth * first) {
    fit.classification = NetClass::Infinite;
  } else {
    fit.classification = NetClass::Undetermined;
  }
  return fit;
}

NetFit near_boundary_study(const Domain& d, const BasisFamily& f, double exponent,
                           const std::vector<int>& levels, const NetSpec& base) {
  if (exponent < 0.0) throw std::invalid_argument("near_boundary_study: exponent must be >= 0");
  NetSpec spec = base;
  spec.quantity = Quantity::ElectrostaticAtScaledQ;
  spec.exponent = exponent;
  return fit_net(run_net(d, f, spec, levels));
}

}  // namespace ultra
