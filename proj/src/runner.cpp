#include "ultrafn/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace ultra {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    f << content;
    if (!f.good()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

namespace {

fs::path out_path(const ExperimentConfig& cfg, const std::string& name) {
  return fs::path(cfg.out_dir) / name;
}

json level_json(const SpaceLevel& s) {
  return json{{"family", family_name(s.kind())},
              {"resolution", s.resolution()},
              {"n", s.size()}};
}

json point_json(const Point& p) {
  json a = json::array();
  for (int i = 0; i < p.dim; ++i) a.push_back(p[i]);
  return a;
}

// rhs catalog: zero | one | eigenmode:k
std::function<double(const Point&)> make_rhs(const SpaceLevel& s, const std::string& name) {
  if (name == "zero") return [](const Point&) { return 0.0; };
  if (name == "one") return [](const Point&) { return 1.0; };
  if (name.rfind("eigenmode:", 0) == 0) {
    const int k = std::stoi(name.substr(10));
    if (k < 1 || k > s.size())
      throw std::invalid_argument("eigenmode index out of range: " + name);
    return [s, k](const Point& p) { return s.eval_basis(p)[k - 1]; };
  }
  throw std::invalid_argument("unknown rhs '" + name + "' (zero | one | eigenmode:k)");
}

std::vector<Point> sample_grid(const Domain& d, int per_axis) {
  std::vector<Point> pts;
  if (d.dim() == 1) {
    for (int i = 0; i < per_axis; ++i)
      pts.emplace_back(d.lower(0) + d.length(0) * i / (per_axis - 1));
  } else {
    for (int i = 0; i < per_axis; ++i)
      for (int j = 0; j < per_axis; ++j)
        pts.emplace_back(d.lower(0) + d.length(0) * i / (per_axis - 1),
                         d.lower(1) + d.length(1) * j / (per_axis - 1));
  }
  return pts;
}

std::string field_csv(const Domain& d, const std::vector<Point>& pts,
                      const std::vector<double>& vals, const std::string& value_col) {
  std::ostringstream os;
  os << (d.dim() == 1 ? "x" : "x,y") << "," << value_col << "\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    os << format_double(pts[i][0]);
    if (d.dim() == 2) os << "," << format_double(pts[i][1]);
    os << "," << format_double(vals[i]) << "\n";
  }
  return os.str();
}

int run_solve(const ExperimentConfig& cfg) {
  SpaceLevel s = SpaceLevel::build(cfg.domain, BasisFamily{cfg.family}, cfg.levels.front(),
                                   cfg.max_n, cfg.quadrature);
  DirichletSolution sol =
      cfg.q ? solve_point_source(s, *cfg.q) : solve_poisson(s, make_rhs(s, cfg.rhs));

  const int per_axis = cfg.domain.dim() == 1 ? 201 : 41;
  const std::vector<Point> pts = sample_grid(cfg.domain, per_axis);
  std::vector<double> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = sol.u.evaluate(pts[i]);

  json summary{{"command", "solve"},
               {"level", level_json(s)},
               {"elastic", sol.elastic},
               {"residual", sol.residual}};
  if (cfg.q) {
    summary["q"] = point_json(*cfg.q);
    summary["point_value"] = sol.point_value;
    summary["total"] = sol.elastic + sol.point_value;
  } else {
    summary["f"] = cfg.rhs;
  }

  atomic_write(out_path(cfg, cfg.csv_name.empty() ? "solve.csv" : cfg.csv_name).string(),
               field_csv(cfg.domain, pts, vals, "u"));
  atomic_write(out_path(cfg, cfg.json_name.empty() ? "solve.json" : cfg.json_name).string(),
               summary.dump(2) + "\n");
  return 0;
}

int run_minimize(const ExperimentConfig& cfg) {
  SpaceLevel s = SpaceLevel::build(cfg.domain, BasisFamily{cfg.family}, cfg.levels.front(),
                                   cfg.max_n, cfg.quadrature);
  const MinimizerResult r = minimize(s, cfg.search);

  json ties = json::array();
  for (const Point& p : r.ties) ties.push_back(point_json(p));
  json summary{{"command", "minimize"}, {"level", level_json(s)},
               {"q_min", point_json(r.q_min)}, {"F_min", r.f_min},
               {"grid", r.grid},             {"refine_iters", r.refine_iters},
               {"ties", ties}};

  if (!cfg.csv_name.empty()) {
    // full grid scan for plotting
    const std::vector<Point> pts = sample_grid(cfg.domain, r.grid);
    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = energy_at(s, pts[i]).total;
    atomic_write(out_path(cfg, cfg.csv_name).string(), field_csv(cfg.domain, pts, vals, "F"));
  }
  atomic_write(out_path(cfg, cfg.json_name.empty() ? "minimize.json" : cfg.json_name).string(),
               summary.dump(2) + "\n");
  return 0;
}

int run_sweep(const ExperimentConfig& cfg) {
  if (!cfg.quantity) throw std::invalid_argument("sweep requires a quantity");
  NetSpec spec;
  spec.quantity = *cfg.quantity;
  spec.fixed_q = cfg.q;
  spec.exponent = cfg.exponent;
  spec.search = cfg.search;
  spec.max_n = cfg.max_n;
  spec.quad_override = cfg.quadrature;

  const std::vector<NetSample> samples =
      run_net(cfg.domain, BasisFamily{cfg.family}, spec, cfg.levels);
  const NetFit fit = fit_net(samples);

  std::ostringstream csv;
  csv << "level,n,value\n";
  for (const NetSample& s : samples)
    csv << s.level << "," << s.n << "," << format_double(s.value) << "\n";

  json summary{{"command", "sweep"},
               {"quantity", quantity_name(spec.quantity)},
               {"family", family_name(cfg.family)},
               {"model", model_name(fit.model)},
               {"alpha", fit.alpha},
               {"beta", fit.beta},
               {"rsq", fit.rsq},
               {"classification", class_name(fit.classification)}};
  if (spec.quantity == Quantity::ElectrostaticAtScaledQ) summary["exponent"] = spec.exponent;

  atomic_write(out_path(cfg, cfg.csv_name.empty() ? "sweep.csv" : cfg.csv_name).string(),
               csv.str());
  atomic_write(out_path(cfg, cfg.json_name.empty() ? "sweep.json" : cfg.json_name).string(),
               summary.dump(2) + "\n");
  return 0;
}

// invariant harness behind the `check` subcommand
int run_check(const ExperimentConfig& cfg, unsigned seed) {
  SpaceLevel s = SpaceLevel::build(cfg.domain, BasisFamily{cfg.family}, cfg.levels.front(),
                                   cfg.max_n, cfg.quadrature);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Domain& d = cfg.domain;

  auto random_point = [&]() {
    Point p;
    p.dim = d.dim();
    for (int ax = 0; ax < d.dim(); ++ax)
      p[ax] = d.lower(ax) + d.length(ax) * unit(rng);
    return p;
  };
  auto random_member = [&]() {
    Eigen::VectorXd c(s.size());
    for (int i = 0; i < s.size(); ++i) c[i] = gauss(rng);
    return Ultrafunction(s, c);
  };

  int pass = 0, failcount = 0;
  auto record = [&](bool ok) { ok ? ++pass : ++failcount; };

  // reproducing property
  for (int t = 0; t < 100; ++t) {
    const Point q = random_point();
    const Ultrafunction v = random_member();
    const Ultrafunction dq = delta_at(s, q);
    record(std::abs(inner(dq, v) - v.evaluate(q)) <= 1e-10 * (1.0 + v.norm()));
  }
  // projection optimality: the projection gap is gram-orthogonal to the span
  for (int t = 0; t < 50; ++t) {
    const Ultrafunction f = random_member();
    const Ultrafunction v = random_member();
    const Ultrafunction pf = project(s, [&](const Point& p) { return f.evaluate(p); });
    record(std::abs(inner(pf, v) - inner(f, v)) <= 1e-8 * (1.0 + f.norm() * v.norm()));
    record((pf.coeffs - f.coeffs).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + f.coeffs.norm()));
  }

  json summary{{"command", "check"}, {"level", level_json(s)},
               {"seed", seed},       {"pass", pass},
               {"fail", failcount}};
  atomic_write(out_path(cfg, cfg.json_name.empty() ? "check.json" : cfg.json_name).string(),
               summary.dump(2) + "\n");
  std::cout << "check: " << pass << " passed, " << failcount << " failed" << std::endl;
  return failcount == 0 ? 0 : 1;
}

}  // namespace

int run(const ExperimentConfig& cfg, const std::string& command, unsigned seed) {
  if (command == "solve") return run_solve(cfg);
  if (command == "minimize") return run_minimize(cfg);
  if (command == "sweep") return run_sweep(cfg);
  if (command == "check") return run_check(cfg, seed);
  throw std::invalid_argument("unknown command '" + command + "'");
}

}  // namespace ultra
