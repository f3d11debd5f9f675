#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>

#include "ultrafn/runner.hpp"

using ultra::ExperimentConfig;

namespace {

struct Overrides {
  std::string config_path;
  std::string out_dir;
  int threads = 1;
  unsigned seed = 1;

  int dim = 0;
  std::string family;
  std::vector<int> levels;
  std::vector<double> q;
  std::string rhs;
  std::string quantity;
  double exponent = -1.0;
  int grid = 0;
  double tol = 0.0;
  std::string csv, jsonfile;
};

ExperimentConfig build_config(const Overrides& o) {
  ExperimentConfig cfg;
  if (!o.config_path.empty()) cfg = ultra::parse_config_file(o.config_path);
  if (o.dim == 2 && cfg.domain.dim() == 1) cfg.domain = ultra::Domain::unit_square();
  if (!o.family.empty()) cfg.family = ultra::family_from_name(o.family);
  if (!o.levels.empty()) {
    cfg.levels = o.levels;
    for (std::size_t i = 1; i < cfg.levels.size(); ++i)
      if (cfg.levels[i] <= cfg.levels[i - 1])
        throw std::invalid_argument("--levels must be strictly increasing");
  }
  if (!o.q.empty()) {
    if (static_cast<int>(o.q.size()) != cfg.domain.dim())
      throw std::invalid_argument("--q coordinate count does not match the domain dimension");
    ultra::Point p;
    p.dim = cfg.domain.dim();
    for (int i = 0; i < p.dim; ++i) p[i] = o.q[static_cast<std::size_t>(i)];
    cfg.q = p;
  }
  if (!o.rhs.empty()) cfg.rhs = o.rhs;
  if (!o.quantity.empty()) cfg.quantity = ultra::quantity_from_name(o.quantity);
  if (o.exponent >= 0.0) cfg.exponent = o.exponent;
  if (o.grid > 0) cfg.search.grid = o.grid;
  if (o.tol > 0.0) cfg.search.tol = o.tol;
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (!o.csv.empty()) cfg.csv_name = o.csv;
  if (!o.jsonfile.empty()) cfg.json_name = o.jsonfile;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin level-chain experiments for the point-mass membrane problem"};
  app.require_subcommand(1);

  Overrides o;
  app.add_option("--config", o.config_path, "experiment config file");
  app.add_option("--out", o.out_dir, "output directory");
  app.add_option("--threads", o.threads, "worker thread cap");
  app.add_option("--seed", o.seed, "seed for the check harness");

  std::string command;
  for (const std::string name : {"solve", "minimize", "sweep", "check"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->fallthrough();  // let --out/--seed appear after the subcommand
    sub->add_option("--dim", o.dim, "domain dimension (unit interval/square)");
    sub->add_option("--family", o.family, "spectral-sine | fem-p1");
    sub->add_option("--level", o.levels, "level, or level schedule for sweep");
    sub->add_option("--q", o.q, "point coordinates");
    sub->add_option("--f", o.rhs, "rhs catalog entry: zero | one | eigenmode:k");
    sub->add_option("--quantity", o.quantity, "net quantity selector (sweep)");
    sub->add_option("--exponent", o.exponent, "near-boundary scaling exponent");
    sub->add_option("--grid", o.grid, "search grid points per axis");
    sub->add_option("--tol", o.tol, "refinement tolerance");
    sub->add_option("--csv", o.csv, "CSV output filename");
    sub->add_option("--json", o.jsonfile, "JSON output filename");
    sub->callback([&command, name] { command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return ultra::run(build_config(o), command, o.seed);
  } catch (const std::exception& e) {
    nlohmann::ordered_json err{{"error", e.what()}};
    std::cout << err.dump() << std::endl;
    return 1;
  }
}
