#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ultrafn/config.hpp"
#include "ultrafn/runner.hpp"

namespace py = pybind11;
using namespace ultra;

namespace {

Point as_point(const std::vector<double>& coords) {
  if (coords.empty() || coords.size() > 2)
    throw std::invalid_argument("point must have 1 or 2 coordinates");
  Point p;
  p.dim = static_cast<int>(coords.size());
  for (int i = 0; i < p.dim; ++i) p[i] = coords[static_cast<std::size_t>(i)];
  return p;
}

std::vector<double> as_list(const Point& p) {
  std::vector<double> v(static_cast<std::size_t>(p.dim));
  for (int i = 0; i < p.dim; ++i) v[static_cast<std::size_t>(i)] = p[i];
  return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Galerkin level-chain solver for the point-mass membrane problem";

  py::enum_<Membership>(m, "Membership")
      .value("interior", Membership::Interior)
      .value("boundary", Membership::Boundary)
      .value("exterior", Membership::Exterior);

  py::class_<Domain>(m, "Domain")
      .def(py::init([](int dim, std::vector<double> lower, std::vector<double> upper) {
             std::array<double, 2> lo{0, 0}, hi{1, 1};
             for (int i = 0; i < dim && i < static_cast<int>(lower.size()); ++i)
               lo[static_cast<std::size_t>(i)] = lower[static_cast<std::size_t>(i)];
             for (int i = 0; i < dim && i < static_cast<int>(upper.size()); ++i)
               hi[static_cast<std::size_t>(i)] = upper[static_cast<std::size_t>(i)];
             return Domain(dim, lo, hi);
           }),
           py::arg("dim"), py::arg("lower"), py::arg("upper"))
      .def_static("interval", &Domain::interval)
      .def_static("rectangle", &Domain::rectangle)
      .def_static("unit_interval", &Domain::unit_interval)
      .def_static("unit_square", &Domain::unit_square)
      .def_property_readonly("dim", &Domain::dim)
      .def("contains",
           [](const Domain& d, std::vector<double> p) { return d.contains(as_point(p)); })
      .def("boundary_distance",
           [](const Domain& d, std::vector<double> p) { return d.boundary_distance(as_point(p)); });

  py::enum_<FamilyKind>(m, "FamilyKind")
      .value("spectral_sine", FamilyKind::SpectralSine)
      .value("fem_p1", FamilyKind::FemP1);

  py::class_<SpaceLevel>(m, "SpaceLevel")
      .def_static(
          "build",
          [](const Domain& d, FamilyKind k, int level, int max_n, int quad) {
            return SpaceLevel::build(d, BasisFamily{k}, level, max_n, quad);
          },
          py::arg("domain"), py::arg("family"), py::arg("level"),
          py::arg("max_n") = SpaceLevel::kDefaultMaxN, py::arg("quadrature") = 0)
      .def_static(
          "from_resolution",
          [](const Domain& d, FamilyKind k, int res, int max_n, int quad) {
            return SpaceLevel::from_resolution(d, k, res, max_n, quad);
          },
          py::arg("domain"), py::arg("family"), py::arg("resolution"),
          py::arg("max_n") = SpaceLevel::kDefaultMaxN, py::arg("quadrature") = 0)
      .def_property_readonly("n", &SpaceLevel::size)
      .def_property_readonly("resolution", &SpaceLevel::resolution)
      .def("eval_basis",
           [](const SpaceLevel& s, std::vector<double> p) { return s.eval_basis(as_point(p)); })
      .def("gram", [](const SpaceLevel& s) { return Eigen::MatrixXd(s.gram()); })
      .def("stiffness", [](const SpaceLevel& s) { return Eigen::MatrixXd(s.stiffness()); })
      .def("integrate", [](const SpaceLevel& s, const std::function<double(std::vector<double>)>& g) {
        return s.integrate([&](const Point& p) { return g(as_list(p)); });
      });

  py::class_<Ultrafunction>(m, "Ultrafunction")
      .def(py::init([](const SpaceLevel& s, Eigen::VectorXd c) {
             return Ultrafunction(s, std::move(c));
           }),
           py::arg("level"), py::arg("coeffs"))
      .def_readonly("coeffs", &Ultrafunction::coeffs)
      .def("evaluate",
           [](const Ultrafunction& u, std::vector<double> p) { return u.evaluate(as_point(p)); })
      .def("norm", &Ultrafunction::norm);

  m.def("inner", &inner);
  m.def("project", [](const SpaceLevel& s, const std::function<double(std::vector<double>)>& f) {
    return project(s, [&](const Point& p) { return f(as_list(p)); });
  });
  m.def("delta_at",
        [](const SpaceLevel& s, std::vector<double> q) { return delta_at(s, as_point(q)); });

  py::class_<DirichletSolution>(m, "DirichletSolution")
      .def_readonly("u", &DirichletSolution::u)
      .def_readonly("elastic", &DirichletSolution::elastic)
      .def_readonly("point_value", &DirichletSolution::point_value)
      .def_readonly("residual", &DirichletSolution::residual);

  m.def("solve_point_source", [](const SpaceLevel& s, std::vector<double> q) {
    return solve_point_source(s, as_point(q));
  });
  m.def("solve_poisson",
        [](const SpaceLevel& s, const std::function<double(std::vector<double>)>& f) {
          return solve_poisson(s, [&](const Point& p) { return f(as_list(p)); });
        });
  m.def("continuity_probe", [](const SpaceLevel& s, std::vector<double> q, double radius) {
    return continuity_probe(s, as_point(q), radius);
  });

  py::class_<EnergyReport>(m, "EnergyReport")
      .def_readonly("elastic", &EnergyReport::elastic)
      .def_readonly("point_value", &EnergyReport::point_value)
      .def_readonly("total", &EnergyReport::total)
      .def_readonly("electrostatic", &EnergyReport::electrostatic);

  m.def("energy_at",
        [](const SpaceLevel& s, std::vector<double> q) { return energy_at(s, as_point(q)); });
  m.def("reduced_gradient", [](const SpaceLevel& s, std::vector<double> q) {
    return reduced_gradient(s, as_point(q));
  });

  py::class_<SearchOptions>(m, "SearchOptions")
      .def(py::init<>())
      .def_readwrite("grid", &SearchOptions::grid)
      .def_readwrite("tol", &SearchOptions::tol)
      .def_readwrite("tie_tol_rel", &SearchOptions::tie_tol_rel);

  py::class_<MinimizerResult>(m, "MinimizerResult")
      .def_property_readonly("q_min", [](const MinimizerResult& r) { return as_list(r.q_min); })
      .def_readonly("f_min", &MinimizerResult::f_min)
      .def_readonly("refine_iters", &MinimizerResult::refine_iters)
      .def_property_readonly("ties", [](const MinimizerResult& r) {
        std::vector<std::vector<double>> t;
        for (const Point& p : r.ties) t.push_back(as_list(p));
        return t;
      });

  m.def("minimize", &minimize, py::arg("level"), py::arg("options") = SearchOptions{});

  py::enum_<Quantity>(m, "Quantity")
      .value("energy_at_fixed_q", Quantity::EnergyAtFixedQ)
      .value("min_energy", Quantity::MinEnergy)
      .value("minimizer_coordinate", Quantity::MinimizerCoordinate)
      .value("delta_self_energy", Quantity::DeltaSelfEnergy)
      .value("electrostatic_at_fixed_q", Quantity::ElectrostaticAtFixedQ)
      .value("electrostatic_at_scaled_q", Quantity::ElectrostaticAtScaledQ);

  py::class_<NetSample>(m, "NetSample")
      .def(py::init([](int level, int n, double value) {
             return NetSample{level, n, value};
           }),
           py::arg("level"), py::arg("n"), py::arg("value"))
      .def_readonly("level", &NetSample::level)
      .def_readonly("n", &NetSample::n)
      .def_readonly("value", &NetSample::value);

  py::class_<NetFit>(m, "NetFit")
      .def_property_readonly("model", [](const NetFit& f) { return model_name(f.model); })
      .def_readonly("alpha", &NetFit::alpha)
      .def_readonly("beta", &NetFit::beta)
      .def_readonly("rsq", &NetFit::rsq)
      .def_property_readonly("classification",
                             [](const NetFit& f) { return class_name(f.classification); });

  m.def(
      "run_net",
      [](const Domain& d, FamilyKind k, Quantity quantity, std::vector<int> levels,
         std::optional<std::vector<double>> fixed_q, double exponent, int axis) {
        NetSpec spec;
        spec.quantity = quantity;
        if (fixed_q) spec.fixed_q = as_point(*fixed_q);
        spec.exponent = exponent;
        spec.axis = axis;
        return run_net(d, BasisFamily{k}, spec, levels);
      },
      py::arg("domain"), py::arg("family"), py::arg("quantity"), py::arg("levels"),
      py::arg("fixed_q") = std::nullopt, py::arg("exponent") = 0.0, py::arg("axis") = 0);
  m.def("fit_net", &fit_net);
  m.def("near_boundary_study",
        [](const Domain& d, FamilyKind k, double exponent, std::vector<int> levels) {
          return near_boundary_study(d, BasisFamily{k}, exponent, levels);
        });
}
