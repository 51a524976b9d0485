#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "starknls/config.hpp"
#include "starknls/errors.hpp"
#include "starknls/propagator.hpp"
#include "starknls/runner.hpp"
#include "starknls/snapshot.hpp"

#include <array>
#include <memory>

namespace py = pybind11;
using namespace starknls;

namespace {

std::array<double, 2> to_vec(py::object obj, int dim, const char* name) {
  std::array<double, 2> out{0.0, 0.0};
  if (py::isinstance<py::float_>(obj) || py::isinstance<py::int_>(obj)) {
    out[0] = obj.cast<double>();
    return out;
  }
  auto seq = obj.cast<std::vector<double>>();
  if (seq.size() != static_cast<std::size_t>(dim))
    throw std::invalid_argument(std::string(name) + ": expected " + std::to_string(dim) +
                                " components");
  for (int a = 0; a < dim; ++a) out[static_cast<std::size_t>(a)] = seq[static_cast<std::size_t>(a)];
  return out;
}

py::array values_array(const Field& f) {
  const Grid& g = *f.grid;
  std::vector<py::ssize_t> shape;
  if (g.dim() == 1)
    shape = {static_cast<py::ssize_t>(g.points(0))};
  else
    shape = {static_cast<py::ssize_t>(g.points(0)), static_cast<py::ssize_t>(g.points(1))};
  py::array_t<Complex> out(shape);
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

Field field_from_array(GridPtr g, py::array_t<Complex, py::array::c_style | py::array::forcecast> arr,
                       std::optional<double> t) {
  if (static_cast<std::size_t>(arr.size()) != g->size())
    throw std::invalid_argument("values length does not match grid size");
  std::vector<Complex> vals(static_cast<std::size_t>(arr.size()));
  std::copy(arr.data(), arr.data() + arr.size(), vals.begin());
  Field f(std::move(g), std::move(vals), t);
  validate(f);
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "pseudo-spectral simulator and diagnostics for the nonlinear "
            "Schrodinger equation with a linear potential";

  py::register_exception<GuardError>(m, "GuardError");
  py::register_exception<FormatError>(m, "FormatError");
  py::register_exception<ConfigSyntaxError>(m, "ConfigSyntaxError");
  py::register_exception<ConfigValidityError>(m, "ConfigValidityError");

  py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
      .def(py::init([](int dim, py::object points, py::object lengths) {
             std::array<int, 2> n{8, 8};
             if (py::isinstance<py::int_>(points)) {
               n[0] = n[1] = points.cast<int>();
             } else {
               auto seq = points.cast<std::vector<int>>();
               for (int a = 0; a < dim; ++a) n[static_cast<std::size_t>(a)] = seq.at(static_cast<std::size_t>(a));
             }
             std::array<double, 2> len{1.0, 1.0};
             if (py::isinstance<py::float_>(lengths) || py::isinstance<py::int_>(lengths)) {
               len[0] = len[1] = lengths.cast<double>();
             } else {
               auto seq = lengths.cast<std::vector<double>>();
               for (int a = 0; a < dim; ++a) len[static_cast<std::size_t>(a)] = seq.at(static_cast<std::size_t>(a));
             }
             return std::make_shared<Grid>(dim, n, len);
           }),
           py::arg("dim"), py::arg("points"), py::arg("lengths"))
      .def_property_readonly("dim", &Grid::dim)
      .def("points", &Grid::points, py::arg("axis") = 0)
      .def("length", &Grid::length, py::arg("axis") = 0)
      .def("spacing", &Grid::spacing, py::arg("axis") = 0)
      .def_property_readonly("size", &Grid::size)
      .def("coordinates",
           [](const Grid& g, int axis) { return py::array_t<double>(py::cast(g.coordinates(axis))); },
           py::arg("axis") = 0)
      .def("wavenumbers",
           [](const Grid& g, int axis) { return py::array_t<double>(py::cast(g.wavenumbers(axis))); },
           py::arg("axis") = 0);

  py::class_<Field>(m, "Field")
      .def(py::init([](std::shared_ptr<Grid> g,
                       py::array_t<Complex, py::array::c_style | py::array::forcecast> arr,
                       std::optional<double> t) { return field_from_array(std::move(g), arr, t); }),
           py::arg("grid"), py::arg("values"), py::arg("time_tag") = std::nullopt)
      .def_property_readonly("grid",
                             [](const Field& f) { return std::const_pointer_cast<Grid>(f.grid); })
      .def_property_readonly("values", &values_array)
      .def_property_readonly("time_tag", [](const Field& f) { return f.time_tag; });

  py::class_<HartreeTerm>(m, "HartreeTerm")
      .def(py::init<double, double>(), py::arg("mu"), py::arg("gamma"))
      .def_readwrite("mu", &HartreeTerm::mu)
      .def_readwrite("gamma", &HartreeTerm::gamma);

  py::class_<Problem>(m, "Problem")
      .def(py::init([](double epsilon, double lambda, double sigma, py::object E, bool stark_on,
                       std::optional<HartreeTerm> hartree) {
             Problem p;
             p.epsilon = epsilon;
             p.lambda = lambda;
             p.sigma = sigma;
             p.field_strength = to_vec(E, 2, "E");
             p.stark_on = stark_on;
             p.hartree = hartree;
             return p;
           }),
           py::arg("epsilon") = 1.0, py::arg("lambda_") = 0.0, py::arg("sigma") = 1.0,
           py::arg("E") = 0.0, py::arg("stark_on") = false,
           py::arg("hartree") = std::nullopt)
      .def_readwrite("epsilon", &Problem::epsilon)
      .def_readwrite("lambda_", &Problem::lambda)
      .def_readwrite("sigma", &Problem::sigma)
      .def_readwrite("stark_on", &Problem::stark_on)
      .def_property(
          "E", [](const Problem& p) { return p.field_strength; },
          [](Problem& p, py::object v) { p.field_strength = to_vec(v, 2, "E"); })
      .def("free_counterpart", &Problem::free_counterpart);

  py::class_<StarkFrame>(m, "StarkFrame")
      .def(py::init([](double t, py::object E, double epsilon) {
             StarkFrame fr;
             fr.t = t;
             fr.field_strength = to_vec(E, 2, "E");
             fr.epsilon = epsilon;
             return fr;
           }),
           py::arg("t"), py::arg("E") = 0.0, py::arg("epsilon") = 1.0)
      .def_readwrite("t", &StarkFrame::t)
      .def_readwrite("epsilon", &StarkFrame::epsilon)
      .def_static("at", &StarkFrame::at, py::arg("t"), py::arg("problem"));

  py::class_<Guards>(m, "Guards")
      .def(py::init<>())
      .def_readwrite("boundary_mass_max", &Guards::boundary_mass_max)
      .def_readwrite("spectral_tail_max", &Guards::spectral_tail_max)
      .def_readwrite("grad_threshold_factor", &Guards::grad_threshold_factor);

  m.def("gaussian",
        [](std::shared_ptr<Grid> g, double amplitude, py::object center, double width,
           py::object p, double eps) {
          InitialData d;
          d.kind = InitialData::Kind::gaussian_boosted;
          d.amplitude = amplitude;
          d.center = to_vec(center, g->dim(), "center");
          d.width = width;
          d.phase_slope = to_vec(p, g->dim(), "p");
          return realize_initial_data(d, g, eps);
        },
        py::arg("grid"), py::arg("amplitude") = 1.0, py::arg("center") = 0.0,
        py::arg("width") = 1.0, py::arg("p") = 0.0, py::arg("eps") = 1.0);

  // grid-module operations
  m.def("forward_dft", &forward_dft);
  m.def("inverse_dft", &inverse_dft);
  m.def("spectral_gradient", &spectral_gradient);
  m.def("spectral_translate",
        [](const Field& f, py::object offset) {
          return spectral_translate(f, to_vec(offset, f.grid->dim(), "offset"));
        },
        py::arg("field"), py::arg("offset"));
  m.def("spectral_tail", &spectral_tail);
  m.def("boundary_mass", &boundary_mass);
  m.def("peak_location", [](const Field& f) {
    const auto p = peak_location(f);
    return f.grid->dim() == 1 ? py::cast(std::vector<double>{p[0]})
                              : py::cast(std::vector<double>{p[0], p[1]});
  });
  m.def("mass", &mass);
  m.def("l2_norm", &l2_norm);
  m.def("lp_norm", &lp_norm);
  m.def("l2_distance", &l2_distance);
  m.def("grad_norm", &grad_norm);

  // problem-module operations
  m.def("blowup_energy_sign", &blowup_energy_sign);
  m.def("scattering_sigma_threshold", &scattering_sigma_threshold);

  // transform-module operations
  m.def("phase_phi",
        [](const StarkFrame& fr, std::shared_ptr<Grid> g) { return phase_phi(fr, g); });
  m.def("eikonal_residual",
        [](const StarkFrame& fr, std::shared_ptr<Grid> g) { return eikonal_residual(fr, g); });
  m.def("ah_forward", &ah_forward);
  m.def("ah_inverse", &ah_inverse);
  m.def("j_e_direct", &j_e_direct);
  m.def("j_e_conjugated", &j_e_conjugated, py::arg("field"), py::arg("frame"),
        py::arg("tail_guard") = 1e-8);
  m.def("shifted_momentum", &shifted_momentum);
  m.def("gauge_chain_rule_residual", &gauge_chain_rule_residual);
  m.def("sigma_norm", &sigma_norm, py::arg("field"), py::arg("boundary_guard") = 1e-8);

  // propagator-module operations
  m.def("linear_free_propagate", &linear_free_propagate);
  m.def("linear_stark_propagate", &linear_stark_propagate);
  m.def("hartree_potential", &hartree_potential);
  m.def("nonlinear_phase_step", &nonlinear_phase_step);
  m.def("strang_step", &strang_step);

  py::class_<DiagnosticsRecord>(m, "DiagnosticsRecord")
      .def_readonly("t", &DiagnosticsRecord::t)
      .def_readonly("mass", &DiagnosticsRecord::mass)
      .def_readonly("grad_norm", &DiagnosticsRecord::grad_norm)
      .def_readonly("lr_norm_2s2", &DiagnosticsRecord::lr_norm_2s2)
      .def_readonly("natural_energy", &DiagnosticsRecord::natural_energy)
      .def_readonly("shifted_energy", &DiagnosticsRecord::shifted_energy)
      .def_readonly("pc_quantity", &DiagnosticsRecord::pc_quantity)
      .def_readonly("je_norm", &DiagnosticsRecord::je_norm)
      .def_readonly("momentum_invariant", &DiagnosticsRecord::momentum_invariant)
      .def_readonly("boundary_mass", &DiagnosticsRecord::boundary_mass)
      .def_readonly("spectral_tail", &DiagnosticsRecord::spectral_tail)
      .def_readonly("peak_location", &DiagnosticsRecord::peak_location)
      .def_readonly("sigma_norm", &DiagnosticsRecord::sigma_norm);

  py::enum_<StopReason>(m, "StopReason")
      .value("completed", StopReason::completed)
      .value("blowup_triggered", StopReason::blowup_triggered)
      .value("guard_boundary", StopReason::guard_boundary)
      .value("guard_spectral", StopReason::guard_spectral)
      .value("non_finite", StopReason::non_finite);

  py::class_<BlowupMonitor>(m, "BlowupMonitor")
      .def_readonly("triggered", &BlowupMonitor::triggered)
      .def_readonly("t_trigger", &BlowupMonitor::t_trigger)
      .def_readonly("peak_at_trigger", &BlowupMonitor::peak_at_trigger);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("records", &Trajectory::records)
      .def_readonly("snapshots", &Trajectory::snapshots)
      .def_readonly("stop", &Trajectory::stop)
      .def_readonly("stop_time", &Trajectory::stop_time)
      .def_readonly("monitor", &Trajectory::monitor);

  py::class_<StepScheme>(m, "StepScheme")
      .def(py::init<double>(), py::arg("dt"))
      .def_readwrite("dt", &StepScheme::dt);

  m.def("propagate",
        [](const Field& f0, double t0, double T, double dt, const Problem& p, int sample_every,
           bool keep_snapshots, const Guards& guards) {
          RunOptions opts;
          opts.sample_every = sample_every;
          opts.keep_snapshots = keep_snapshots;
          opts.guards = guards;
          return propagate(f0, t0, T, StepScheme{dt}, p, opts);
        },
        py::arg("f0"), py::arg("t0"), py::arg("T"), py::arg("dt"), py::arg("problem"),
        py::arg("sample_every") = 1, py::arg("keep_snapshots") = false,
        py::arg("guards") = Guards{});

  // diagnostics-module operations
  m.def("delta_r", &delta_r);
  m.def("dispersive_ratio", &dispersive_ratio);
  m.def("pc_quantity", &pc_quantity);
  m.def("record", &record);
  m.def("pc_law_residual", &pc_law_residual);
  py::class_<ScatteringSeries>(m, "ScatteringSeries")
      .def_readonly("times", &ScatteringSeries::times)
      .def_readonly("cauchy", &ScatteringSeries::cauchy)
      .def_readonly("to_proxy", &ScatteringSeries::to_proxy);
  m.def("scattering_residual", &scattering_residual);

  // harness-module operations
  m.def("write_snapshot", &write_snapshot, py::arg("field"), py::arg("path"),
        py::arg("epsilon") = 1.0);
  m.def("read_snapshot", [](const std::filesystem::path& path) {
    double eps = 1.0;
    Field f = read_snapshot(path, &eps);
    return py::make_tuple(std::move(f), eps);
  });
}
