// Python bindings. Fields cross the boundary as float64 NumPy arrays of shape
// (n, n) or (n, n, n), indexed [z][y][x] so that x varies fastest, matching
// the snapshot layout.

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "chieq/config.hpp"
#include "chieq/errors.hpp"
#include "chieq/harness.hpp"
#include "chieq/init.hpp"
#include "chieq/io.hpp"
#include "chieq/verify.hpp"

namespace py = pybind11;
using namespace chieq;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_numpy(const ScalarField& f) {
  const GridSpec& g = f.grid();
  std::vector<py::ssize_t> shape(g.dim, g.n);
  Array out(shape);
  std::memcpy(out.mutable_data(), f.data(), f.size() * sizeof(double));
  return out;
}

ScalarField from_numpy(const Array& a) {
  if (a.ndim() != 2 && a.ndim() != 3) throw DimensionError("expected a 2D or 3D array");
  const auto n = a.shape(0);
  for (py::ssize_t d = 1; d < a.ndim(); ++d) {
    if (a.shape(d) != n) throw DimensionError("array must have equal extents");
  }
  const GridSpec g{static_cast<int>(a.ndim()), static_cast<int>(n)};
  g.validate();
  ScalarField f(g);
  std::memcpy(f.data(), a.data(), f.size() * sizeof(double));
  return f;
}

template <class Fn>
py::object pointwise(py::object x, Fn&& fn) {
  if (py::isinstance<py::float_>(x) || py::isinstance<py::int_>(x)) {
    return py::float_(fn(x.cast<double>()));
  }
  Array in = x.cast<Array>();
  Array out(std::vector<py::ssize_t>(in.shape(), in.shape() + in.ndim()));
  const double* src = in.data();
  double* dst = out.mutable_data();
  for (py::ssize_t i = 0; i < in.size(); ++i) dst[i] = fn(src[i]);
  return out;
}

py::dict records_to_dict(const std::vector<EnergyRecord>& recs) {
  const auto n = static_cast<py::ssize_t>(recs.size());
  py::array_t<long> step(n);
  py::array_t<int> outer(n);
  py::array_t<int> inner(n);
  Array time(n), eo(n), em(n), mass_(n), diss(n), drift(n);
  for (py::ssize_t i = 0; i < n; ++i) {
    const auto& r = recs[i];
    step.mutable_at(i) = r.step;
    time.mutable_at(i) = r.time;
    eo.mutable_at(i) = r.e_original;
    em.mutable_at(i) = r.e_modified;
    mass_.mutable_at(i) = r.mass;
    diss.mutable_at(i) = r.dissipation;
    drift.mutable_at(i) = r.u_drift;
    outer.mutable_at(i) = r.outer_iters;
    inner.mutable_at(i) = r.inner_iters;
  }
  py::dict d;
  d["step"] = step;
  d["time"] = time;
  d["e_original"] = eo;
  d["e_modified"] = em;
  d["mass"] = mass_;
  d["dissipation"] = diss;
  d["u_drift"] = drift;
  d["outer_iters"] = outer;
  d["inner_iters"] = inner;
  return d;
}

}  // namespace

PYBIND11_MODULE(_chieq, m) {
  m.doc() = "Linear IEQ schemes for the variable-mobility Cahn-Hilliard equation";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<StepFailure>(m, "StepFailure", base.ptr());
  py::register_exception<NoConvergence>(m, "NoConvergence", base.ptr());
  py::register_exception<ShiftTooSmall>(m, "ShiftTooSmall", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());

  py::class_<PhysParams>(m, "PhysParams")
      .def(py::init<>())
      .def(py::init([](double eps, double sigma, double theta, double b) {
             return PhysParams{eps, sigma, theta, b};
           }),
           py::arg("epsilon") = 0.05, py::arg("sigma") = 0.005, py::arg("theta") = 2.5,
           py::arg("bshift") = 3.5)
      .def_readwrite("epsilon", &PhysParams::epsilon)
      .def_readwrite("sigma", &PhysParams::sigma)
      .def_readwrite("theta", &PhysParams::theta)
      .def_readwrite("bshift", &PhysParams::bshift)
      .def("__repr__", [](const PhysParams& p) {
        std::ostringstream s;
        s << "PhysParams(epsilon=" << p.epsilon << ", sigma=" << p.sigma << ", theta=" << p.theta
          << ", bshift=" << p.bshift << ")";
        return s.str();
      });

  m.def("mobility", [](py::object x, double sigma) {
    return pointwise(x, [&](double v) { return mobility(v, sigma); });
  }, py::arg("x"), py::arg("sigma") = 0.005);
  m.def("free_energy", [](py::object x, const PhysParams& p) {
    return pointwise(x, [&](double v) { return free_energy(v, p); });
  }, py::arg("x"), py::arg("params") = PhysParams{});
  m.def("free_energy_deriv", [](py::object x, const PhysParams& p) {
    return pointwise(x, [&](double v) { return free_energy_deriv(v, p); });
  }, py::arg("x"), py::arg("params") = PhysParams{});
  m.def("h_factor", [](py::object x, const PhysParams& p) {
    return pointwise(x, [&](double v) { return h_factor(v, p); });
  }, py::arg("x"), py::arg("params") = PhysParams{});
  m.def("ieq_variable", [](py::object x, const PhysParams& p) {
    return pointwise(x, [&](double v) { return ieq_variable(v, p); });
  }, py::arg("x"), py::arg("params") = PhysParams{});
  m.def("validate_shift", [](const PhysParams& p) {
    const ShiftCheck c = validate_shift(p);
    return py::make_tuple(c.ok, c.min_value, c.argmin);
  }, py::arg("params") = PhysParams{}, "Returns (ok, min of F + B, argmin).");

  m.def("init_sinusoidal", [](int n) { return to_numpy(init_sinusoidal(GridSpec{2, n})); },
        py::arg("n") = 64);
  m.def("init_random", [](int n, int dim, double mean_value, double amplitude, std::uint64_t seed) {
    GridSpec g{dim, n};
    g.validate();
    return to_numpy(init_random(g, mean_value, amplitude, seed));
  }, py::arg("n") = 64, py::arg("dim") = 2, py::arg("mean") = 0.3, py::arg("amplitude") = 0.001,
     py::arg("seed") = 1);

  m.def("energy_original", [](const Array& phi, const PhysParams& p) {
    const ScalarField f = from_numpy(phi);
    Spectral sp(f.grid());
    return energy_original(sp, f, p);
  }, py::arg("phi"), py::arg("params") = PhysParams{});
  m.def("laplacian", [](const Array& phi) {
    const ScalarField f = from_numpy(phi);
    Spectral sp(f.grid());
    return to_numpy(sp.laplacian(f));
  });
  m.def("variable_laplacian", [](const Array& v, const Array& mob) {
    const ScalarField vf = from_numpy(v);
    Spectral sp(vf.grid());
    return to_numpy(sp.variable_laplacian(vf, from_numpy(mob)));
  }, py::arg("v"), py::arg("m"));

  m.def("preset_names", &preset_names);
  m.def("preset_config", [](const std::string& name) { return format_config(preset(name)); },
        py::arg("name"), "Config text of a named preset.");
  m.def("normalize_config", [](const std::string& text) { return format_config(parse_config(text)); },
        py::arg("text"), "Parses and re-emits config text; raises ConfigError when invalid.");

  m.def("run", [](const std::string& config_text, std::optional<std::uint64_t> seed,
                  std::optional<std::string> out_dir,
                  std::function<bool(long, double, double)> progress) {
    RunConfig cfg = parse_config(config_text);
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.out_dir = *out_dir;
    RunHooks hooks;
    if (progress) {
      hooks.on_step = [&](const EnergyRecord& r, const SimState&) {
        py::gil_scoped_acquire gil;
        return progress(r.step, r.time, r.e_modified);
      };
    }
    RunResult res;
    {
      py::gil_scoped_release release;
      res = run_simulation(cfg, hooks);
    }
    py::dict out;
    out["records"] = records_to_dict(res.records);
    out["phi"] = to_numpy(res.final_state.phi);
    out["u"] = to_numpy(res.final_state.u);
    out["step"] = res.final_state.step;
    out["time"] = res.final_state.time;
    return out;
  }, py::arg("config"), py::arg("seed") = py::none(), py::arg("out_dir") = py::none(),
     py::arg("progress") = nullptr,
     "Integrates a configuration given as key = value text. progress(step, time, energy) "
     "may return False to stop early.");

  m.def("converge", [](const std::vector<double>& dt_list, double dt_ref, int n, double t_final,
                       const std::vector<std::string>& schemes) {
    ConvergenceSetup s;
    s.dt_list = dt_list;
    s.dt_ref = dt_ref;
    s.grid = {2, n};
    s.t_final = t_final;
    s.schemes.clear();
    for (const auto& name : schemes) s.schemes.push_back(parse_scheme(name));
    ConvergenceReport rep;
    {
      py::gil_scoped_release release;
      rep = run_convergence(s);
    }
    py::dict out;
    for (const auto& col : rep.columns) {
      py::list rows;
      for (const auto& r : col.rows) {
        rows.append(py::dict(py::arg("dt") = r.dt, py::arg("l2_error") = r.l2_error,
                             py::arg("rms_error") = r.rms_error, py::arg("order") = r.order));
      }
      out[py::str(std::string(scheme_name(col.scheme)))] = rows;
    }
    return out;
  }, py::arg("dt_list"), py::arg("dt_ref"), py::arg("n") = 64, py::arg("t_final") = 0.5,
     py::arg("schemes") = std::vector<std::string>{"LS1", "LS2-BDF", "LS2-CN"});

  m.def("verify", [](bool full, int n) {
    VerifyOptions opts;
    opts.level = full ? VerifyLevel::Full : VerifyLevel::Quick;
    opts.grid = {2, n};
    VerifyReport rep;
    {
      py::gil_scoped_release release;
      rep = verify(opts);
    }
    py::list out;
    for (const auto& c : rep.checks) {
      out.append(py::dict(py::arg("name") = c.name, py::arg("passed") = c.passed,
                          py::arg("observed") = c.observed, py::arg("tolerance") = c.tolerance,
                          py::arg("detail") = c.detail));
    }
    return out;
  }, py::arg("full") = false, py::arg("n") = 64);

  m.def("read_snapshot", [](const std::string& path) {
    const Snapshot s = read_snapshot_file(path);
    py::dict out;
    out["dim"] = s.grid.dim;
    out["n"] = s.grid.n;
    out["scheme"] = std::string(scheme_name(s.scheme));
    out["step"] = s.step;
    out["time"] = s.time;
    out["phi"] = to_numpy(s.phi);
    out["u"] = to_numpy(s.u);
    return out;
  }, py::arg("path"));
}
