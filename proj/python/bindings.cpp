#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rissr/benchmarks.hpp"
#include "rissr/channels.hpp"
#include "rissr/errors.hpp"
#include "rissr/experiments.hpp"
#include "rissr/model.hpp"
#include "rissr/optimizer.hpp"

namespace py = pybind11;
using namespace rissr;

namespace {

py::dict metrics_dict(const Metrics& m) {
  py::dict d;
  d["objective"] = m.objective;
  d["r_p"] = m.r_p;
  d["r_s"] = m.r_s;
  d["p_tx"] = m.p_tx;
  d["f_loc"] = m.f_loc;
  d["R_p"] = m.R_p;
  d["R_s"] = m.R_s;
  d["local_bits"] = m.local_bits;
  d["M_p"] = m.M_p;
  d["M_s"] = m.M_s;
  d["E_sense"] = m.E_sense;
  d["E_off"] = m.E_off;
  d["c4_user_ok"] = m.c4_user_ok;
  d["c4_ris_ok"] = m.c4_ris_ok;
  return d;
}

py::dict row_dict(const ResultRow& r) {
  py::dict d;
  d["sweep_value"] = r.sweep_value;
  d["trial"] = r.trial;
  d["seed"] = r.seed;
  d["scheme"] = std::string(scheme_name(r.scheme));
  d["objective"] = r.objective;
  d["sum_R_p"] = r.sum_R_p;
  d["sum_R_s"] = r.sum_R_s;
  d["sum_local"] = r.sum_local;
  d["sensed_user"] = r.sensed_user;
  d["sensed_ris"] = r.sensed_ris;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["mean_beta"] = r.mean_beta;
  d["c4_user_ok"] = r.c4_user_ok;
  d["c4_ris_ok"] = r.c4_ris_ok;
  d["error"] = r.error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_rissr, m) {
  m.doc() = "RIS-assisted sense-then-offload simulator";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<NegativeBudget>(m, "NegativeBudget", base.ptr());
  py::register_exception<DivisionByZero>(m, "DivisionByZero", base.ptr());
  py::register_exception<ZeroDistance>(m, "ZeroDistance", base.ptr());
  py::register_exception<SingularMatrix>(m, "SingularMatrix", base.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
  py::register_exception<RankDeficient>(m, "RankDeficient", base.ptr());
  py::register_exception<EmptyInput>(m, "EmptyInput", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("users", &SystemConfig::users)
      .def_readwrite("antennas", &SystemConfig::antennas)
      .def_readwrite("elements", &SystemConfig::elements)
      .def_readwrite("symbols_per_secondary", &SystemConfig::symbols_per_secondary)
      .def_readwrite("bandwidth", &SystemConfig::bandwidth)
      .def_readwrite("noise_power", &SystemConfig::noise_power)
      .def_readwrite("cycle", &SystemConfig::cycle)
      .def_readwrite("alpha", &SystemConfig::alpha)
      .def_readwrite("user_sense_rate", &SystemConfig::user_sense_rate)
      .def_readwrite("ris_sense_rate", &SystemConfig::ris_sense_rate)
      .def_readwrite("sense_cost", &SystemConfig::sense_cost)
      .def_readwrite("energy_max", &SystemConfig::energy_max)
      .def_readwrite("kappa", &SystemConfig::kappa)
      .def_readwrite("cycles_per_bit", &SystemConfig::cycles_per_bit)
      .def_property(
          "phase_mode", [](const SystemConfig& c) { return c.phase_mode.name(); },
          [](SystemConfig& c, const std::string& s) { c.phase_mode = PhaseMode::parse(s); })
      .def("set_users", &SystemConfig::set_users)
      .def("set_energy_max", &SystemConfig::set_energy_max)
      .def("validate", &SystemConfig::validate);

  py::class_<ChannelSet>(m, "ChannelSet")
      .def_readonly("h_d", &ChannelSet::h_d)
      .def_readonly("h_r", &ChannelSet::h_r)
      .def_readonly("G", &ChannelSet::G);

  m.def(
      "sample_channels",
      [](const SystemConfig& cfg, std::uint64_t seed) {
        return sample_channels(Geometry::reference(cfg.users), FadingParams{}, cfg, seed);
      },
      py::arg("cfg"), py::arg("seed"), "Channels of the reference layout for one seed.");

  m.def("sensed_bits", [](const SystemConfig& cfg) {
    const SensedData s = sensed_data(cfg);
    return py::make_tuple(s.user, s.ris);
  });
  m.def("energy_split", [](const SystemConfig& cfg) {
    const EnergyBudget e = energy_budget(cfg);
    return py::make_tuple(e.sense, e.offload);
  });
  m.def("transmit_power", &transmit_power, py::arg("beta"), py::arg("e_off"), py::arg("cfg"));
  m.def("local_frequency", &local_frequency, py::arg("beta"), py::arg("e_off"), py::arg("cfg"));

  m.def("scheme_names", [] {
    std::vector<std::string> out;
    for (Scheme s : all_schemes()) out.emplace_back(scheme_name(s));
    return out;
  });

  m.def(
      "run_scheme",
      [](const std::string& scheme, const SystemConfig& cfg, const ChannelSet& channels, std::uint64_t seed,
         int max_iters, double rel_tol) {
        AOSettings s;
        s.seed = seed;
        s.max_iters = max_iters;
        s.rel_tol = rel_tol;
        s.record_timing = false;
        const SchemeResult r = [&] {
          py::gil_scoped_release release;
          return run_scheme(parse_scheme(scheme), cfg, channels, s);
        }();
        py::dict d = metrics_dict(r.metrics);
        std::vector<double> surrogate;
        for (const auto& row : r.trace.rows) surrogate.push_back(row.surrogate);
        d["surrogate_trace"] = surrogate;
        d["iterations"] = r.trace.iterations();
        d["converged"] = r.trace.converged;
        d["beta"] = r.state.beta;
        d["phases"] = r.state.phases;
        d["W"] = r.state.W;
        return d;
      },
      py::arg("scheme"), py::arg("cfg"), py::arg("channels"), py::arg("seed") = 1, py::arg("max_iters") = 200,
      py::arg("rel_tol") = 1e-4);

  m.def(
      "run_experiment",
      [](const std::string& config_text, const std::string& out_dir) {
        Scenario sc = parse_config(config_text);
        sc.experiment.out_dir = out_dir;
        const ExperimentOutput out = [&] {
          py::gil_scoped_release release;
          return run_experiment(sc);
        }();
        py::list rows;
        for (const auto& r : out.rows) rows.append(row_dict(r));
        return rows;
      },
      py::arg("config_text"), py::arg("out_dir"),
      "Runs a config given as key = value text and writes its CSV files to out_dir.");

  m.def(
      "summarize",
      [](const std::string& dir) {
        py::list out;
        for (const auto& s : summarize(dir)) {
          py::dict d;
          d["scheme"] = s.scheme;
          d["sweep_value"] = s.sweep_value;
          d["count"] = s.count;
          d["mean"] = s.mean;
          d["std"] = s.stddev;
          out.append(d);
        }
        return out;
      },
      py::arg("dir"));
  m.def("summary_columns", &summary_columns);
  m.def("mean_std", [](const std::vector<double>& x) { return mean_std(x); });
}
