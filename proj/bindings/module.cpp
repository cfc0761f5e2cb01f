#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "memdiff/analysis.hpp"
#include "memdiff/harness.hpp"
#include "memdiff/io.hpp"

namespace py = pybind11;
using namespace memdiff;

namespace {

py::list violations_to_list(const Violations& v) {
  py::list out;
  for (const auto& viol : v) {
    py::dict d;
    d["field"] = viol.field;
    d["reason"] = viol.reason;
    d["message"] = viol.message;
    out.append(d);
  }
  return out;
}

// parse + validate, raising ValueError with the first field path on failure
ParsedConfig load_config(const std::string& text) {
  Violations errs;
  ParsedConfig parsed = parse_config_json(text, errs);
  if (errs.empty())
    for (auto& viol : validate_config(parsed.config)) errs.push_back(viol);
  if (!errs.empty()) {
    std::string msg = "invalid config";
    for (const auto& viol : errs)
      msg += "; " + viol.field + " [" + viol.reason + "]: " + viol.message;
    throw py::value_error(msg);
  }
  return parsed;
}

py::dict traj_to_dict(const GalerkinTrajectory& traj) {
  py::dict d;
  d["t"] = traj.t;
  d["c"] = traj.c;
  d["cprime"] = traj.cprime;
  d["N"] = traj.N;
  d["failed"] = traj.failed;
  d["failed_step"] = traj.failed_step;
  d["failure_message"] = traj.failure_message;
  return d;
}

py::dict report_to_dict(const CertificateReport& rep) {
  py::dict d;
  d["t"] = rep.t;
  d["E"] = rep.E;
  d["B"] = rep.B;
  d["margin"] = rep.margin;
  d["pass"] = rep.pass;
  d["first_violation"] = rep.first_violation;
  d["trajectory_failed"] = rep.trajectory_failed;
  d["failed_step"] = rep.failed_step;
  d["failure_message"] = rep.failure_message;
  d["aggregate_bound"] = rep.aggregate_bound;
  d["l2h1_norm"] = rep.l2h1_norm;
  d["dt_hminus1_norm"] = rep.dt_hminus1_norm;
  py::dict k;
  k["C_Omega"] = rep.constants.C_Omega;
  k["lambda_Y"] = rep.constants.lambda_Y;
  k["C1"] = rep.constants.C1;
  k["C2"] = rep.constants.C2;
  k["p"] = rep.constants.p;
  k["E0"] = rep.constants.E0;
  k["x0"] = rep.constants.x0;
  k["J"] = rep.constants.J;
  k["D_sup"] = rep.constants.D_sup;
  k["K_l1"] = rep.constants.K_l1;
  k["f_norm"] = rep.constants.f_norm;
  d["constants"] = k;
  return d;
}

py::list table_to_list(const ConvergenceTable& table) {
  py::list out;
  for (const auto& row : table) {
    py::dict d;
    d["param"] = row.param;
    d["value"] = row.value;
    d["error"] = row.error;
    if (row.has_order)
      d["order"] = row.order;
    else
      d["order"] = py::none();
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_memdiff, mod) {
  mod.doc() = "spectral Galerkin solver for memory-type nonlinear diffusion";

  mod.def("version", [] { return std::string(kVersion); });

  mod.def("validate", [](const std::string& text) {
    Violations errs;
    ParsedConfig parsed = parse_config_json(text, errs);
    if (errs.empty())
      for (auto& viol : validate_config(parsed.config)) errs.push_back(viol);
    return violations_to_list(errs);
  });

  mod.def("solve", [](const std::string& text) {
    return traj_to_dict(solve(load_config(text).config));
  });

  mod.def(
      "certify",
      [](const std::string& text, bool zero_constants) {
        SolverConfig cfg = load_config(text).config;
        RandomField field = sample_field(cfg.field, cfg.domain, cfg.realization);
        EnergyConstants consts = compute_constants(cfg, field);
        if (zero_constants) {
          consts.E0 = consts.C1 = consts.C2 = consts.x0 = consts.J = 0.0;
        }
        return report_to_dict(certify(solve(cfg), consts));
      },
      py::arg("config"), py::arg("zero_constants") = false);

  mod.def("oracle_check", [](const std::string& text) {
    SolverConfig cfg = load_config(text).config;
    GalerkinTrajectory oracle = oracle_linear(cfg);
    return max_rel_error(solve(cfg), oracle);
  });

  mod.def("refine_dt", [](const std::string& text, const std::vector<double>& dts) {
    return table_to_list(refine_dt(load_config(text).config, dts));
  });

  mod.def("refine_N", [](const std::string& text, const std::vector<int>& Ns) {
    return table_to_list(refine_N(load_config(text).config, Ns));
  });

  mod.def(
      "weak_residual",
      [](const std::string& text, int j) {
        SolverConfig cfg = load_config(text).config;
        TestFunction phi{j};
        return weak_residual(solve(cfg), phi, cfg);
      },
      py::arg("config"), py::arg("j") = 1);

  mod.def("seed_sweep", [](const std::string& text, int n) {
    SolverConfig cfg = load_config(text).config;
    py::list out;
    for (const auto& rep : seed_sweep(cfg, n)) out.append(report_to_dict(rep));
    return out;
  });

  mod.def("bainov_root", &bainov_root, py::arg("E0"), py::arg("T"), py::arg("C1"),
          py::arg("C2"), py::arg("p"));
  mod.def("bainov_root_cprime", &bainov_root_cprime, py::arg("c1p"), py::arg("c2p"),
          py::arg("p"));

  mod.def(
      "sample_field",
      [](const std::string& text, uint64_t realization) {
        SolverConfig cfg = load_config(text).config;
        return sample_field(cfg.field, cfg.domain, realization).values;
      },
      py::arg("config"), py::arg("realization") = 0);

  mod.def("kernel_l1", [](const std::string& text) {
    SolverConfig cfg = load_config(text).config;
    MemoryKernel k = cfg.kernel;
    k.T = cfg.T;
    return l1_norm(k);
  });

  mod.def("eigenvalues", [](const std::string& text) {
    SolverConfig cfg = load_config(text).config;
    std::vector<double> lams;
    for (const auto& e : eigenpairs(cfg.domain, cfg.N)) lams.push_back(e.lambda);
    return lams;
  });

  mod.def("config_digest", [](const std::string& text) {
    ParsedConfig parsed = load_config(text);
    return config_digest(parsed.config, parsed.converge);
  });
}
