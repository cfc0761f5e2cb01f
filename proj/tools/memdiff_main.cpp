#include <cstdint>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "memdiff/analysis.hpp"
#include "memdiff/harness.hpp"
#include "memdiff/io.hpp"

namespace fs = std::filesystem;
using namespace memdiff;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  bool svg = false;
  bool zero_constants = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON config file")->required();
  cmd->add_option("--out", o.out_dir, "output directory");
  o.seed_opt = cmd->add_option("--seed", o.seed, "field seed override")
                   ->envname("MEMDIFF_SEED");
}

void print_violations(const Violations& v) {
  for (const auto& viol : v)
    std::cerr << "config violation — " << viol.field << " [" << viol.reason
              << "]: " << viol.message << "\n";
}

// exit 1 on any parse/validation problem
int load(const CommonOpts& o, ParsedConfig& parsed) {
  Violations errs;
  parsed = parse_config_file(o.config_path, errs);
  if (o.seed_opt && o.seed_opt->count() > 0) parsed.config.field.seed = o.seed;
  if (errs.empty())
    for (auto& viol : validate_config(parsed.config)) errs.push_back(viol);
  if (!errs.empty()) {
    print_violations(errs);
    return 1;
  }
  return 0;
}

std::string outfile(const CommonOpts& o, const char* name) {
  fs::create_directories(o.out_dir);
  return (fs::path(o.out_dir) / name).string();
}

int run_solve(const CommonOpts& o) {
  ParsedConfig parsed;
  if (int rc = load(o, parsed)) return rc;
  std::string started = iso8601_now();
  GalerkinTrajectory traj = solve(parsed.config);
  std::string digest = config_digest(parsed.config, parsed.converge);
  write_trajectory_csv(outfile(o, "trajectory.csv"), traj);
  write_manifest(outfile(o, "manifest.json"), digest, {"trajectory.csv"}, started,
                 iso8601_now());
  if (traj.failed) {
    std::cerr << "numerical failure: " << traj.failure_message << "\n";
    return 3;
  }
  std::cout << "wrote " << o.out_dir << "/trajectory.csv (" << traj.steps()
            << " steps, digest " << digest << ")\n";
  return 0;
}

int run_certify(const CommonOpts& o) {
  ParsedConfig parsed;
  if (int rc = load(o, parsed)) return rc;
  const SolverConfig& cfg = parsed.config;
  std::string started = iso8601_now();

  RandomField field = sample_field(cfg.field, cfg.domain, cfg.realization);
  EnergyConstants consts = compute_constants(cfg, field);
  if (o.zero_constants) {
    consts.E0 = 0.0;
    consts.C1 = 0.0;
    consts.C2 = 0.0;
    consts.x0 = 0.0;
    consts.J = 0.0;
  }
  GalerkinTrajectory traj = solve(cfg);
  CertificateReport rep = certify(traj, consts);

  std::string digest = config_digest(cfg, parsed.converge);
  std::vector<std::string> outputs = {"trajectory.csv", "energy.csv"};
  write_trajectory_csv(outfile(o, "trajectory.csv"), traj);
  write_energy_csv(outfile(o, "energy.csv"), rep);
  if (o.svg) {
    write_energy_svg(outfile(o, "energy.svg"), rep);
    outputs.push_back("energy.svg");
  }
  write_manifest(outfile(o, "manifest.json"), digest, outputs, started, iso8601_now());

  if (traj.failed) {
    std::cerr << "numerical failure: " << traj.failure_message << "\n";
    return 3;
  }
  if (!rep.pass) {
    std::cerr << "certificate failure: E(t) exceeds B(t) first at step "
              << rep.first_violation << " (t = " << fmt17(rep.t[rep.first_violation])
              << ")\n";
    return 2;
  }
  std::cout << "certificate: pass (min margin at final step "
            << fmt17(rep.margin.back()) << ", digest " << digest << ")\n";
  return 0;
}

int run_converge(const CommonOpts& o) {
  ParsedConfig parsed;
  if (int rc = load(o, parsed)) return rc;
  std::string started = iso8601_now();
  ConvergeSpec spec = parsed.converge;
  if (spec.values.empty()) spec.values = {4e-3, 2e-3, 1e-3};

  ConvergenceTable table;
  try {
    if (spec.param == "dt") {
      table = refine_dt(parsed.config, spec.values);
    } else {
      std::vector<int> Ns;
      for (double v : spec.values) Ns.push_back(static_cast<int>(v));
      table = refine_N(parsed.config, Ns);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config violation — converge [" << e.what() << "]\n";
    return 1;
  }
  std::string digest = config_digest(parsed.config, spec);
  write_converge_csv(outfile(o, "converge.csv"), table);
  write_manifest(outfile(o, "manifest.json"), digest, {"converge.csv"}, started,
                 iso8601_now());
  for (const auto& row : table)
    if (!std::isfinite(row.error)) {
      std::cerr << "numerical failure: a refinement run diverged ("
                << row.param << " = " << fmt17(row.value) << ")\n";
      return 3;
    }
  std::cout << "wrote " << o.out_dir << "/converge.csv (" << table.size()
            << " rows, digest " << digest << ")\n";
  return 0;
}

int run_oracle_check(const CommonOpts& o) {
  ParsedConfig parsed;
  if (int rc = load(o, parsed)) return rc;
  std::string started = iso8601_now();
  GalerkinTrajectory oracle;
  try {
    oracle = oracle_linear(parsed.config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config violation — oracle [" << e.what() << "]\n";
    return 1;
  }
  GalerkinTrajectory numeric = solve(parsed.config);
  if (numeric.failed) {
    std::cerr << "numerical failure: " << numeric.failure_message << "\n";
    return 3;
  }
  double err = max_rel_error(numeric, oracle);
  ConvergenceTable table = {{"dt", parsed.config.dt, err, 0.0, 0.0, false}};
  std::string digest = config_digest(parsed.config, parsed.converge);
  write_converge_csv(outfile(o, "converge.csv"), table);
  write_manifest(outfile(o, "manifest.json"), digest, {"converge.csv"}, started,
                 iso8601_now());
  std::cout << "oracle deviation: " << fmt17(err) << " (digest " << digest << ")\n";
  if (!(err <= 1e-4)) {
    std::cerr << "numerical failure: oracle deviation " << fmt17(err)
              << " exceeds 1e-4\n";
    return 3;
  }
  return 0;
}

int run_validate(const CommonOpts& o) {
  ParsedConfig parsed;
  if (int rc = load(o, parsed)) return rc;
  std::cout << "config ok (digest " << config_digest(parsed.config, parsed.converge)
            << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral Galerkin solver for memory-type nonlinear diffusion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("memdiff ") + kVersion);

  CommonOpts solve_o, certify_o, converge_o, oracle_o, validate_o;
  CLI::App* c_solve = app.add_subcommand("solve", "integrate and write trajectory.csv");
  add_common(c_solve, solve_o);
  CLI::App* c_certify =
      app.add_subcommand("certify", "integrate and check the energy bound");
  add_common(c_certify, certify_o);
  c_certify->add_flag("--svg", certify_o.svg, "also write an E/B line chart");
  c_certify->add_flag("--zero-constants", certify_o.zero_constants)->group("");
  CLI::App* c_converge =
      app.add_subcommand("converge", "refinement study over dt or N");
  add_common(c_converge, converge_o);
  CLI::App* c_oracle =
      app.add_subcommand("oracle-check", "compare against the closed-form solution");
  add_common(c_oracle, oracle_o);
  CLI::App* c_validate = app.add_subcommand("validate", "parse and validate a config");
  add_common(c_validate, validate_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_solve->parsed()) return run_solve(solve_o);
    if (c_certify->parsed()) return run_certify(certify_o);
    if (c_converge->parsed()) return run_converge(converge_o);
    if (c_oracle->parsed()) return run_oracle_check(oracle_o);
    if (c_validate->parsed()) return run_validate(validate_o);
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
