#include <cmath>
#include <stdexcept>

#include "common.hpp"
#include "doctest.h"
#include "memdiff/analysis.hpp"
#include "memdiff/harness.hpp"
#include "memdiff/solver.hpp"

using namespace memdiff;
using memdiff::testing::kPi;
using memdiff::testing::oracle_config;

namespace {
GalerkinTrajectory constant_history(const SolverConfig& cfg, const SolverWorkspace& ws,
                                    const std::vector<double>& c, int steps) {
  GalerkinTrajectory traj;
  traj.N = cfg.N;
  traj.dim = ws.dim;
  traj.nodes = ws.node_count;
  traj.t.resize(steps + 1);
  for (int k = 0; k <= steps; ++k) traj.t[k] = cfg.dt * k;
  std::vector<double> g;
  flux_at_nodes(c, cfg.phi, ws, g);
  traj.c.assign(steps + 1, c);
  traj.cprime.assign(steps + 1, std::vector<double>(cfg.N, 0.0));
  traj.flux.assign(steps + 1, g);
  return traj;
}
}  // namespace

TEST_CASE("workspace tables") {
  SolverConfig cfg = oracle_config();
  cfg.N = 3;
  auto ws = make_workspace(cfg);
  CHECK(ws.node_count == size_t(default_panels(3) * 4));
  CHECK(ws.field_sup_value == doctest::Approx(1.0));
  for (double w : ws.weightD) CHECK(w > 0.0);
  // basis table matches direct evaluation
  auto eigs = eigenpairs(cfg.domain, 3);
  CHECK(ws.basis[2 * ws.node_count + 5] ==
        doctest::Approx(eigen_eval(cfg.domain, eigs[2], ws.grid.nodes[5])));
}

TEST_CASE("flux at nodes for a single linear mode") {
  SolverConfig cfg = oracle_config();
  auto ws = make_workspace(cfg);
  std::vector<double> g;
  flux_at_nodes({1.0}, cfg.phi, ws, g);
  // phi' = -1, so g = -grad e_1 = -sqrt(2/pi) cos(x)
  for (size_t q = 0; q < ws.node_count; q += 7) {
    double x = ws.grid.nodes[q][0];
    CHECK(g[q] == doctest::Approx(-std::sqrt(2.0 / kPi) * std::cos(x)).epsilon(1e-12));
  }
}

TEST_CASE("memory convolution: zero, constant-exact, exponential closed form") {
  SolverConfig cfg = oracle_config();
  cfg.dt = 0.25;
  auto ws = make_workspace(cfg);

  GalerkinTrajectory zero = constant_history(cfg, ws, {0.0}, 4);
  auto M = memory_convolution(zero, 4, cfg.kernel);
  for (double v : M) CHECK(v == 0.0);

  // constant kernel, constant flux, t_k = 1: weights sum to t_k
  SolverConfig ct = cfg;
  ct.kernel = {MemoryKernel::Kind::constant, 1.0, 0.0, 0.0, 1.0};
  GalerkinTrajectory traj = constant_history(ct, ws, {1.0}, 4);
  M = memory_convolution(traj, 4, ct.kernel);
  std::vector<double> g;
  flux_at_nodes({1.0}, ct.phi, ws, g);
  for (size_t j = 0; j < M.size(); ++j)
    CHECK(M[j] == doctest::Approx(g[j]).epsilon(1e-13));

  // exponential kernel against 1 - e^{-1} (exact: history is constant)
  M = memory_convolution(traj, 4, cfg.kernel);
  double w = 1.0 - std::exp(-1.0);
  for (size_t j = 0; j < M.size(); ++j)
    CHECK(M[j] == doctest::Approx(w * g[j]).epsilon(1e-12));

  CHECK_THROWS_AS(memory_convolution(traj, 9, cfg.kernel), std::logic_error);
  CHECK_THROWS_AS(memory_convolution(traj, -1, cfg.kernel), std::logic_error);
}

TEST_CASE("rhs assembly: zero data, pure forcing, laplacian pipeline") {
  SolverConfig cfg = oracle_config();
  cfg.N = 3;
  auto ws = make_workspace(cfg);
  std::vector<double> M0(ws.node_count * ws.dim, 0.0);
  auto F = assemble_rhs(0.0, M0, cfg, ws);
  for (double v : F) CHECK(v == doctest::Approx(0.0));

  SolverConfig forced = cfg;
  forced.forcing.modes = {{1.0, 0.0, 0.0}};
  F = assemble_rhs(0.3, M0, forced, ws);
  CHECK(F[0] == doctest::Approx(1.0));
  CHECK(F[1] == doctest::Approx(0.0));
  CHECK(F[2] == doctest::Approx(0.0));

  // D = 1, c = e_1, constant kernel, t = 1: F_1 = lambda_1 * (K*c)(1) = 1
  SolverConfig lap = oracle_config();
  lap.dt = 0.25;
  lap.kernel = {MemoryKernel::Kind::constant, 1.0, 0.0, 0.0, 1.0};
  auto ws1 = make_workspace(lap);
  GalerkinTrajectory traj = constant_history(lap, ws1, {1.0}, 4);
  auto M = memory_convolution(traj, 4, lap.kernel);
  F = assemble_rhs(1.0, M, lap, ws1);
  CHECK(F[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("step: zero data stays zero, constant phi freezes the state") {
  SolverConfig cfg = oracle_config();
  cfg.initial.values = {0.0};
  auto traj = solve(cfg);
  REQUIRE(!traj.failed);
  for (const auto& row : traj.c)
    for (double v : row) CHECK(v == 0.0);

  SolverConfig ct = oracle_config();
  ct.phi.kind = Nonlinearity::Kind::constant;
  ct.phi.b = 2.0;
  ct.initial.values = {0.7};
  traj = solve(ct);
  REQUIRE(!traj.failed);
  for (const auto& row : traj.c) CHECK(row[0] == 0.7);  // exact, not approximate
}

TEST_CASE("solve: determinism is bitwise") {
  SolverConfig cfg = oracle_config();
  cfg.N = 2;
  cfg.initial.values = {1.0, -0.3};
  cfg.field = {0.5, 2.0, 8, 3};
  auto a = solve(cfg);
  auto b = solve(cfg);
  REQUIRE(!a.failed);
  CHECK(a.c == b.c);
  CHECK(a.cprime == b.cprime);
  CHECK(a.flux == b.flux);
}

TEST_CASE("solve: linear in the initial data when f = 0") {
  SolverConfig cfg = oracle_config();
  cfg.T = 0.5;
  cfg.dt = 1e-3 / 2;
  auto base = solve(cfg);
  SolverConfig scaled = cfg;
  scaled.initial.values = {2.0};
  auto twice = solve(scaled);
  REQUIRE(!base.failed);
  for (size_t k = 0; k < base.t.size(); k += 50)
    CHECK(twice.c[k][0] == doctest::Approx(2.0 * base.c[k][0]).epsilon(1e-10));
}

TEST_CASE("solve: modes decouple for linear phi and constant D") {
  SolverConfig cfg = oracle_config();
  cfg.N = 4;
  cfg.initial.values = {0.0, 1.0, 0.0, 0.0};
  cfg.T = 0.25;
  cfg.dt = 2.5e-4;
  auto traj = solve(cfg);
  REQUIRE(!traj.failed);
  for (size_t k = 0; k < traj.t.size(); k += 100) {
    CHECK(std::abs(traj.c[k][0]) <= 1e-10);
    CHECK(std::abs(traj.c[k][2]) <= 1e-10);
    CHECK(std::abs(traj.c[k][3]) <= 1e-10);
  }
  CHECK(std::abs(traj.c.back()[1]) > 1.0);  // the seeded mode moved
}

TEST_CASE("solve matches the closed form on the benchmark mode") {
  SolverConfig cfg = oracle_config();
  auto numeric = solve(cfg);
  auto oracle = oracle_linear(cfg);
  REQUIRE(!numeric.failed);
  double mu_p = (-1.0 + std::sqrt(5.0)) / 2.0;
  double mu_m = (-1.0 - std::sqrt(5.0)) / 2.0;
  double want =
      (mu_p * std::exp(mu_m) - mu_m * std::exp(mu_p)) / (mu_p - mu_m);
  CHECK(oracle.c.back()[0] == doctest::Approx(want).epsilon(1e-12));
  CHECK(max_rel_error(numeric, oracle) <= 1e-4);
}

TEST_CASE("perturbed initial data stays inside the Lipschitz envelope") {
  SolverConfig cfg = oracle_config();
  cfg.N = 4;
  cfg.phi.kind = Nonlinearity::Kind::power;
  cfg.phi.m = 3.0;
  cfg.field = {0.8, 0.8, 1, 0};
  cfg.initial.kind = InitialCondition::Kind::parabola;
  auto grid = build_quadrature(cfg.domain, effective_panels(cfg), cfg.quad_points);
  auto c0 = initial_coefficients(cfg, grid);
  for (double& v : c0) v *= 0.05;
  cfg.initial.kind = InitialCondition::Kind::coefficients;
  cfg.initial.values = c0;

  auto base = solve(cfg);
  REQUIRE(!base.failed);
  RandomField field = sample_field(cfg.field, cfg.domain, cfg.realization);
  double lam = lipschitz_diagnostic(base, cfg, field);

  for (int mode : {0, 3}) {
    SolverConfig pert = cfg;
    pert.initial.values[mode] += 1e-6;
    auto other = solve(pert);
    REQUIRE(!other.failed);
    for (size_t k = 0; k < base.t.size(); k += 25) {
      double gap = 0.0;
      for (int i = 0; i < cfg.N; ++i) {
        double d = other.c[k][i] - base.c[k][i];
        gap += d * d;
      }
      gap = std::sqrt(gap);
      CHECK(gap <= 1e-6 * std::exp(lam * base.t[k]) * 1.1);
    }
  }
}

TEST_CASE("runaway flux is reported, prefix kept finite") {
  SolverConfig cfg = oracle_config();
  cfg.phi.kind = Nonlinearity::Kind::power;
  cfg.phi.m = 3.0;
  cfg.phi.a = 5.0;
  cfg.initial.values = {5.0};
  cfg.T = 10.0;
  cfg.dt = 0.1;
  auto traj = solve(cfg);
  REQUIRE(traj.failed);
  CHECK(traj.failed_step > 0);
  CHECK(!traj.failure_message.empty());
  CHECK(traj.t.size() == size_t(traj.failed_step));
  for (const auto& row : traj.c)
    for (double v : row) CHECK(std::isfinite(v));
}
