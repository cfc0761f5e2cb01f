#include <cmath>
#include <stdexcept>

#include "common.hpp"
#include "doctest.h"
#include "memdiff/harness.hpp"

using namespace memdiff;
using memdiff::testing::benchmark_config;
using memdiff::testing::oracle_config;

TEST_CASE("bump function endpoints and normalization") {
  double T = 0.7;
  CHECK(bump(0.0, T) == doctest::Approx(0.0));
  CHECK(bump(T, T) == doctest::Approx(0.0));
  CHECK(bump(T / 2, T) == doctest::Approx(1.0));
  CHECK(bump_prime(0.0, T) == doctest::Approx(0.0));
  CHECK(bump_prime(T / 2, T) == doctest::Approx(0.0));
  double h = 1e-7;
  double fd = (bump(0.3 + h, T) - bump(0.3 - h, T)) / (2 * h);
  CHECK(bump_prime(0.3, T) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("oracle satisfies its own 2x2 system under finite differences") {
  SolverConfig cfg = oracle_config();
  cfg.N = 2;
  cfg.initial.values = {1.0, -0.4};
  cfg.forcing.modes = {{0.5, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  cfg.field = {0.7, 0.7, 1, 0};
  auto eigs = eigenpairs(cfg.domain, cfg.N);
  double h = 1e-5;
  for (double t : {0.25, 0.5, 0.75}) {
    SolverConfig at = cfg;
    // sample the closed form on a tiny grid around t
    at.dt = h;
    at.T = t + 2 * h;
    int k = int(std::llround(t / h));
    auto tr = oracle_linear(at);
    for (int i = 0; i < cfg.N; ++i) {
      double cdot_fd = (tr.c[k + 1][i] - tr.c[k - 1][i]) / (2 * h);
      CHECK(std::abs(cdot_fd - tr.cprime[k][i]) <= 1e-6 * (1.0 + std::abs(cdot_fd)));
      // second equation via the reported derivative: y = (c' - f)/w satisfies
      // y' = kappa c - lambda y
      double w = cfg.phi.a * 0.7 * eigs[i].lambda;
      double f = forcing_value(cfg.forcing, i + 1, 0.0);
      double y_m = (tr.cprime[k - 1][i] - f) / w;
      double y_p = (tr.cprime[k + 1][i] - f) / w;
      double y_0 = (tr.cprime[k][i] - f) / w;
      double ydot_fd = (y_p - y_m) / (2 * h);
      double rhs = cfg.kernel.kappa * tr.c[k][i] - cfg.kernel.lambda * y_0;
      CHECK(std::abs(ydot_fd - rhs) <= 1e-6 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("oracle trivial members") {
  SolverConfig cfg = oracle_config();
  cfg.initial.values = {0.0};
  auto tr = oracle_linear(cfg);
  for (const auto& row : tr.c) CHECK(row[0] == 0.0);

  // a = 0: pure forcing, c = c0 + f t
  SolverConfig pf = oracle_config();
  pf.phi.a = 0.0;
  pf.initial.values = {0.3};
  pf.forcing.modes = {{2.0, 0.0, 0.0}};
  tr = oracle_linear(pf);
  CHECK(tr.c.back()[0] == doctest::Approx(0.3 + 2.0 * pf.T).epsilon(1e-12));
}

TEST_CASE("oracle rejects configs outside the closed-form class") {
  SolverConfig cfg = oracle_config();
  cfg.phi.kind = Nonlinearity::Kind::power;
  CHECK_THROWS_AS(oracle_linear(cfg), std::invalid_argument);

  cfg = oracle_config();
  cfg.kernel.kind = MemoryKernel::Kind::power;
  CHECK_THROWS_AS(oracle_linear(cfg), std::invalid_argument);

  cfg = oracle_config();
  cfg.field = {0.5, 2.0, 4, 0};
  CHECK_THROWS_AS(oracle_linear(cfg), std::invalid_argument);

  cfg = oracle_config();
  cfg.forcing.modes = {{1.0, 0.5, 2.0}};
  CHECK_THROWS_AS(oracle_linear(cfg), std::invalid_argument);
}

TEST_CASE("temporal refinement against the oracle") {
  SolverConfig cfg = oracle_config();
  auto table = refine_dt(cfg, {4e-3, 2e-3, 1e-3});
  REQUIRE(table.size() == 3);
  CHECK(table[0].param == "dt");
  CHECK(!table[0].has_order);
  CHECK(table[0].error < 1e-5);
  for (size_t r = 1; r < 3; ++r) {
    REQUIRE(table[r].has_order);
    CHECK(table[r].error < table[r - 1].error);
    CHECK(table[r].order > 1.7);
    CHECK(table[r].order < 2.3);
  }

  auto single = refine_dt(cfg, {1e-3});
  REQUIRE(single.size() == 1);
  CHECK(!single[0].has_order);

  SolverConfig outside = oracle_config();
  outside.phi.kind = Nonlinearity::Kind::power;
  CHECK_THROWS_AS(refine_dt(outside, {1e-3}), std::invalid_argument);
}

TEST_CASE("spectral refinement: decoupled linear case collapses") {
  // u0 lives in V_1 and modes never couple, so successive levels agree
  SolverConfig cfg = oracle_config();
  cfg.T = 0.25;
  cfg.dt = 2.5e-4;
  cfg.initial.kind = InitialCondition::Kind::coefficients;
  cfg.initial.values = {1.0};
  auto table = refine_N(cfg, {1, 2, 4});
  REQUIRE(table.size() == 2);
  CHECK(table[0].param == "N");
  CHECK(table[0].value == 1.0);
  CHECK(table[0].error <= 1e-10);
  CHECK(table[1].error <= 1e-10);

  CHECK_THROWS_AS(refine_N(cfg, {8, 4}), std::invalid_argument);
}

TEST_CASE("weak residual: zero trajectory, magnitude, direction") {
  SolverConfig cfg = oracle_config();
  cfg.N = 4;
  cfg.T = 1.0;
  cfg.dt = 2e-3;
  cfg.initial.values = {1.0};
  auto traj = solve(cfg);
  REQUIRE(!traj.failed);

  SolverConfig zero = cfg;
  zero.initial.values = {0.0};
  auto ztraj = solve(zero);
  CHECK(weak_residual(ztraj, {1}, zero) == doctest::Approx(0.0));

  double r = weak_residual(traj, {1}, cfg);
  CHECK(r < 1e-3);

  // corrupting the trajectory must blow the residual up
  GalerkinTrajectory bad = traj;
  for (auto& row : bad.c)
    for (double& v : row) v *= 2.0;
  CHECK(weak_residual(bad, {1}, cfg) > 10.0 * r);

  CHECK_THROWS_AS(weak_residual(traj, {9}, cfg), std::invalid_argument);
}

TEST_CASE("weak residual decreases under dt refinement") {
  SolverConfig cfg = oracle_config();
  cfg.N = 4;
  cfg.initial.values = {1.0};
  cfg.dt = 2e-3;
  auto coarse = solve(cfg);
  SolverConfig fine_cfg = cfg;
  fine_cfg.dt = 1e-3;
  auto fine = solve(fine_cfg);
  double rc = weak_residual(coarse, {1}, cfg);
  double rf = weak_residual(fine, {1}, fine_cfg);
  CHECK(rf * 2.0 <= rc);
}

TEST_CASE("seed sweep: determinism and degenerate field") {
  SolverConfig cfg = benchmark_config(2.0);
  cfg.T = 0.05;
  cfg.dt = 5e-4;
  cfg.field = {1.0, 1.0, 8, 0};  // degenerate: every realization identical
  auto reports = seed_sweep(cfg, 3);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].E == reports[1].E);
  CHECK(reports[1].E == reports[2].E);
  CHECK(reports[0].pass == reports[2].pass);

  cfg.field = {0.5, 2.0, 8, 1};
  auto a = seed_sweep(cfg, 2);
  auto b = seed_sweep(cfg, 2);
  CHECK(a[0].E == b[0].E);
  CHECK(a[1].margin == b[1].margin);
  CHECK(a[0].E != a[1].E);  // realizations differ

  CHECK_THROWS_AS(seed_sweep(cfg, 0), std::invalid_argument);
}
