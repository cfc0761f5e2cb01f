#pragma once

#include <string>
#include <vector>

#include "memdiff/analysis.hpp"
#include "memdiff/solver.hpp"

namespace memdiff {

// Separable test function phi(x,t) = e_j(x) * eta(t) with a polynomial bump
// eta(t) = 16 t^2 (T-t)^2 / T^4 (max 1, vanishing endpoints).
struct TestFunction {
  int j = 1;
};

double bump(double t, double T);
double bump_prime(double t, double T);

struct ConvergenceRow {
  std::string param;
  double value = 0.0;
  double error = 0.0;
  double ratio = 0.0;  // error_prev / error, adjacent rows only
  double order = 0.0;
  bool has_order = false;
};
using ConvergenceTable = std::vector<ConvergenceRow>;

// Closed-form trajectory for the linear class (Phi linear or constant, kernel
// exponential, constant D, constant-in-time modal forcing): per mode the
// equivalent local system c' = a*D*lambda_i*y + f_i, y' = kappa*c - lambda_K*y
// solved by 2x2 eigendecomposition. Throws std::invalid_argument outside the
// class.
GalerkinTrajectory oracle_linear(const SolverConfig& cfg);

// max over time of the relative coefficient gap (sup norm per step).
double max_rel_error(const GalerkinTrajectory& numeric, const GalerkinTrajectory& oracle);

ConvergenceTable refine_dt(const SolverConfig& cfg, const std::vector<double>& dts);

// Cauchy differences ||u^Na - u^Nb||_{L2(0,T;L2)} between consecutive Galerkin
// levels, coarse coefficients zero-padded into the finer space.
ConvergenceTable refine_N(const SolverConfig& cfg, const std::vector<int>& Ns);

// Absolute residual of the weak form against phi = (e_j, bump):
//   | -II u d_t(phi) + II D M(u) . grad(phi) - II f phi |
double weak_residual(const GalerkinTrajectory& traj, const TestFunction& phi,
                     const SolverConfig& cfg);

// Independent field realizations (0..n-1) under the config's master seed; one
// solve + certificate each. Individual failures are recorded, never fatal.
std::vector<CertificateReport> seed_sweep(const SolverConfig& cfg, int n_seeds);

}  // namespace memdiff
