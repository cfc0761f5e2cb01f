#pragma once

#include <cstdint>
#include <vector>

#include "memdiff/geometry.hpp"
#include "memdiff/kernels.hpp"
#include "memdiff/media.hpp"
#include "memdiff/nonlinearity.hpp"
#include "memdiff/violation.hpp"

namespace memdiff {

// Modal forcing f_i(t) = a_i + b_i*cos(omega_i*t) for modes i = 1..N_f,
// so <f, e_i> is exact and ||f||_{H^-1} has a closed spectral form.
struct ForcingMode {
  double a = 0.0;
  double b = 0.0;
  double omega = 0.0;
};

struct Forcing {
  std::vector<ForcingMode> modes;
};

double forcing_value(const Forcing& f, int i, double t);  // i is 1-based
std::vector<double> forcing_vector(const Forcing& f, int N, double t);

// sup over the time grid of sqrt(sum f_i(t)^2 / lambda_i)
double forcing_hminus1_sup(const Forcing& f, const std::vector<Eigenpair>& eigs,
                           double T, int steps);

struct InitialCondition {
  enum class Kind { zero, coefficients, parabola };
  Kind kind = Kind::zero;
  std::vector<double> values;  // for Kind::coefficients
};

struct SolverConfig {
  DomainSpec domain;
  int N = 1;
  double T = 1.0;
  double dt = 1e-3;
  MemoryKernel kernel;
  Nonlinearity phi;
  FieldSpec field;
  Forcing forcing;
  InitialCondition initial;
  int quad_panels = 0;  // 0 = default max(8, 2N)
  int quad_points = 4;
  uint64_t realization = 0;
};

int step_count(const SolverConfig& cfg);
int effective_panels(const SolverConfig& cfg);

// Full hypothesis check, including the explicit-scheme stability guard
// dt * sup D * L_phi * lambda_N * ||K||_L1 <= 0.5 (needs a field sample).
Violations validate_config(const SolverConfig& cfg);

// P^N u0 as plain coefficients on the given grid.
std::vector<double> initial_coefficients(const SolverConfig& cfg,
                                         const QuadratureGrid& grid);

}  // namespace memdiff
