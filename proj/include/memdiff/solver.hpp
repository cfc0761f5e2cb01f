#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "memdiff/config.hpp"

namespace memdiff {

// Computed Galerkin trajectory. Flux history g(t_k, node) = Phi'(u)grad(u) is
// stored at quadrature nodes (that product is the expensive part of the
// memory convolution). On numerical failure only the finite prefix is kept.
struct GalerkinTrajectory {
  std::vector<double> t;
  std::vector<std::vector<double>> c;       // (steps+1) x N
  std::vector<std::vector<double>> cprime;  // (steps+1) x N
  std::vector<std::vector<double>> flux;    // (steps+1) x (nodes*dim)
  int N = 0;
  int dim = 1;
  std::size_t nodes = 0;
  bool failed = false;
  int failed_step = -1;
  std::string failure_message;

  std::size_t steps() const { return t.empty() ? 0 : t.size() - 1; }
};

// Precomputed tables for one solve: grid, eigenpairs, basis values and
// gradients at the nodes, and the sampled field.
struct SolverWorkspace {
  QuadratureGrid grid;
  std::vector<Eigenpair> eigs;
  std::vector<double> basis;  // [i*nodes + q]
  std::vector<double> grad;   // [i*nodes*dim + q*dim + d]
  RandomField field;
  std::vector<double> weightD;  // weights[q] * D(x_q)
  double field_sup_value = 0.0;
  int N = 0;
  int dim = 1;
  std::size_t node_count = 0;
};

SolverWorkspace make_workspace(const SolverConfig& cfg);

void flux_at_nodes(const std::vector<double>& c, const Nonlinearity& phi,
                   const SolverWorkspace& ws, std::vector<double>& out);

// M_k(node) ~ integral over (0, t_k) of K(t_k - s) g(s, node) ds by product
// trapezoid (kernel integrated exactly per panel against piecewise-linear g).
// Requires flux history stored through step k; throws std::logic_error else.
std::vector<double> memory_convolution(const GalerkinTrajectory& traj, int k,
                                       const MemoryKernel& kernel);

// F_i = <f(t), e_i> - integral of D * M_vals . grad e_i
std::vector<double> assemble_rhs(double t, const std::vector<double>& M_vals,
                                 const SolverConfig& cfg, const SolverWorkspace& ws);

// One Heun (explicit trapezoid) step k -> k+1. The corrector re-evaluates the
// convolution with the predictor's flux appended at t_{k+1}. Returns false on
// non-finite state, in which case traj carries the failure marker.
bool step(GalerkinTrajectory& traj, int k, const SolverConfig& cfg,
          const SolverWorkspace& ws);

GalerkinTrajectory solve(const SolverConfig& cfg);

}  // namespace memdiff
