#include "memdiff/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace memdiff {

SolverWorkspace make_workspace(const SolverConfig& cfg) {
  SolverWorkspace ws;
  ws.N = cfg.N;
  ws.dim = cfg.domain.dim();
  ws.grid = build_quadrature(cfg.domain, effective_panels(cfg), cfg.quad_points);
  ws.eigs = eigenpairs(cfg.domain, cfg.N);
  ws.node_count = ws.grid.nodes.size();

  ws.basis.resize(static_cast<size_t>(cfg.N) * ws.node_count);
  ws.grad.resize(static_cast<size_t>(cfg.N) * ws.node_count * ws.dim);
  for (int i = 0; i < cfg.N; ++i)
    for (size_t q = 0; q < ws.node_count; ++q) {
      ws.basis[i * ws.node_count + q] =
          eigen_eval(cfg.domain, ws.eigs[i], ws.grid.nodes[q]);
      Point g = eigen_grad(cfg.domain, ws.eigs[i], ws.grid.nodes[q]);
      for (int d = 0; d < ws.dim; ++d)
        ws.grad[(i * ws.node_count + q) * ws.dim + d] = g[d];
    }

  ws.field = sample_field(cfg.field, cfg.domain, cfg.realization);
  ws.field_sup_value = field_sup(ws.field);
  ws.weightD.resize(ws.node_count);
  for (size_t q = 0; q < ws.node_count; ++q)
    ws.weightD[q] = ws.grid.weights[q] * field_eval(ws.field, ws.grid.nodes[q]);
  return ws;
}

void flux_at_nodes(const std::vector<double>& c, const Nonlinearity& phi,
                   const SolverWorkspace& ws, std::vector<double>& out) {
  out.assign(ws.node_count * ws.dim, 0.0);
  for (size_t q = 0; q < ws.node_count; ++q) {
    double u = 0.0;
    double gx = 0.0, gy = 0.0;
    for (int i = 0; i < ws.N; ++i) {
      double ci = c[i];
      u += ci * ws.basis[i * ws.node_count + q];
      gx += ci * ws.grad[(i * ws.node_count + q) * ws.dim + 0];
      if (ws.dim == 2) gy += ci * ws.grad[(i * ws.node_count + q) * ws.dim + 1];
    }
    double pp = phi_prime(phi, u);
    out[q * ws.dim + 0] = pp * gx;
    if (ws.dim == 2) out[q * ws.dim + 1] = pp * gy;
  }
}

std::vector<double> memory_convolution(const GalerkinTrajectory& traj, int k,
                                       const MemoryKernel& kernel) {
  if (k < 0 || static_cast<size_t>(k) >= traj.flux.size())
    throw std::logic_error("memory_convolution: flux history missing for requested step");
  size_t width = traj.nodes * traj.dim;
  std::vector<double> M(width, 0.0);
  if (k == 0) return M;
  double dt = traj.t[1] - traj.t[0];
  for (int r = 1; r <= k; ++r) {
    double m0 = kernel_m0(kernel, r, dt);
    double m1 = kernel_m1(kernel, r, dt);
    const std::vector<double>& g_old = traj.flux[k - r];      // value at tau = r dt
    const std::vector<double>& g_new = traj.flux[k - r + 1];  // value at tau = (r-1) dt
    double w_new = m0 - m1;
    for (size_t j = 0; j < width; ++j) M[j] += m1 * g_old[j] + w_new * g_new[j];
  }
  return M;
}

std::vector<double> assemble_rhs(double t, const std::vector<double>& M_vals,
                                 const SolverConfig& cfg, const SolverWorkspace& ws) {
  std::vector<double> F = forcing_vector(cfg.forcing, cfg.N, t);
  for (int i = 0; i < ws.N; ++i) {
    double s = 0.0;
    for (size_t q = 0; q < ws.node_count; ++q) {
      double dot = M_vals[q * ws.dim + 0] * ws.grad[(i * ws.node_count + q) * ws.dim + 0];
      if (ws.dim == 2)
        dot += M_vals[q * ws.dim + 1] * ws.grad[(i * ws.node_count + q) * ws.dim + 1];
      s += ws.weightD[q] * dot;
    }
    F[i] -= s;
  }
  return F;
}

namespace {
bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}
}  // namespace

bool step(GalerkinTrajectory& traj, int k, const SolverConfig& cfg,
          const SolverWorkspace& ws) {
  double dt = cfg.dt;
  double tk = traj.t[k];

  std::vector<double> M = memory_convolution(traj, k, cfg.kernel);
  std::vector<double> s1 = assemble_rhs(tk, M, cfg, ws);
  traj.cprime[k] = s1;

  // predictor state and its flux become the provisional row k+1
  std::vector<double> cpred(traj.c[k]);
  for (int i = 0; i < ws.N; ++i) cpred[i] += dt * s1[i];
  flux_at_nodes(cpred, cfg.phi, ws, traj.flux[k + 1]);

  std::vector<double> M1 = memory_convolution(traj, k + 1, cfg.kernel);
  std::vector<double> s2 = assemble_rhs(tk + dt, M1, cfg, ws);

  std::vector<double>& cnext = traj.c[k + 1];
  cnext = traj.c[k];
  for (int i = 0; i < ws.N; ++i) cnext[i] += 0.5 * dt * (s1[i] + s2[i]);

  if (!all_finite(cnext)) {
    traj.failed = true;
    traj.failed_step = k + 1;
    traj.failure_message =
        "non-finite state at step " + std::to_string(k + 1) + " (t = " +
        std::to_string(tk + dt) + ")";
    return false;
  }
  // corrected flux overwrites the predictor row
  flux_at_nodes(cnext, cfg.phi, ws, traj.flux[k + 1]);
  return true;
}

GalerkinTrajectory solve(const SolverConfig& cfg) {
  SolverWorkspace ws = make_workspace(cfg);
  int S = step_count(cfg);

  GalerkinTrajectory traj;
  traj.N = cfg.N;
  traj.dim = ws.dim;
  traj.nodes = ws.node_count;
  traj.t.resize(S + 1);
  for (int k = 0; k <= S; ++k) traj.t[k] = cfg.dt * k;
  traj.c.assign(S + 1, std::vector<double>(cfg.N, 0.0));
  traj.cprime.assign(S + 1, std::vector<double>(cfg.N, 0.0));
  traj.flux.assign(S + 1, std::vector<double>(ws.node_count * ws.dim, 0.0));

  traj.c[0] = initial_coefficients(cfg, ws.grid);
  flux_at_nodes(traj.c[0], cfg.phi, ws, traj.flux[0]);

  for (int k = 0; k < S; ++k) {
    if (!step(traj, k, cfg, ws)) {
      // keep the finite prefix for diagnostics
      traj.t.resize(k + 1);
      traj.c.resize(k + 1);
      traj.cprime.resize(k + 1);
      traj.flux.resize(k + 1);
      return traj;
    }
  }
  std::vector<double> M = memory_convolution(traj, S, cfg.kernel);
  traj.cprime[S] = assemble_rhs(traj.t[S], M, cfg, ws);
  return traj;
}

}  // namespace memdiff
