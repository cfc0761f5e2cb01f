#include "memdiff/harness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace memdiff {

double bump(double t, double T) {
  double s = t * (T - t);
  return 16.0 * s * s / (T * T * T * T);
}

double bump_prime(double t, double T) {
  return 32.0 * t * (T - t) * (T - 2.0 * t) / (T * T * T * T);
}

GalerkinTrajectory oracle_linear(const SolverConfig& cfg) {
  bool linear = cfg.phi.kind == Nonlinearity::Kind::linear;
  bool constant = cfg.phi.kind == Nonlinearity::Kind::constant;
  if (!linear && !constant)
    throw std::invalid_argument("oracle_linear: nonlinearity must be linear or constant");
  if (cfg.kernel.kind != MemoryKernel::Kind::exponential)
    throw std::invalid_argument("oracle_linear: kernel must be exponential");
  if (cfg.field.d_min != cfg.field.d_max)
    throw std::invalid_argument("oracle_linear: diffusivity must be constant");
  for (const auto& mode : cfg.forcing.modes)
    if (mode.b != 0.0)
      throw std::invalid_argument("oracle_linear: forcing must be constant in time");
  double a = linear ? cfg.phi.a : 0.0;
  if (a < 0.0)
    throw std::invalid_argument("oracle_linear: slope a must be non-negative");

  double D = cfg.field.d_min;
  double kap = cfg.kernel.kappa;
  double lamK = cfg.kernel.lambda;
  int S = step_count(cfg);
  auto eigs = eigenpairs(cfg.domain, cfg.N);

  GalerkinTrajectory traj;
  traj.N = cfg.N;
  traj.dim = cfg.domain.dim();
  traj.nodes = 0;
  traj.t.resize(S + 1);
  for (int k = 0; k <= S; ++k) traj.t[k] = cfg.dt * k;
  traj.c.assign(S + 1, std::vector<double>(cfg.N, 0.0));
  traj.cprime.assign(S + 1, std::vector<double>(cfg.N, 0.0));

  QuadratureGrid grid = build_quadrature(cfg.domain, effective_panels(cfg), cfg.quad_points);
  std::vector<double> c0 = initial_coefficients(cfg, grid);

  for (int i = 0; i < cfg.N; ++i) {
    double w = a * D * eigs[i].lambda;
    double fi = forcing_value(cfg.forcing, i + 1, 0.0);
    if (w == 0.0) {
      // flux plays no role: pure forcing
      for (int k = 0; k <= S; ++k) {
        traj.c[k][i] = c0[i] + fi * traj.t[k];
        traj.cprime[k][i] = fi;
      }
      continue;
    }
    double disc = lamK * lamK + 4.0 * w * kap;
    double root = std::sqrt(disc);
    double mu_p = 0.5 * (-lamK + root);
    double mu_m = 0.5 * (-lamK - root);
    // particular solution for constant forcing, then match z(0) = (c0, 0)
    double cp = -lamK * fi / (w * kap);
    double yp = -fi / w;
    double r1 = c0[i] - cp;
    double r2 = -yp;
    double den = w * (mu_m - mu_p);
    double al_p = (r1 * mu_m - w * r2) / den;
    double al_m = (w * r2 - mu_p * r1) / den;
    for (int k = 0; k <= S; ++k) {
      double ep = std::exp(mu_p * traj.t[k]);
      double em = std::exp(mu_m * traj.t[k]);
      double y = al_p * mu_p * ep + al_m * mu_m * em + yp;
      traj.c[k][i] = w * (al_p * ep + al_m * em) + cp;
      traj.cprime[k][i] = w * y + fi;
    }
  }
  return traj;
}

double max_rel_error(const GalerkinTrajectory& numeric, const GalerkinTrajectory& oracle) {
  if (numeric.failed) return std::numeric_limits<double>::infinity();
  size_t rows = std::min(numeric.t.size(), oracle.t.size());
  double num = 0.0, den = 0.0;
  for (size_t k = 0; k < rows; ++k)
    for (int i = 0; i < oracle.N; ++i) {
      num = std::max(num, std::abs(numeric.c[k][i] - oracle.c[k][i]));
      den = std::max(den, std::abs(oracle.c[k][i]));
    }
  return den > 0.0 ? num / den : num;
}

namespace {
void attach_orders(ConvergenceTable& table, const std::vector<double>& scales) {
  for (size_t r = 1; r < table.size(); ++r) {
    double ep = table[r - 1].error, ec = table[r].error;
    if (std::isfinite(ep) && std::isfinite(ec) && ec > 0.0) {
      table[r].ratio = ep / ec;
      table[r].order =
          std::log(ep / ec) / std::abs(std::log(scales[r] / scales[r - 1]));
      table[r].has_order = true;
    }
  }
}
}  // namespace

ConvergenceTable refine_dt(const SolverConfig& cfg, const std::vector<double>& dts) {
  ConvergenceTable table;
  std::vector<double> scales;
  for (double dt : dts) {
    SolverConfig run = cfg;
    run.dt = dt;
    GalerkinTrajectory oracle = oracle_linear(run);  // throws outside the class
    GalerkinTrajectory numeric = solve(run);
    double err = numeric.failed ? std::numeric_limits<double>::quiet_NaN()
                                : max_rel_error(numeric, oracle);
    table.push_back({"dt", dt, err, 0.0, 0.0, false});
    scales.push_back(dt);
  }
  attach_orders(table, scales);
  return table;
}

ConvergenceTable refine_N(const SolverConfig& cfg, const std::vector<int>& Ns) {
  for (size_t r = 1; r < Ns.size(); ++r)
    if (Ns[r] <= Ns[r - 1])
      throw std::invalid_argument("refine_N: N list must be strictly increasing");
  for (int N : Ns)
    if (cfg.quad_panels > 0 && 2 * N > cfg.quad_panels * cfg.quad_points)
      throw std::invalid_argument("refine_N: N exceeds the quadrature resolution bound");

  std::vector<GalerkinTrajectory> runs;
  for (int N : Ns) {
    SolverConfig run = cfg;
    run.N = N;
    runs.push_back(solve(run));
  }

  ConvergenceTable table;
  std::vector<double> scales;
  for (size_t r = 0; r + 1 < runs.size(); ++r) {
    const GalerkinTrajectory& A = runs[r];
    const GalerkinTrajectory& B = runs[r + 1];
    double err;
    if (A.failed || B.failed) {
      err = std::numeric_limits<double>::quiet_NaN();
    } else {
      // || u^{Na} - u^{Nb} ||_{L2(0,T;L2)}: zero-pad coarse into fine, exact
      // under the shared eigenbasis, trapezoid in time
      std::vector<double> sq(A.t.size(), 0.0);
      for (size_t k = 0; k < A.t.size(); ++k) {
        double s = 0.0;
        for (int i = 0; i < B.N; ++i) {
          double ca = i < A.N ? A.c[k][i] : 0.0;
          double d = ca - B.c[k][i];
          s += d * d;
        }
        sq[k] = s;
      }
      double acc = 0.0;
      for (size_t k = 1; k < sq.size(); ++k)
        acc += 0.5 * (A.t[k] - A.t[k - 1]) * (sq[k] + sq[k - 1]);
      err = std::sqrt(acc);
    }
    table.push_back({"N", static_cast<double>(Ns[r]), err, 0.0, 0.0, false});
    scales.push_back(static_cast<double>(Ns[r]));
  }
  attach_orders(table, scales);
  return table;
}

double weak_residual(const GalerkinTrajectory& traj, const TestFunction& phi,
                     const SolverConfig& cfg) {
  if (phi.j < 1 || phi.j > traj.N)
    throw std::invalid_argument("weak_residual: test mode index out of range");
  SolverWorkspace ws = make_workspace(cfg);
  int j = phi.j;
  double T = cfg.T;
  size_t S = traj.steps();

  std::vector<double> integrand_a(S + 1), integrand_b(S + 1), integrand_c(S + 1);
  for (size_t k = 0; k <= S; ++k) {
    double t = traj.t[k];
    integrand_a[k] = traj.c[k][j - 1] * bump_prime(t, T);
    std::vector<double> M = memory_convolution(traj, static_cast<int>(k), cfg.kernel);
    double s = 0.0;
    for (size_t q = 0; q < ws.node_count; ++q) {
      double dot = M[q * ws.dim + 0] * ws.grad[((j - 1) * ws.node_count + q) * ws.dim + 0];
      if (ws.dim == 2)
        dot += M[q * ws.dim + 1] * ws.grad[((j - 1) * ws.node_count + q) * ws.dim + 1];
      s += ws.weightD[q] * dot;
    }
    integrand_b[k] = bump(t, T) * s;
    integrand_c[k] = forcing_value(cfg.forcing, j, t) * bump(t, T);
  }
  auto trapz = [&](const std::vector<double>& v) {
    double acc = 0.0;
    for (size_t k = 1; k <= S; ++k)
      acc += 0.5 * (traj.t[k] - traj.t[k - 1]) * (v[k] + v[k - 1]);
    return acc;
  };
  return std::abs(-trapz(integrand_a) + trapz(integrand_b) - trapz(integrand_c));
}

std::vector<CertificateReport> seed_sweep(const SolverConfig& cfg, int n_seeds) {
  if (n_seeds < 1) throw std::invalid_argument("seed_sweep: need at least one realization");
  std::vector<CertificateReport> out;
  out.reserve(n_seeds);
  for (int r = 0; r < n_seeds; ++r) {
    SolverConfig run = cfg;
    run.realization = static_cast<uint64_t>(r);
    RandomField field = sample_field(run.field, run.domain, run.realization);
    EnergyConstants consts = compute_constants(run, field);
    GalerkinTrajectory traj = solve(run);
    out.push_back(certify(traj, consts));
  }
  return out;
}

}  // namespace memdiff
