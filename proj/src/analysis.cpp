#include "memdiff/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace memdiff {

double poincare_constant(const DomainSpec& dom) {
  return 1.0 / std::sqrt(eigenpairs(dom, 1)[0].lambda);
}

double select_lambda(double f_norm, double D_sup, double K_l1, double C_Omega) {
  constexpr double lambda_floor = 1e-3;
  return std::max(2.0 * C_Omega * f_norm / (D_sup * K_l1), lambda_floor);
}

EnergyConstants compute_constants(const SolverConfig& cfg, const RandomField& field) {
  EnergyConstants k;
  k.domain = cfg.domain;
  k.T = cfg.T;
  k.m = cfg.phi.m;
  k.measure = cfg.domain.measure();
  k.C_Omega = poincare_constant(cfg.domain);
  k.D_sup = field_sup(field);

  MemoryKernel kern = cfg.kernel;
  kern.T = cfg.T;
  k.K_l1 = l1_norm(kern);
  k.L_phi = cfg.phi.L;

  auto eigs = eigenpairs(cfg.domain, cfg.N);
  k.f_norm = forcing_hminus1_sup(cfg.forcing, eigs, cfg.T, step_count(cfg));
  k.lambda_Y = select_lambda(k.f_norm, k.D_sup, k.K_l1, k.C_Omega);

  double base = k.D_sup * k.K_l1 * k.L_phi / (2.0 * k.lambda_Y);
  k.C1 = base * std::sqrt(k.measure);
  k.C2 = base * std::pow(k.measure, (3.0 - k.m) / 2.0);
  k.p = (k.m - 1.0) / 4.0;
  k.q = 1.0 - k.p;

  QuadratureGrid grid = build_quadrature(cfg.domain, effective_panels(cfg), cfg.quad_points);
  std::vector<double> c0 = initial_coefficients(cfg, grid);
  double e0 = 0.0;
  for (double ci : c0) e0 += ci * ci;
  k.E0 = e0;

  k.x0 = bainov_root(k.E0, k.T, k.C1, k.C2, k.p);
  double tmax = std::max({1.0, k.T, std::pow(k.T, 1.0 - k.p)});
  k.J = k.E0 + k.C1 * k.T + std::pow(k.x0, k.p) * k.C2 * tmax;
  return k;
}

double bainov_root_cprime(double c1p, double c2p, double p) {
  if (c1p == 0.0 && c2p == 0.0) return 0.0;
  auto f = [&](double x) { return x - c1p - c2p * std::pow(x, p); };
  double lo = 0.0;
  double hi = std::pow(c1p + c2p, 1.0 / (1.0 - p)) + c1p + 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double bainov_root(double E0, double T, double C1, double C2, double p) {
  double c1p = E0 * T + 0.5 * C1 * T * T;
  double c2p = C2 * std::pow(T, 2.0 - p) / (1.0 - p);
  return bainov_root_cprime(c1p, c2p, p);
}

double bound_curve(const EnergyConstants& k, double t) {
  return k.E0 + k.C1 * t + std::pow(k.x0, k.p) * k.C2 * std::pow(t, 1.0 - k.p);
}

std::vector<double> energy_trace(const GalerkinTrajectory& traj) {
  std::vector<double> E(traj.t.size(), 0.0);
  for (size_t kk = 0; kk < traj.t.size(); ++kk) {
    double s = 0.0;
    for (double ci : traj.c[kk]) s += ci * ci;
    E[kk] = s;
  }
  return E;
}

namespace {
// trapezoid in time over per-step squared norms, then sqrt
double bochner_norm(const std::vector<double>& t, const std::vector<double>& sq) {
  double acc = 0.0;
  for (size_t kk = 1; kk < t.size(); ++kk)
    acc += 0.5 * (t[kk] - t[kk - 1]) * (sq[kk] + sq[kk - 1]);
  return std::sqrt(acc);
}
}  // namespace

CertificateReport certify(const GalerkinTrajectory& traj, const EnergyConstants& k) {
  CertificateReport rep;
  rep.constants = k;
  rep.trajectory_failed = traj.failed;
  rep.failed_step = traj.failed_step;
  rep.failure_message = traj.failure_message;

  rep.t = traj.t;
  rep.E = energy_trace(traj);
  rep.B.resize(traj.t.size());
  rep.margin.resize(traj.t.size());
  rep.pass = !traj.failed;
  for (size_t kk = 0; kk < traj.t.size(); ++kk) {
    rep.B[kk] = bound_curve(k, traj.t[kk]);
    rep.margin[kk] = rep.B[kk] - rep.E[kk];
    if (rep.margin[kk] < 0.0 && rep.first_violation < 0) {
      rep.first_violation = static_cast<int>(kk);
      rep.pass = false;
    }
  }

  auto eigs = eigenpairs(k.domain, traj.N);
  std::vector<double> h1sq(traj.t.size(), 0.0), hmsq(traj.t.size(), 0.0);
  for (size_t kk = 0; kk < traj.t.size(); ++kk) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < traj.N; ++i) {
      a += eigs[i].lambda * traj.c[kk][i] * traj.c[kk][i];
      b += traj.cprime[kk][i] * traj.cprime[kk][i] / eigs[i].lambda;
    }
    h1sq[kk] = a;
    hmsq[kk] = b;
  }
  rep.l2h1_norm = bochner_norm(traj.t, h1sq);
  rep.dt_hminus1_norm = bochner_norm(traj.t, hmsq);
  rep.aggregate_bound =
      2.0 * std::sqrt(k.T) * (k.C1 + k.C2 + std::pow(k.J, k.p) * k.T);
  return rep;
}

double lipschitz_diagnostic(const GalerkinTrajectory& traj, const SolverConfig& cfg,
                            const RandomField& field) {
  MemoryKernel kern = cfg.kernel;
  kern.T = cfg.T;
  double D_sup = field_sup(field);
  double K_l1 = l1_norm(kern);
  double L = cfg.phi.L;
  double T = cfg.T;
  double meas = cfg.domain.measure();
  double S = 0.0;
  for (const auto& row : traj.c) {
    double s = 0.0;
    for (double ci : row) s += ci * ci;
    S = std::max(S, std::sqrt(s));
  }
  double state_term =
      (S == 0.0) ? 0.0
                 : 2.0 * T * std::pow(meas, (4.0 - cfg.phi.m) / 2.0) *
                       std::pow(S, cfg.phi.m - 2.0);
  return D_sup * K_l1 * L * (T * meas + state_term);
}

}  // namespace memdiff
