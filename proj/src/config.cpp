#include "memdiff/config.hpp"

#include <cmath>
#include <stdexcept>

namespace memdiff {

double forcing_value(const Forcing& f, int i, double t) {
  if (i < 1 || i > static_cast<int>(f.modes.size())) return 0.0;
  const ForcingMode& m = f.modes[i - 1];
  return m.a + m.b * std::cos(m.omega * t);
}

std::vector<double> forcing_vector(const Forcing& f, int N, double t) {
  std::vector<double> out(N, 0.0);
  int nf = std::min<int>(N, static_cast<int>(f.modes.size()));
  for (int i = 1; i <= nf; ++i) out[i - 1] = forcing_value(f, i, t);
  return out;
}

double forcing_hminus1_sup(const Forcing& f, const std::vector<Eigenpair>& eigs, double T,
                           int steps) {
  if (steps < 1) steps = 1;
  double sup = 0.0;
  for (int k = 0; k <= steps; ++k) {
    double t = T * k / steps;
    double s = 0.0;
    int nf = std::min<int>(static_cast<int>(eigs.size()), static_cast<int>(f.modes.size()));
    for (int i = 1; i <= nf; ++i) {
      double fi = forcing_value(f, i, t);
      s += fi * fi / eigs[i - 1].lambda;
    }
    sup = std::max(sup, std::sqrt(s));
  }
  return sup;
}

int step_count(const SolverConfig& cfg) {
  return static_cast<int>(std::llround(cfg.T / cfg.dt));
}

int effective_panels(const SolverConfig& cfg) {
  return cfg.quad_panels > 0 ? cfg.quad_panels : default_panels(cfg.N);
}

Violations validate_config(const SolverConfig& cfg) {
  Violations v;

  if (!(cfg.domain.L1 > 0.0) ||
      (cfg.domain.kind == DomainSpec::Kind::rectangle && !(cfg.domain.L2 > 0.0)))
    v.push_back({"domain.lengths", "positivity", "domain side lengths must be positive"});
  if (cfg.N < 1)
    v.push_back({"galerkin.N", "range", "Galerkin dimension N must be >= 1"});
  if (!(cfg.T > 0.0))
    v.push_back({"time.T", "positivity", "horizon T must be positive"});
  if (!(cfg.dt > 0.0)) {
    v.push_back({"time.dt", "positivity", "time step dt must be positive"});
    return v;  // remaining checks need a usable grid
  }
  double ratio = cfg.T / cfg.dt;
  if (std::abs(ratio - std::llround(ratio)) > 1e-8 * std::max(1.0, ratio))
    v.push_back({"time.dt", "divisibility", "T/dt must be an integer step count"});

  MemoryKernel k = cfg.kernel;
  k.T = cfg.T;
  for (auto& viol : validate_kernel(k)) v.push_back(viol);

  int dim = cfg.domain.dim();
  for (auto& viol :
       validate_nonlinearity(cfg.phi, cfg.phi.m, cfg.phi.L, -10.0, 10.0, 1001, dim))
    v.push_back(viol);

  for (auto& viol : validate_field(cfg.field)) v.push_back(viol);

  if (static_cast<int>(cfg.forcing.modes.size()) > cfg.N)
    v.push_back({"forcing.modes", "range",
                 "number of forcing modes must not exceed the Galerkin dimension"});

  if (cfg.initial.kind == InitialCondition::Kind::coefficients &&
      static_cast<int>(cfg.initial.values.size()) > cfg.N)
    v.push_back({"initial.values", "range",
                 "more initial coefficients than Galerkin modes"});

  if (cfg.quad_panels < 0)
    v.push_back({"quadrature.panels", "range", "panel count must be positive"});
  if (cfg.quad_points < 2 || cfg.quad_points > 10)
    v.push_back({"quadrature.points", "range", "points per panel must lie in [2,10]"});

  // explicit-scheme stability guard; only meaningful once the pieces are sane
  if (v.empty()) {
    auto eigs = eigenpairs(cfg.domain, cfg.N);
    double lamN = eigs.back().lambda;
    double sup = cfg.field.d_max;  // exact sup over any realization
    double guard = cfg.dt * sup * cfg.phi.L * lamN * l1_norm(k);
    if (guard > 0.5)
      v.push_back({"time.dt", "stability",
                   "dt * D_sup * L_phi * lambda_N * |K|_L1 exceeds 1/2; refuse to integrate"});
  }
  return v;
}

std::vector<double> initial_coefficients(const SolverConfig& cfg, const QuadratureGrid& grid) {
  std::vector<double> c(cfg.N, 0.0);
  switch (cfg.initial.kind) {
    case InitialCondition::Kind::zero:
      break;
    case InitialCondition::Kind::coefficients: {
      size_t n = std::min<size_t>(cfg.initial.values.size(), c.size());
      for (size_t i = 0; i < n; ++i) c[i] = cfg.initial.values[i];
      break;
    }
    case InitialCondition::Kind::parabola: {
      DomainSpec dom = cfg.domain;
      auto u0 = [dom](const Point& x) {
        double v = x[0] * (dom.L1 - x[0]);
        if (dom.kind == DomainSpec::Kind::rectangle) v *= x[1] * (dom.L2 - x[1]);
        return v;
      };
      c = project(u0, cfg.N, grid).c;
      break;
    }
  }
  return c;
}

}  // namespace memdiff
