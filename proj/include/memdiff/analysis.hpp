#pragma once

#include <string>
#include <vector>

#include "memdiff/solver.hpp"

namespace memdiff {

// Constants of the a-priori energy bound
//   E(t) <= B(t) = E0 + C1*t + x0^p * C2 * t^(1-p)
// with E(t) = ||u^N(t)||_L2^2, p = (m-1)/4 and x0 the unique positive root of
// x = c1' + c2'*x^p.
struct EnergyConstants {
  double C_Omega = 0.0;   // Poincare constant 1/sqrt(lambda_1)
  double lambda_Y = 0.0;  // Young-splitting parameter
  double C1 = 0.0;
  double C2 = 0.0;
  double p = 0.0;
  double q = 0.0;  // 1 - p
  double E0 = 0.0;
  double x0 = 0.0;
  double J = 0.0;  // uniform energy bound E0 + C1*T + x0^p*C2*max{1,T,T^(1-p)}
  double T = 0.0;
  // inputs kept for reporting
  double D_sup = 0.0;
  double K_l1 = 0.0;
  double L_phi = 0.0;
  double f_norm = 0.0;
  double measure = 0.0;
  double m = 2.0;
  DomainSpec domain;
};

struct CertificateReport {
  std::vector<double> t;
  std::vector<double> E;
  std::vector<double> B;
  std::vector<double> margin;  // B - E
  bool pass = false;
  int first_violation = -1;
  EnergyConstants constants;
  // informational only, never part of the verdict
  double aggregate_bound = 0.0;  // 2*sqrt(T)*(C1 + C2 + J^p*T)
  double l2h1_norm = 0.0;        // ||u^N||_{L2(0,T;H1_0)}
  double dt_hminus1_norm = 0.0;  // ||du^N/dt||_{L2(0,T;H^-1)}
  bool trajectory_failed = false;
  int failed_step = -1;
  std::string failure_message;
};

double poincare_constant(const DomainSpec& dom);

// lambda_Y = max(2*C_Omega*f_norm/(D_sup*K_l1), 1e-3); the floor keeps C1,C2
// finite when f -> 0 (a larger lambda only weakens one side of the split).
double select_lambda(double f_norm, double D_sup, double K_l1, double C_Omega);

EnergyConstants compute_constants(const SolverConfig& cfg, const RandomField& field);

// Root of x = c1p + c2p*x^p by bisection on [0, (c1p+c2p)^(1/(1-p)) + c1p + 1].
double bainov_root_cprime(double c1p, double c2p, double p);
// Same with c1p = E0*T + C1*T^2/2 and c2p = C2*T^(2-p)/(1-p).
double bainov_root(double E0, double T, double C1, double C2, double p);

double bound_curve(const EnergyConstants& k, double t);

std::vector<double> energy_trace(const GalerkinTrajectory& traj);

CertificateReport certify(const GalerkinTrajectory& traj, const EnergyConstants& k);

// Local Lipschitz diagnostic for the ODE right-hand side along a trajectory:
// Lambda = D_sup*K_l1*L*(T*|O| + 2*T*|O|^((4-m)/2)*S^(m-2)), S = max ||u^N||.
// S = 0 collapses the state-dependent part to zero.
double lipschitz_diagnostic(const GalerkinTrajectory& traj, const SolverConfig& cfg,
                            const RandomField& field);

}  // namespace memdiff
