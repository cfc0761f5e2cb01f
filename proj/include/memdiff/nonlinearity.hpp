#pragma once

#include "memdiff/violation.hpp"

namespace memdiff {

// Nonlinear flux Phi with Phi' <= 0 (as hypothesized; this makes the flux
// anti-dissipative, which the energy certificate is meant to control).
//   linear:   Phi(x) = -a*x
//   power:    Phi(x) = -a*x*|x|^(m-2)
//   constant: Phi(x) = b
struct Nonlinearity {
  enum class Kind { linear, power, constant };
  Kind kind = Kind::linear;
  double a = 1.0;
  double b = 0.0;
  double m = 2.0;  // declared growth exponent, in [2,3]
  double L = 1.0;  // declared growth constant: |Phi'(x)| <= L*(1+|x|^(m-1))
};

double phi_eval(const Nonlinearity& p, double xi);
double phi_prime(const Nonlinearity& p, double xi);

// Probes monotonicity and the growth bound on a uniform grid over
// [probe_lo, probe_hi], then checks the exponent range m in
// [2, min{3, 2d/(d-2)}] (upper bound +inf for d <= 2) and structural
// positivity. Throws std::invalid_argument if probe_count < 100.
Violations validate_nonlinearity(const Nonlinearity& p, double m, double L,
                                 double probe_lo, double probe_hi,
                                 int probe_count, int dim);

}  // namespace memdiff
