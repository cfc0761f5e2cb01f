#pragma once

#include "memdiff/violation.hpp"

namespace memdiff {

// Memory kernel K on (0,T]: exponential kappa*exp(-lambda*t), constant kappa,
// or weakly singular power kappa*t^(-alpha) with alpha in [0,1).
struct MemoryKernel {
  enum class Kind { exponential, constant, power };
  Kind kind = Kind::exponential;
  double kappa = 1.0;
  double lambda = 1.0;  // exponential rate, >= 0 (0 degenerates to constant)
  double alpha = 0.5;   // power exponent
  double T = 1.0;       // horizon
};

// Throws std::domain_error for t outside (0,T].
double kernel_eval(const MemoryKernel& k, double t);

// Closed-form L1(0,T) norm.
double l1_norm(const MemoryKernel& k);

Violations validate_kernel(const MemoryKernel& k);

// Moments of K over the r-th backward panel [(r-1)dt, r*dt], r >= 1:
//   m0 = integral of K(tau)
//   m1 = (1/dt) * integral of K(tau)*(tau-(r-1)dt)
// These integrate the kernel exactly against piecewise-linear data and never
// sample tau = 0, so the power kernel's singular endpoint is handled
// analytically.
double kernel_m0(const MemoryKernel& k, int r, double dt);
double kernel_m1(const MemoryKernel& k, int r, double dt);

}  // namespace memdiff
