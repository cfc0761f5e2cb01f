#include "memdiff/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace memdiff {

double kernel_eval(const MemoryKernel& k, double t) {
  if (!(t > 0.0) || t > k.T)
    throw std::domain_error("kernel_eval: t must lie in (0, T]");
  switch (k.kind) {
    case MemoryKernel::Kind::exponential:
      return k.kappa * std::exp(-k.lambda * t);
    case MemoryKernel::Kind::constant:
      return k.kappa;
    case MemoryKernel::Kind::power:
      return k.kappa * std::pow(t, -k.alpha);
  }
  return 0.0;
}

double l1_norm(const MemoryKernel& k) {
  switch (k.kind) {
    case MemoryKernel::Kind::exponential:
      if (k.lambda == 0.0) return k.kappa * k.T;
      return k.kappa * (1.0 - std::exp(-k.lambda * k.T)) / k.lambda;
    case MemoryKernel::Kind::constant:
      return k.kappa * k.T;
    case MemoryKernel::Kind::power:
      return k.kappa * std::pow(k.T, 1.0 - k.alpha) / (1.0 - k.alpha);
  }
  return 0.0;
}

Violations validate_kernel(const MemoryKernel& k) {
  Violations v;
  if (!(k.kappa > 0.0))
    v.push_back({"kernel.kappa", "positivity", "kernel amplitude kappa must be positive"});
  if (k.kind == MemoryKernel::Kind::power) {
    if (k.alpha >= 1.0)
      v.push_back({"kernel.alpha", "integrability",
                   "power kernel exponent alpha must be < 1 so the kernel is not integrable otherwise"});
    if (k.alpha < 0.0)
      v.push_back({"kernel.alpha", "range", "power kernel exponent alpha must be >= 0"});
  }
  if (k.kind == MemoryKernel::Kind::exponential && k.lambda < 0.0)
    v.push_back({"kernel.lambda", "range", "exponential decay rate lambda must be >= 0"});
  if (!(k.T > 0.0))
    v.push_back({"kernel.T", "range", "kernel horizon T must be positive"});
  return v;
}

// Panel moments over [(r-1)dt, r dt]:
//   m0 = \int K,  m1 = (1/dt) \int K(tau) (r dt - tau) dtau
// so the product-trapezoid convolution is exact for flux histories that are
// constant on each panel and second order for smooth ones.
double kernel_m0(const MemoryKernel& k, int r, double dt) {
  if (r < 1) throw std::invalid_argument("kernel_m0: panel index must be >= 1");
  double a = (r - 1) * dt;
  double b = r * dt;
  switch (k.kind) {
    case MemoryKernel::Kind::exponential: {
      if (k.lambda == 0.0) return k.kappa * dt;
      return k.kappa * std::exp(-k.lambda * a) * (-std::expm1(-k.lambda * dt)) / k.lambda;
    }
    case MemoryKernel::Kind::constant:
      return k.kappa * dt;
    case MemoryKernel::Kind::power: {
      double e = 1.0 - k.alpha;
      return k.kappa * (std::pow(b, e) - std::pow(a, e)) / e;
    }
  }
  return 0.0;
}

double kernel_m1(const MemoryKernel& k, int r, double dt) {
  if (r < 1) throw std::invalid_argument("kernel_m1: panel index must be >= 1");
  double a = (r - 1) * dt;
  double b = r * dt;
  switch (k.kind) {
    case MemoryKernel::Kind::exponential: {
      if (k.lambda == 0.0) return 0.5 * k.kappa * dt;
      double mu = k.lambda * dt;
      double h;
      if (mu < 1e-3) {
        // h(mu) = 1 - (1+mu) e^{-mu}; Taylor to keep relative error near machine eps
        h = mu * mu * (0.5 + mu * (-1.0 / 3.0 + mu * (0.125 - mu / 30.0)));
      } else {
        h = 1.0 - (1.0 + mu) * std::exp(-mu);
      }
      return k.kappa * std::exp(-k.lambda * a) * h / (k.lambda * k.lambda * dt);
    }
    case MemoryKernel::Kind::constant:
      return 0.5 * k.kappa * dt;
    case MemoryKernel::Kind::power: {
      double e1 = 1.0 - k.alpha;
      double e2 = 2.0 - k.alpha;
      double i1 = (std::pow(b, e1) - std::pow(a, e1)) / e1;
      double i2 = (std::pow(b, e2) - std::pow(a, e2)) / e2;
      // (1/dt) * int_a^b K(tau) (tau - a) dtau, same orientation as the
      // exponential branch
      return k.kappa * (i2 - a * i1) / dt;
    }
  }
  return 0.0;
}

}  // namespace memdiff
