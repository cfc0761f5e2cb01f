#include "memdiff/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

namespace memdiff {

double phi_eval(const Nonlinearity& p, double xi) {
  switch (p.kind) {
    case Nonlinearity::Kind::linear:
      return -p.a * xi;
    case Nonlinearity::Kind::power:
      return -p.a * xi * std::pow(std::abs(xi), p.m - 2.0);
    case Nonlinearity::Kind::constant:
      return p.b;
  }
  return 0.0;
}

double phi_prime(const Nonlinearity& p, double xi) {
  switch (p.kind) {
    case Nonlinearity::Kind::linear:
      return -p.a;
    case Nonlinearity::Kind::power:
      return -p.a * (p.m - 1.0) * std::pow(std::abs(xi), p.m - 2.0);
    case Nonlinearity::Kind::constant:
      return 0.0;
  }
  return 0.0;
}

Violations validate_nonlinearity(const Nonlinearity& p, double m, double L,
                                 double probe_lo, double probe_hi, int probe_count,
                                 int dim) {
  if (probe_count < 100)
    throw std::invalid_argument("validate_nonlinearity: probe grid needs at least 100 points");
  Violations v;

  // 1) monotone decrease: phi' <= 0 sampled on the probe grid
  double h = (probe_hi - probe_lo) / (probe_count - 1);
  bool monotone = true;
  for (int i = 0; i < probe_count && monotone; ++i) {
    double xi = probe_lo + i * h;
    if (phi_prime(p, xi) > 0.0) monotone = false;
  }
  if (!monotone)
    v.push_back({"phi.a", "monotonicity",
                 "phi must be non-increasing: phi' > 0 detected on the probe grid"});

  // 2) growth envelope |phi'(xi)| <= L(1 + |xi|^{m-1})
  bool bounded = true;
  for (int i = 0; i < probe_count && bounded; ++i) {
    double xi = probe_lo + i * h;
    double cap = L * (1.0 + std::pow(std::abs(xi), m - 1.0));
    if (std::abs(phi_prime(p, xi)) > cap * (1.0 + 1e-12)) bounded = false;
  }
  if (!bounded)
    v.push_back({"phi.L", "growth",
                 "phi' exceeds the growth envelope L(1+|xi|^(m-1)) on the probe grid"});

  // 3) exponent admissibility for the certificate (d <= 2)
  if (dim <= 2 && !(m >= 2.0 && m <= 3.0))
    v.push_back({"phi.m", "exponent range",
                 "growth exponent m must lie in [2,3] in dimension <= 2"});

  // 4) structural positivity
  if (p.kind != Nonlinearity::Kind::constant && !(p.a > 0.0))
    v.push_back({"phi.a", "positivity", "slope parameter a must be positive"});
  if (!(L > 0.0))
    v.push_back({"phi.L", "positivity", "growth constant L must be positive"});

  return v;
}

}  // namespace memdiff
