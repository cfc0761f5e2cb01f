#pragma once

#include <numbers>

#include "memdiff/config.hpp"

namespace memdiff::testing {

inline constexpr double kPi = std::numbers::pi;

// linear-exponential single mode on (0, pi): the closed-form class
inline SolverConfig oracle_config() {
  SolverConfig cfg;
  cfg.domain = {DomainSpec::Kind::interval, kPi, 0.0};
  cfg.N = 1;
  cfg.T = 1.0;
  cfg.dt = 1e-3;
  cfg.kernel = {MemoryKernel::Kind::exponential, 1.0, 1.0, 0.5, 1.0};
  cfg.phi.kind = Nonlinearity::Kind::linear;
  cfg.phi.a = 1.0;
  cfg.phi.L = 1.0;
  cfg.field = {1.0, 1.0, 1, 0};
  cfg.initial.kind = InitialCondition::Kind::coefficients;
  cfg.initial.values = {1.0};
  return cfg;
}

// the certification benchmark: power flux, random field, parabolic start
inline SolverConfig benchmark_config(double m) {
  SolverConfig cfg;
  cfg.domain = {DomainSpec::Kind::interval, kPi, 0.0};
  cfg.N = 8;
  cfg.T = 0.5;
  cfg.dt = 5e-4;
  cfg.kernel = {MemoryKernel::Kind::exponential, 1.0, 1.0, 0.5, 0.5};
  cfg.phi.kind = m == 2.0 ? Nonlinearity::Kind::linear : Nonlinearity::Kind::power;
  cfg.phi.a = 1.0;
  cfg.phi.m = m;
  cfg.phi.L = 1.0;
  cfg.field = {0.5, 2.0, 8, 1};
  cfg.forcing.modes = {{1.0, 0.0, 0.0}};
  cfg.initial.kind = InitialCondition::Kind::parabola;
  return cfg;
}

}  // namespace memdiff::testing
