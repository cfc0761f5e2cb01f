#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "memdiff/kernels.hpp"

using namespace memdiff;

TEST_CASE("kernel evaluation and domain") {
  MemoryKernel k{MemoryKernel::Kind::exponential, 2.0, 3.0, 0.5, 1.0};
  CHECK(kernel_eval(k, 0.5) == doctest::Approx(2.0 * std::exp(-1.5)));
  CHECK_THROWS_AS(kernel_eval(k, 0.0), std::domain_error);
  CHECK_THROWS_AS(kernel_eval(k, -0.1), std::domain_error);
  CHECK_THROWS_AS(kernel_eval(k, 1.5), std::domain_error);

  MemoryKernel pw{MemoryKernel::Kind::power, 1.0, 0.0, 0.5, 1.0};
  CHECK(kernel_eval(pw, 0.25) == doctest::Approx(2.0));

  MemoryKernel ct{MemoryKernel::Kind::constant, 3.5, 0.0, 0.0, 2.0};
  CHECK(kernel_eval(ct, 1.7) == doctest::Approx(3.5));
}

TEST_CASE("closed-form L1 norms") {
  MemoryKernel ex{MemoryKernel::Kind::exponential, 1.0, 1.0, 0.5, 1.0};
  CHECK(l1_norm(ex) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  ex.lambda = 0.0;
  CHECK(l1_norm(ex) == doctest::Approx(1.0));

  MemoryKernel ct{MemoryKernel::Kind::constant, 2.0, 0.0, 0.0, 3.0};
  CHECK(l1_norm(ct) == doctest::Approx(6.0));

  MemoryKernel pw{MemoryKernel::Kind::power, 1.0, 0.0, 0.5, 1.0};
  CHECK(l1_norm(pw) == doctest::Approx(2.0));
  pw.alpha = 0.0;
  CHECK(l1_norm(pw) == doctest::Approx(1.0));
}

TEST_CASE("L1 norm against direct quadrature away from the origin") {
  // integrate K on (eps, T) numerically and add the analytic head integral;
  // catches both the closed form and the singular-endpoint handling
  for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
    MemoryKernel pw{MemoryKernel::Kind::power, 1.3, 0.0, alpha, 2.0};
    double eps = 1e-6, T = pw.T;
    // trapezoid in u = log(tau) so the mesh grades into the singularity
    int n = 200000;
    double lo = std::log(eps), hi = std::log(T);
    double h = (hi - lo) / n, acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      double u = lo + i * h;
      double w = (i == 0 || i == n) ? 0.5 : 1.0;
      acc += w * h * kernel_eval(pw, std::exp(u)) * std::exp(u);
    }
    double head = pw.kappa * std::pow(eps, 1.0 - alpha) / (1.0 - alpha);
    CHECK(l1_norm(pw) == doctest::Approx(acc + head).epsilon(1e-6));
  }
  MemoryKernel ex{MemoryKernel::Kind::exponential, 0.7, 2.5, 0.0, 1.5};
  double T = ex.T;
  int n = 100000;
  double h = T / n, acc = 0.0;
  for (int i = 1; i <= n; ++i) {
    double w = (i == n) ? 0.5 : 1.0;  // open at 0: first panel handled below
    acc += w * h * kernel_eval(ex, i * h);
  }
  acc += 0.5 * h * ex.kappa;  // K(0+) limit for the trapezoid end
  CHECK(l1_norm(ex) == doctest::Approx(acc).epsilon(1e-8));
}

TEST_CASE("kernel hypothesis validation") {
  MemoryKernel ok{MemoryKernel::Kind::exponential, 1.0, 0.0, 0.5, 1.0};
  CHECK(validate_kernel(ok).empty());

  MemoryKernel bad = ok;
  bad.kappa = -1.0;
  auto v = validate_kernel(bad);
  REQUIRE(!v.empty());
  CHECK(v[0].field == "kernel.kappa");
  CHECK(v[0].reason == "positivity");

  MemoryKernel pw{MemoryKernel::Kind::power, 1.0, 0.0, 1.2, 1.0};
  v = validate_kernel(pw);
  REQUIRE(!v.empty());
  CHECK(v[0].field == "kernel.alpha");

  pw.alpha = -0.5;
  v = validate_kernel(pw);
  REQUIRE(!v.empty());
  CHECK(v[0].field == "kernel.alpha");

  MemoryKernel ng = ok;
  ng.lambda = -1.0;
  v = validate_kernel(ng);
  REQUIRE(!v.empty());
  CHECK(v[0].field == "kernel.lambda");
}

TEST_CASE("panel moments: constant kernel") {
  MemoryKernel ct{MemoryKernel::Kind::constant, 2.0, 0.0, 0.0, 1.0};
  CHECK(kernel_m0(ct, 3, 0.1) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(kernel_m1(ct, 3, 0.1) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK_THROWS_AS(kernel_m0(ct, 0, 0.1), std::invalid_argument);
}

TEST_CASE("panel moments: exponential, including the small-mu branch") {
  MemoryKernel ex{MemoryKernel::Kind::exponential, 1.0, 2.0, 0.0, 1.0};
  double dt = 0.1;
  // m0 over [0.1, 0.2]: (e^{-0.2} - e^{-0.4})/2
  CHECK(kernel_m0(ex, 2, dt) ==
        doctest::Approx((std::exp(-0.2) - std::exp(-0.4)) / 2.0).epsilon(1e-14));
  // m1 = (1/dt) int K(tau)(tau - 0.1) dtau over the same panel
  int n = 20000;
  double h = dt / n, acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    double tau = 0.1 + i * h;
    double w = (i == 0 || i == n) ? 0.5 : 1.0;
    acc += w * h * std::exp(-2.0 * tau) * (tau - 0.1);
  }
  CHECK(kernel_m1(ex, 2, dt) == doctest::Approx(acc / dt).epsilon(1e-9));

  // tiny lambda*dt must agree with the lambda = 0 limit
  MemoryKernel tiny{MemoryKernel::Kind::exponential, 1.0, 1e-7, 0.0, 1.0};
  CHECK(kernel_m0(tiny, 1, 0.01) == doctest::Approx(0.01).epsilon(1e-8));
  CHECK(kernel_m1(tiny, 1, 0.01) == doctest::Approx(0.005).epsilon(1e-8));
  MemoryKernel zero{MemoryKernel::Kind::exponential, 1.0, 0.0, 0.0, 1.0};
  CHECK(kernel_m0(zero, 1, 0.01) == doctest::Approx(0.01));
  CHECK(kernel_m1(zero, 1, 0.01) == doctest::Approx(0.005));
}

TEST_CASE("panel moments: power kernel, singular panel included") {
  MemoryKernel pw{MemoryKernel::Kind::power, 1.0, 0.0, 0.5, 1.0};
  double dt = 0.01;
  // sum of m0 over the whole grid is the L1 norm (exact for constant data)
  double sum = 0.0;
  for (int r = 1; r <= 100; ++r) sum += kernel_m0(pw, r, dt);
  CHECK(sum == doctest::Approx(l1_norm(pw)).epsilon(1e-12));

  // first panel m1 against the closed form (1/dt) int_0^dt t^{-1/2} t dt
  double want = (2.0 / 3.0) * std::pow(dt, 1.5) / dt;
  CHECK(kernel_m1(pw, 1, dt) == doctest::Approx(want).epsilon(1e-12));
  // weights stay within [0, m0]
  for (int r = 1; r <= 100; ++r) {
    double m0 = kernel_m0(pw, r, dt), m1 = kernel_m1(pw, r, dt);
    CHECK(m1 >= 0.0);
    CHECK(m1 <= m0);
  }
}
