#include "memdiff/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace memdiff {

namespace {
constexpr double kPi = std::numbers::pi;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    // Tricomi-style initial guess, refined by Newton on P_n.
    double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing pass so dp matches the converged root
        p0 = 1.0;
        p1 = x;
        for (int j = 2; j <= n; ++j) {
          double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    nodes[k] = x;
    weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  // guesses come out descending
  std::reverse(nodes.begin(), nodes.end());
  std::reverse(weights.begin(), weights.end());
}

std::vector<Eigenpair> eigenpairs(const DomainSpec& dom, int N) {
  if (N < 1) throw std::invalid_argument("eigenpairs: N must be >= 1");
  std::vector<Eigenpair> out;
  if (dom.kind == DomainSpec::Kind::interval) {
    out.reserve(N);
    for (int i = 1; i <= N; ++i) {
      double w = i * kPi / dom.L1;
      out.push_back({i, i, 0, w * w});
    }
    return out;
  }
  // 2D: the first N modes live inside the [1..N]^2 candidate block because
  // the set below any eigenvalue is downward closed in (i1,i2).
  std::vector<Eigenpair> cand;
  cand.reserve(static_cast<size_t>(N) * N);
  for (int i1 = 1; i1 <= N; ++i1)
    for (int i2 = 1; i2 <= N; ++i2) {
      double w1 = i1 * kPi / dom.L1;
      double w2 = i2 * kPi / dom.L2;
      cand.push_back({0, i1, i2, w1 * w1 + w2 * w2});
    }
  std::sort(cand.begin(), cand.end(), [](const Eigenpair& a, const Eigenpair& b) {
    return std::tie(a.lambda, a.i1, a.i2) < std::tie(b.lambda, b.i1, b.i2);
  });
  cand.resize(N);
  for (int i = 0; i < N; ++i) cand[i].index = i + 1;
  return cand;
}

Eigenpair eigenpair(const DomainSpec& dom, int i) {
  if (i < 1) throw std::invalid_argument("eigenpair: index must be >= 1");
  return eigenpairs(dom, i).back();
}

double eigen_eval(const DomainSpec& dom, const Eigenpair& e, const Point& x) {
  double v = std::sqrt(2.0 / dom.L1) * std::sin(e.i1 * kPi * x[0] / dom.L1);
  if (dom.kind == DomainSpec::Kind::rectangle)
    v *= std::sqrt(2.0 / dom.L2) * std::sin(e.i2 * kPi * x[1] / dom.L2);
  return v;
}

Point eigen_grad(const DomainSpec& dom, const Eigenpair& e, const Point& x) {
  double w1 = e.i1 * kPi / dom.L1;
  if (dom.kind == DomainSpec::Kind::interval)
    return {std::sqrt(2.0 / dom.L1) * w1 * std::cos(w1 * x[0]), 0.0};
  double w2 = e.i2 * kPi / dom.L2;
  double sx = std::sqrt(2.0 / dom.L1) * std::sin(w1 * x[0]);
  double cx = std::sqrt(2.0 / dom.L1) * w1 * std::cos(w1 * x[0]);
  double sy = std::sqrt(2.0 / dom.L2) * std::sin(w2 * x[1]);
  double cy = std::sqrt(2.0 / dom.L2) * w2 * std::cos(w2 * x[1]);
  return {cx * sy, sx * cy};
}

int default_panels(int N) { return std::max(8, 2 * N); }

QuadratureGrid build_quadrature(const DomainSpec& dom, int panels, int points_per_panel) {
  if (panels < 1) throw std::invalid_argument("quadrature: panels must be >= 1");
  if (points_per_panel < 2 || points_per_panel > 10)
    throw std::invalid_argument("quadrature: points per panel must be in [2,10]");
  std::vector<double> gx, gw;
  gauss_legendre(points_per_panel, gx, gw);

  auto axis = [&](double L, std::vector<double>& xs, std::vector<double>& ws) {
    double h = L / panels;
    for (int p = 0; p < panels; ++p)
      for (int q = 0; q < points_per_panel; ++q) {
        xs.push_back((p + 0.5 * (gx[q] + 1.0)) * h);
        ws.push_back(0.5 * h * gw[q]);
      }
  };

  QuadratureGrid grid;
  grid.domain = dom;
  grid.panels = panels;
  grid.points = points_per_panel;
  std::vector<double> xs, ws;
  axis(dom.L1, xs, ws);
  if (dom.kind == DomainSpec::Kind::interval) {
    grid.nodes.reserve(xs.size());
    for (size_t q = 0; q < xs.size(); ++q) {
      grid.nodes.push_back({xs[q], 0.0});
      grid.weights.push_back(ws[q]);
    }
    return grid;
  }
  std::vector<double> ys, vs;
  axis(dom.L2, ys, vs);
  grid.nodes.reserve(xs.size() * ys.size());
  for (size_t r = 0; r < ys.size(); ++r)
    for (size_t q = 0; q < xs.size(); ++q) {
      grid.nodes.push_back({xs[q], ys[r]});
      grid.weights.push_back(ws[q] * vs[r]);
    }
  return grid;
}

CoefficientVector project(const std::function<double(const Point&)>& u, int N,
                          const QuadratureGrid& grid) {
  CoefficientVector out;
  out.N = N;
  out.c.assign(N, 0.0);
  auto eigs = eigenpairs(grid.domain, N);
  std::vector<double> uv(grid.nodes.size());
  for (size_t q = 0; q < grid.nodes.size(); ++q) {
    uv[q] = u(grid.nodes[q]);
    if (!std::isfinite(uv[q]))
      throw std::runtime_error("project: non-finite evaluation at a quadrature node");
  }
  for (int i = 0; i < N; ++i) {
    double s = 0.0;
    for (size_t q = 0; q < grid.nodes.size(); ++q)
      s += grid.weights[q] * uv[q] * eigen_eval(grid.domain, eigs[i], grid.nodes[q]);
    out.c[i] = s;
  }
  return out;
}

std::vector<double> evaluate_state(const DomainSpec& dom, const CoefficientVector& c,
                                   const std::vector<Point>& nodes) {
  auto eigs = eigenpairs(dom, c.N);
  std::vector<double> out(nodes.size(), 0.0);
  for (size_t q = 0; q < nodes.size(); ++q) {
    double s = 0.0;
    for (int i = 0; i < c.N; ++i) s += c.c[i] * eigen_eval(dom, eigs[i], nodes[q]);
    out[q] = s;
  }
  return out;
}

std::vector<Point> evaluate_gradient(const DomainSpec& dom, const CoefficientVector& c,
                                     const std::vector<Point>& nodes) {
  auto eigs = eigenpairs(dom, c.N);
  std::vector<Point> out(nodes.size(), {0.0, 0.0});
  for (size_t q = 0; q < nodes.size(); ++q) {
    Point g{0.0, 0.0};
    for (int i = 0; i < c.N; ++i) {
      Point gi = eigen_grad(dom, eigs[i], nodes[q]);
      g[0] += c.c[i] * gi[0];
      g[1] += c.c[i] * gi[1];
    }
    out[q] = g;
  }
  return out;
}

Norms norms(const DomainSpec& dom, const CoefficientVector& c) {
  auto eigs = eigenpairs(dom, c.N);
  Norms n;
  double l2 = 0.0, h1 = 0.0, hm = 0.0;
  for (int i = 0; i < c.N; ++i) {
    double ci2 = c.c[i] * c.c[i];
    l2 += ci2;
    h1 += eigs[i].lambda * ci2;
    hm += ci2 / eigs[i].lambda;
  }
  n.l2 = std::sqrt(l2);
  n.h1_semi = std::sqrt(h1);
  n.hminus1 = std::sqrt(hm);
  return n;
}

}  // namespace memdiff
