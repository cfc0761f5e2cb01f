#pragma once

#include <array>
#include <functional>
#include <vector>

namespace memdiff {

// Spatial domain: an interval (0,L1) or a rectangle (0,L1)x(0,L2).
struct DomainSpec {
  enum class Kind { interval, rectangle };
  Kind kind = Kind::interval;
  double L1 = 1.0;
  double L2 = 0.0;

  int dim() const { return kind == Kind::interval ? 1 : 2; }
  double measure() const { return kind == Kind::interval ? L1 : L1 * L2; }
};

using Point = std::array<double, 2>;  // second component ignored in 1D

// Dirichlet-Laplacian eigenpair. In 2D the flattened index orders tensor
// modes by increasing eigenvalue, ties broken lexicographically on (i1,i2).
struct Eigenpair {
  int index = 1;  // 1-based flattened index
  int i1 = 1;
  int i2 = 0;  // 0 in 1D
  double lambda = 0.0;
};

struct QuadratureGrid {
  DomainSpec domain;
  std::vector<Point> nodes;
  std::vector<double> weights;
  int panels = 0;
  int points = 0;
};

struct CoefficientVector {
  int N = 0;
  std::vector<double> c;
};

struct Norms {
  double l2 = 0.0;
  double h1_semi = 0.0;
  double hminus1 = 0.0;
};

// Gauss-Legendre rule on [-1,1], nodes ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

std::vector<Eigenpair> eigenpairs(const DomainSpec& dom, int N);
Eigenpair eigenpair(const DomainSpec& dom, int i);

double eigen_eval(const DomainSpec& dom, const Eigenpair& e, const Point& x);
Point eigen_grad(const DomainSpec& dom, const Eigenpair& e, const Point& x);

int default_panels(int N);  // max(8, 2N) per axis

// Composite Gauss-Legendre grid; throws std::invalid_argument on bad counts.
QuadratureGrid build_quadrature(const DomainSpec& dom, int panels, int points_per_panel);

// c_i = <u, e_i> by quadrature; throws std::runtime_error on non-finite u.
CoefficientVector project(const std::function<double(const Point&)>& u, int N,
                          const QuadratureGrid& grid);

std::vector<double> evaluate_state(const DomainSpec& dom, const CoefficientVector& c,
                                   const std::vector<Point>& nodes);
std::vector<Point> evaluate_gradient(const DomainSpec& dom, const CoefficientVector& c,
                                     const std::vector<Point>& nodes);

Norms norms(const DomainSpec& dom, const CoefficientVector& c);

}  // namespace memdiff
