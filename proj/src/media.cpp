#include "memdiff/media.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace memdiff {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomField sample_field(const FieldSpec& spec, const DomainSpec& dom, uint64_t realization) {
  RandomField f;
  f.spec = spec;
  f.domain = dom;
  f.realization = realization;
  int M = spec.cells;
  size_t n = (dom.kind == DomainSpec::Kind::interval) ? static_cast<size_t>(M)
                                                      : static_cast<size_t>(M) * M;
  f.values.resize(n);
  uint64_t base = splitmix64(spec.seed ^ splitmix64(realization));
  for (size_t cell = 0; cell < n; ++cell) {
    uint64_t h = splitmix64(base ^ (cell + 1));
    double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    f.values[cell] = spec.d_min + (spec.d_max - spec.d_min) * u;
  }
  return f;
}

namespace {
int bin_index(double x, double L, int M) {
  // cell r covers ((r-1)L/M, rL/M]; boundary points fall to the left cell,
  // x = 0 belongs to the first
  int idx = static_cast<int>(std::ceil(x * M / L)) - 1;
  return std::clamp(idx, 0, M - 1);
}
}  // namespace

double field_eval(const RandomField& f, const Point& x) {
  const DomainSpec& dom = f.domain;
  double eps = 0.0;  // closed-box membership is exact; binning handles edges
  if (x[0] < -eps || x[0] > dom.L1 + eps)
    throw std::domain_error("field_eval: point outside the domain");
  int M = f.spec.cells;
  int ix = bin_index(x[0], dom.L1, M);
  if (dom.kind == DomainSpec::Kind::interval) return f.values[ix];
  if (x[1] < -eps || x[1] > dom.L2 + eps)
    throw std::domain_error("field_eval: point outside the domain");
  int iy = bin_index(x[1], dom.L2, M);
  return f.values[static_cast<size_t>(iy) * M + ix];
}

double field_sup(const RandomField& f) {
  return *std::max_element(f.values.begin(), f.values.end());
}

Violations validate_field(const FieldSpec& spec) {
  Violations v;
  if (!(spec.d_min > 0.0))
    v.push_back({"field.d_min", "positivity", "lower diffusivity bound must be positive"});
  if (!(spec.d_min <= spec.d_max))
    v.push_back({"field.d_min", "bounds", "lower bound d_min must not exceed d_max"});
  if (spec.cells < 1)
    v.push_back({"field.cells", "range", "cell count must be >= 1"});
  return v;
}

}  // namespace memdiff
