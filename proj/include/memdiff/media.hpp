#pragma once

#include <cstdint>
#include <vector>

#include "memdiff/geometry.hpp"
#include "memdiff/violation.hpp"

namespace memdiff {

struct FieldSpec {
  double d_min = 1.0;
  double d_max = 1.0;
  int cells = 1;      // cells per axis
  uint64_t seed = 0;  // master seed
};

// A sampled realization of the piecewise-constant diffusion coefficient.
struct RandomField {
  FieldSpec spec;
  DomainSpec domain;
  uint64_t realization = 0;
  std::vector<double> values;  // cells (1D) or cells*cells (2D), row-major in y
};

uint64_t splitmix64(uint64_t z);

// Counter-based sampling: value of cell j depends only on
// (seed, realization, j), so refining `cells` never reshuffles other cells.
RandomField sample_field(const FieldSpec& spec, const DomainSpec& dom,
                         uint64_t realization = 0);

// Cell lookup by uniform binning; boundaries belong to the left/lower cell.
// Throws std::domain_error for x outside the closed box.
double field_eval(const RandomField& f, const Point& x);

// Exact sup over cells (fields are piecewise constant).
double field_sup(const RandomField& f);

Violations validate_field(const FieldSpec& spec);

}  // namespace memdiff
