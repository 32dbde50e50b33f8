#pragma once

// Brute-force ground truth in low dimension: grid volumes, grid sectional
// measures, and exhaustive translate scans. Intentionally slow and simple
// (no early exits, no adaptivity); these anchor trust in the fast
// estimators.

#include <utility>

#include "rsm/body.hpp"
#include "rsm/density.hpp"
#include "rsm/vec.hpp"

namespace rsm {

struct GridSpec {
  double h = 0.01;  // cell size
  Vec lo, hi;       // box; must cover the body

  static GridSpec cover(const ConvexBody& body, double h);
};

struct GridValue {
  double value = 0;
  double error_bound = 0;  // h * (surface proxy)
};

// Cell-center counting times h^d; dimension <= 3.
GridValue grid_volume(const ConvexBody& body, const GridSpec& grid);

// Grid sum of phi * chi over the section body cap (H + y); dim(H) <= 2.
GridValue grid_section_measure(const ConvexBody& body, const Subspace& H, const Vec& y,
                               const Density& d, const GridSpec& grid);

// Exhaustive scan of translate vectors z over the window [scan_lo, scan_hi]
// with step scan_h: maximizes mu((body - z) cap H). The scan covers the
// full translate space (H-perp alone misses maximizers of bodies shifted
// along H); ambient dimension <= 2. grid.h sets the section resolution.
std::pair<Vec, double> grid_sup_translate(const ConvexBody& body, const Subspace& H,
                                          const Density& d, double section_h, const Vec& scan_lo,
                                          const Vec& scan_hi, double scan_h);

}  // namespace rsm
