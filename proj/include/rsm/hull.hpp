#pragma once

// Convex hulls in dimension 1-3: extreme-point enumeration, outward facet
// planes and exact volume. Higher-dimensional bodies in this library never
// need hulls (they stay implicit behind membership oracles).

#include <vector>

#include "rsm/vec.hpp"

namespace rsm {

struct Facets {
  std::vector<Vec> normals;     // unit outward normals
  std::vector<double> offsets;  // a.x <= b
  double scale = 1.0;           // coordinate magnitude, for tolerance scaling

  // max_i (a_i . x - b_i); <= 0 means inside.
  double margin(const Vec& x) const {
    double worst = -1e300;
    for (size_t i = 0; i < normals.size(); ++i) {
      double m = dot(normals[i], x) - offsets[i];
      if (m > worst) worst = m;
    }
    return worst;
  }
};

struct HullResult {
  std::vector<Vec> vertices;  // extreme points (CCW order in 2-D)
  Facets facets;
  double volume = 0.0;
};

// dim(points) must be 1, 2 or 3 and the points full-dimensional.
HullResult convex_hull(const std::vector<Vec>& points);

// Affine dimension of a point set (rank of differences), tolerance-scaled.
int affine_dimension(const std::vector<Vec>& points);

}  // namespace rsm
