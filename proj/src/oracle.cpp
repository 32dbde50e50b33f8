#include "rsm/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "rsm/parallel.hpp"

namespace rsm {

GridSpec GridSpec::cover(const ConvexBody& body, double h) {
  GridSpec g;
  g.h = h;
  bounding_box(body, g.lo, g.hi);
  return g;
}

GridValue grid_volume(const ConvexBody& body, const GridSpec& grid) {
  int d = body.dim();
  if (d > 3) throw std::invalid_argument("grid_volume: dimension <= 3 only");
  if (!(grid.h > 0)) throw std::invalid_argument("grid_volume: h > 0");
  int64_t counts[3] = {1, 1, 1};
  for (int i = 0; i < d; ++i) {
    counts[i] = static_cast<int64_t>(std::ceil((grid.hi[i] - grid.lo[i]) / grid.h));
    if (counts[i] < 1) counts[i] = 1;
  }
  int64_t n0 = counts[0], n1 = counts[1], n2 = counts[2];
  // One slab per leading index; flags kept for the boundary-cell count.
  std::vector<std::vector<uint8_t>> slabs(n0);
  std::vector<int64_t> inside(n0, 0);
  parallel_for_slots(static_cast<int>(n0), [&](int i0) {
    std::vector<uint8_t> flags(static_cast<size_t>(n1 * n2), 0);
    int64_t cnt = 0;
    Vec x = Vec::zero(d);
    x[0] = grid.lo[0] + (i0 + 0.5) * grid.h;
    for (int64_t i1 = 0; i1 < n1; ++i1) {
      if (d >= 2) x[1] = grid.lo[1] + (i1 + 0.5) * grid.h;
      for (int64_t i2 = 0; i2 < n2; ++i2) {
        if (d >= 3) x[2] = grid.lo[2] + (i2 + 0.5) * grid.h;
        bool in = fast_contains(body, x);
        flags[static_cast<size_t>(i1 * n2 + i2)] = in ? 1 : 0;
        if (in) ++cnt;
      }
    }
    slabs[i0] = std::move(flags);
    inside[i0] = cnt;
  });
  int64_t total_in = 0;
  for (int64_t c : inside) total_in += c;
  // Boundary proxy: cells whose flag flips along any grid axis.
  int64_t boundary = 0;
  for (int64_t i0 = 0; i0 < n0; ++i0)
    for (int64_t i1 = 0; i1 < n1; ++i1)
      for (int64_t i2 = 0; i2 < n2; ++i2) {
        uint8_t f = slabs[i0][static_cast<size_t>(i1 * n2 + i2)];
        bool flip = false;
        if (i0 + 1 < n0 && slabs[i0 + 1][static_cast<size_t>(i1 * n2 + i2)] != f) flip = true;
        if (!flip && i1 + 1 < n1 && slabs[i0][static_cast<size_t>((i1 + 1) * n2 + i2)] != f) flip = true;
        if (!flip && i2 + 1 < n2 && slabs[i0][static_cast<size_t>(i1 * n2 + i2 + 1)] != f) flip = true;
        if (flip) ++boundary;
      }
  GridValue out;
  out.value = static_cast<double>(total_in) * std::pow(grid.h, d);
  out.error_bound = static_cast<double>(boundary) * std::pow(grid.h, d);
  return out;
}

GridValue grid_section_measure(const ConvexBody& body, const Subspace& H, const Vec& y,
                               const Density& d, const GridSpec& grid) {
  int m = H.dim();
  if (m > 2) throw std::invalid_argument("grid_section_measure: dim(H) <= 2 only");
  if (body.dim() != H.ambient || d.dim != H.ambient)
    throw std::invalid_argument("grid_section_measure: dimension mismatch");
  Vec y_perp = H.perp(y);
  // Tight H-coordinate window from support evaluations.
  double wlo[2] = {0, 0}, whi[2] = {0, 0};
  bool have_hint = !body.is_implicit() || static_cast<bool>(body.implicit().support_hint);
  for (int j = 0; j < m; ++j) {
    if (have_hint) {
      whi[j] = support(body, H.basis[j]) + grid.h;
      wlo[j] = -support(body, -H.basis[j]) - grid.h;
    } else {
      whi[j] = body.norm_bound() + grid.h;
      wlo[j] = -whi[j];
    }
  }
  int64_t n1 = std::max<int64_t>(static_cast<int64_t>(std::ceil((whi[0] - wlo[0]) / grid.h)), 1);
  int64_t n2 = m == 2 ? std::max<int64_t>(static_cast<int64_t>(std::ceil((whi[1] - wlo[1]) / grid.h)), 1)
                      : 1;
  std::vector<double> sums(static_cast<size_t>(n1), 0.0);
  std::vector<int64_t> flips(static_cast<size_t>(n1), 0);
  parallel_for_slots(static_cast<int>(n1), [&](int i1) {
    double acc = 0;
    int64_t fl = 0;
    bool prev = false;
    Vec h = Vec::zero(m);
    h[0] = wlo[0] + (i1 + 0.5) * grid.h;
    for (int64_t i2 = 0; i2 < n2; ++i2) {
      if (m == 2) h[1] = wlo[1] + (i2 + 0.5) * grid.h;
      Vec p = y_perp + H.lift(h);
      bool in = fast_contains(body, p);
      if (in) acc += d(p);
      if (i2 > 0 && in != prev) ++fl;
      prev = in;
    }
    sums[i1] = acc;
    flips[i1] = fl + 1;
  });
  double total = 0;
  int64_t boundary = 0;
  for (double s : sums) total += s;
  for (int64_t f : flips) boundary += f;
  GridValue out;
  out.value = total * std::pow(grid.h, m);
  out.error_bound = static_cast<double>(boundary) * std::pow(grid.h, m) * d.attr.sup_value;
  return out;
}

std::pair<Vec, double> grid_sup_translate(const ConvexBody& body, const Subspace& H,
                                          const Density& d, double section_h, const Vec& scan_lo,
                                          const Vec& scan_hi, double scan_h) {
  int n = body.dim();
  if (n > 2) throw std::invalid_argument("grid_sup_translate: translate scan needs dimension <= 2");
  int64_t steps0 = static_cast<int64_t>(std::floor((scan_hi[0] - scan_lo[0]) / scan_h)) + 1;
  int64_t steps1 = n == 2 ? static_cast<int64_t>(std::floor((scan_hi[1] - scan_lo[1]) / scan_h)) + 1 : 1;
  Vec best_z = Vec::zero(n);
  double best = -1;
  for (int64_t i0 = 0; i0 < steps0; ++i0) {
    for (int64_t i1 = 0; i1 < steps1; ++i1) {
      Vec z = Vec::zero(n);
      z[0] = scan_lo[0] + i0 * scan_h;
      if (n == 2) z[1] = scan_lo[1] + i1 * scan_h;
      ConvexBody moved = translate(body, -z);
      GridSpec g;
      g.h = section_h;
      bounding_box(moved, g.lo, g.hi);
      double v = grid_section_measure(moved, H, Vec::zero(n), d, g).value;
      if (v > best) {
        best = v;
        best_z = z;
      }
    }
  }
  return {best_z, best};
}

}  // namespace rsm
