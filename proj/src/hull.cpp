#include "rsm/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace rsm {

namespace {

double coord_scale(const std::vector<Vec>& pts) {
  double s = 1.0;
  for (const Vec& p : pts)
    for (int i = 0; i < p.dim(); ++i) s = std::max(s, std::abs(p[i]));
  return s;
}

std::vector<Vec> dedup(const std::vector<Vec>& pts, double eps) {
  std::vector<Vec> out;
  for (const Vec& p : pts) {
    bool seen = false;
    for (const Vec& q : out) {
      double d2 = 0;
      for (int i = 0; i < p.dim(); ++i) d2 += (p[i] - q[i]) * (p[i] - q[i]);
      if (d2 <= eps * eps) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(p);
  }
  return out;
}

HullResult hull_1d(std::vector<Vec> pts) {
  double lo = pts[0][0], hi = pts[0][0];
  for (const Vec& p : pts) {
    lo = std::min(lo, p[0]);
    hi = std::max(hi, p[0]);
  }
  HullResult h;
  h.vertices = {Vec{lo}, Vec{hi}};
  h.facets.normals = {Vec{-1.0}, Vec{1.0}};
  h.facets.offsets = {-lo, hi};
  h.facets.scale = std::max(std::abs(lo), std::abs(hi));
  h.volume = hi - lo;
  return h;
}

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

HullResult hull_2d(std::vector<Vec> pts, double eps) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  const double cross_eps = eps * coord_scale(pts);  // cross products scale as length^2
  auto build = [&](bool upper) {
    std::vector<Vec> chain;
    for (size_t k = 0; k < pts.size(); ++k) {
      const Vec& p = pts[upper ? pts.size() - 1 - k : k];
      while (chain.size() >= 2 && cross2(chain[chain.size() - 2], chain.back(), p) <= cross_eps)
        chain.pop_back();
      chain.push_back(p);
    }
    return chain;
  };
  std::vector<Vec> lower = build(false), upper = build(true);
  lower.pop_back();
  upper.pop_back();
  std::vector<Vec> hull = lower;
  hull.insert(hull.end(), upper.begin(), upper.end());

  HullResult h;
  h.vertices = hull;
  h.facets.scale = coord_scale(hull);
  double area = 0;
  size_t nv = hull.size();
  for (size_t i = 0; i < nv; ++i) {
    const Vec& p = hull[i];
    const Vec& q = hull[(i + 1) % nv];
    area += p[0] * q[1] - q[0] * p[1];
    Vec edge = q - p;
    double len = norm(edge);
    if (len <= eps) continue;
    Vec nrm{edge[1] / len, -edge[0] / len};  // right of travel = outside for CCW
    h.facets.normals.push_back(nrm);
    h.facets.offsets.push_back(dot(nrm, p));
  }
  h.volume = 0.5 * std::abs(area);
  return h;
}

struct Face {
  int a, b, c;
  Vec n;      // unit outward normal
  double off;  // n.x = off on the face plane
  bool alive = true;
};

HullResult hull_3d(const std::vector<Vec>& pts, double eps) {
  size_t np = pts.size();
  // Initial tetrahedron from spread-out points.
  size_t i0 = 0, i1 = 0;
  for (size_t i = 0; i < np; ++i) {
    if (pts[i][0] < pts[i0][0]) i0 = i;
    if (pts[i][0] > pts[i1][0]) i1 = i;
  }
  if (i0 == i1) i1 = (i0 + 1) % np;
  size_t i2 = np, i3 = np;
  double best = eps;
  Vec d01 = pts[i1] - pts[i0];
  for (size_t i = 0; i < np; ++i) {
    Vec w = pts[i] - pts[i0];
    Vec c{d01[1] * w[2] - d01[2] * w[1], d01[2] * w[0] - d01[0] * w[2], d01[0] * w[1] - d01[1] * w[0]};
    double a = norm(c);
    if (a > best) {
      best = a;
      i2 = i;
    }
  }
  if (i2 == np) throw std::invalid_argument("convex_hull: points are collinear");
  Vec d02 = pts[i2] - pts[i0];
  Vec n0{d01[1] * d02[2] - d01[2] * d02[1], d01[2] * d02[0] - d01[0] * d02[2],
         d01[0] * d02[1] - d01[1] * d02[0]};
  best = eps;
  for (size_t i = 0; i < np; ++i) {
    double v = std::abs(dot(n0, pts[i] - pts[i0]));
    if (v > best) {
      best = v;
      i3 = i;
    }
  }
  if (i3 == np) throw std::invalid_argument("convex_hull: points are coplanar");

  std::vector<Face> faces;
  Vec centroid = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);
  auto add_face = [&](int a, int b, int c) {
    Vec u = pts[b] - pts[a], v = pts[c] - pts[a];
    Vec n{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    double len = norm(n);
    if (len < 1e-300) return;
    n *= 1.0 / len;
    if (dot(n, centroid - pts[a]) > 0) {
      std::swap(b, c);
      n = -n;
    }
    faces.push_back(Face{a, b, c, n, dot(n, pts[a])});
  };
  add_face((int)i0, (int)i1, (int)i2);
  add_face((int)i0, (int)i1, (int)i3);
  add_face((int)i0, (int)i2, (int)i3);
  add_face((int)i1, (int)i2, (int)i3);

  for (size_t i = 0; i < np; ++i) {
    if (i == i0 || i == i1 || i == i2 || i == i3) continue;
    // Visible faces.
    std::vector<int> vis;
    for (size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive && dot(faces[f].n, pts[i]) - faces[f].off > eps) vis.push_back((int)f);
    if (vis.empty()) continue;
    // Horizon: edges shared by exactly one visible face.
    std::map<std::pair<int, int>, int> edge_count;
    auto bump = [&](int a, int b) {
      auto key = std::minmax(a, b);
      edge_count[{key.first, key.second}]++;
    };
    for (int f : vis) {
      bump(faces[f].a, faces[f].b);
      bump(faces[f].b, faces[f].c);
      bump(faces[f].c, faces[f].a);
    }
    for (int f : vis) faces[f].alive = false;
    for (int f : vis) {
      const Face& fc = faces[f];
      int ed[3][2] = {{fc.a, fc.b}, {fc.b, fc.c}, {fc.c, fc.a}};
      for (auto& e : ed) {
        auto key = std::minmax(e[0], e[1]);
        if (edge_count[{key.first, key.second}] == 1) add_face(e[0], e[1], (int)i);
      }
    }
    faces.erase(std::remove_if(faces.begin(), faces.end(), [](const Face& f) { return !f.alive; }),
                faces.end());
  }

  HullResult h;
  std::vector<char> used(np, 0);
  for (const Face& f : faces) used[f.a] = used[f.b] = used[f.c] = 1;
  for (size_t i = 0; i < np; ++i)
    if (used[i]) h.vertices.push_back(pts[i]);
  h.facets.scale = coord_scale(h.vertices);
  for (const Face& f : faces) {
    h.facets.normals.push_back(f.n);
    h.facets.offsets.push_back(f.off);
  }
  // Volume: sum of signed tetrahedra against the centroid.
  Vec c0 = Vec::zero(3);
  for (const Vec& v : h.vertices) c0 += v;
  c0 *= 1.0 / static_cast<double>(h.vertices.size());
  double vol = 0;
  for (const Face& f : faces) {
    Vec a = pts[f.a] - c0, b = pts[f.b] - c0, c = pts[f.c] - c0;
    vol += std::abs(a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                    a[2] * (b[0] * c[1] - b[1] * c[0])) / 6.0;
  }
  h.volume = vol;
  return h;
}

}  // namespace

int affine_dimension(const std::vector<Vec>& points) {
  if (points.empty()) return -1;
  int n = points[0].dim();
  double scale = coord_scale(points);
  std::vector<Vec> rows;
  for (size_t i = 1; i < points.size(); ++i) rows.push_back(points[i] - points[0]);
  // Row-reduce with partial pivoting.
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    double best = 1e-9 * scale;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (std::abs(rows[r][col]) > best) {
        best = std::abs(rows[r][col]);
        piv = r;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank) continue;
      double f = rows[r][col] / rows[rank][col];
      for (int c = 0; c < n; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

HullResult convex_hull(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: no points");
  int d = points[0].dim();
  if (d < 1 || d > 3) throw std::invalid_argument("convex_hull: dimension must be 1..3");
  for (const Vec& p : points)
    if (p.dim() != d || !p.finite()) throw std::invalid_argument("convex_hull: bad point");
  double eps = 1e-12 * std::max(1.0, coord_scale(points));
  std::vector<Vec> pts = dedup(points, eps * 10);
  if (d == 1) return hull_1d(pts);
  if (affine_dimension(pts) < d) throw std::invalid_argument("convex_hull: points not full-dimensional");
  if (d == 2) return hull_2d(pts, eps);
  return hull_3d(pts, eps);
}

}  // namespace rsm
