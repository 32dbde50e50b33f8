#pragma once

// Fixed-capacity vectors and orthonormal subspaces for low-dimensional
// convex geometry. Everything lives on the stack; ambient dimensions in
// this library never exceed kMaxDim (lifted bodies top out at n*q + p).

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsm {

inline constexpr int kMaxDim = 8;

struct Vec {
  std::array<double, kMaxDim> a{};
  int n = 0;

  Vec() = default;
  explicit Vec(int dim) : n(dim) {
    if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("Vec: bad dimension " + std::to_string(dim));
  }
  Vec(std::initializer_list<double> xs) {
    if (static_cast<int>(xs.size()) > kMaxDim) throw std::invalid_argument("Vec: too many coordinates");
    n = static_cast<int>(xs.size());
    int i = 0;
    for (double x : xs) a[i++] = x;
  }

  static Vec zero(int dim) { return Vec(dim); }
  static Vec axis(int dim, int i, double v = 1.0) {
    Vec e(dim);
    e.a[i] = v;
    return e;
  }
  static Vec from(const std::vector<double>& xs) {
    Vec v(static_cast<int>(xs.size()));
    for (int i = 0; i < v.n; ++i) v.a[i] = xs[i];
    return v;
  }

  int dim() const { return n; }
  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] += o.a[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] -= o.a[i];
    return *this;
  }
  Vec& operator*=(double c) {
    for (int i = 0; i < n; ++i) a[i] *= c;
    return *this;
  }

  friend Vec operator+(Vec x, const Vec& y) { return x += y; }
  friend Vec operator-(Vec x, const Vec& y) { return x -= y; }
  friend Vec operator*(Vec x, double c) { return x *= c; }
  friend Vec operator*(double c, Vec x) { return x *= c; }
  friend Vec operator-(Vec x) { return x *= -1.0; }

  bool finite() const {
    for (int i = 0; i < n; ++i)
      if (!std::isfinite(a[i])) return false;
    return true;
  }
};

inline double dot(const Vec& x, const Vec& y) {
  double s = 0;
  for (int i = 0; i < x.n; ++i) s += x.a[i] * y.a[i];
  return s;
}

inline double norm2(const Vec& x) { return dot(x, x); }
inline double norm(const Vec& x) { return std::sqrt(norm2(x)); }

inline Vec normalized(const Vec& x) {
  double r = norm(x);
  if (r <= 0) throw std::invalid_argument("normalized: zero vector");
  return x * (1.0 / r);
}

inline std::string to_string(const Vec& x) {
  std::string s = "(";
  for (int i = 0; i < x.n; ++i) {
    if (i) s += ", ";
    s += std::to_string(x.a[i]);
  }
  return s + ")";
}

// An m-dimensional linear subspace of R^n, carried as an orthonormal basis.
struct Subspace {
  int ambient = 0;
  std::vector<Vec> basis;

  int dim() const { return static_cast<int>(basis.size()); }

  // Span of coordinate axes.
  static Subspace axes(int n, const std::vector<int>& idx);
  static Subspace full(int n);
  // Seeded Haar-ish random subspace (Gram-Schmidt of gaussian vectors).
  static Subspace random(int n, int m, uint64_t seed);

  // H-coordinates -> ambient point.
  Vec lift(const Vec& coords) const {
    Vec x = Vec::zero(ambient);
    for (int j = 0; j < dim(); ++j) x += coords[j] * basis[j];
    return x;
  }
  // Ambient -> H-coordinates of the projection.
  Vec coords(const Vec& x) const {
    Vec c(dim());
    for (int j = 0; j < dim(); ++j) c[j] = dot(x, basis[j]);
    return c;
  }
  Vec project(const Vec& x) const { return lift(coords(x)); }
  Vec perp(const Vec& x) const { return x - project(x); }

  // Gram matrix must be within 1e-10 of the identity.
  void validate() const;
};

// Basis vectors of each H_i lifted into block i of (R^n)^p.
Subspace product_subspace(const std::vector<Subspace>& parts);

// H x R^s inside R^{n+s}: H's basis padded with zeros plus the trailing axes.
Subspace augment_subspace(const Subspace& h, int extra);

}  // namespace rsm
