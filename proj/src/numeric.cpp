#include "rsm/numeric.hpp"

#include <stdexcept>

namespace rsm {

namespace {

double simpson_rule(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, double abs_floor, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson_rule(fa, flm, fm, m - a);
  double right = simpson_rule(fm, frm, fb, b - m);
  double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * std::max(tol * std::abs(left + right), abs_floor)) {
    return left + right + diff / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, tol, abs_floor * 0.5, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol, abs_floor * 0.5, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol,
                        double abs_floor, int max_depth) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = simpson_rule(fa, fm, fb, b - a);
  return simpson_rec(f, a, b, fa, fm, fb, whole, rel_tol, abs_floor, max_depth);
}

std::vector<QuadNode> gauss_legendre_01(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: n >= 1 required");
  // Nodes on [-1,1] by Newton iteration on P_n, then mapped to (0,1).
  std::vector<QuadNode> out(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    out[i] = {0.5 * (1.0 - x), 0.5 * w};
    out[n - 1 - i] = {0.5 * (1.0 + x), 0.5 * w};
  }
  return out;
}

double unit_ball_volume(int s) {
  if (s < 0) throw std::invalid_argument("unit_ball_volume: s >= 0 required");
  if (s == 0) return 1.0;
  return std::pow(3.14159265358979323846, 0.5 * s) / std::tgamma(0.5 * s + 1.0);
}

double sphere_surface(int m) {
  if (m < 1) throw std::invalid_argument("sphere_surface: m >= 1 required");
  return 2.0 * std::pow(3.14159265358979323846, 0.5 * m) / std::tgamma(0.5 * m);
}

}  // namespace rsm
