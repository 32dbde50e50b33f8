#pragma once

// Shared quadrature and special-function helpers.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace rsm {

// Adaptive Simpson on [a,b] to relative tolerance rel_tol (with an absolute
// floor to terminate on integrals near zero).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10, double abs_floor = 1e-300, int max_depth = 40);

// Gauss-Legendre nodes/weights on (0,1).
struct QuadNode {
  double x;
  double w;
};
std::vector<QuadNode> gauss_legendre_01(int n);

// Volume of the unit ball in R^s and surface area of S^{m-1}.
double unit_ball_volume(int s);
double sphere_surface(int m);

}  // namespace rsm
