#pragma once

// Exact combinatorial constants and the beta-function factors appearing in
// the inequality catalog. Binomials are big-integer exact; beta values use
// log-gamma with an exact-rational cross-check at integer arguments.

#include <string>

namespace rsm {

double binomial(int a, int b);
std::string binomial_exact_str(int a, int b);

// min{n/m, sqrt(m)}: the dimensional factor of the sectional inequality.
double psi_factor(int n, int m);

// B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y).
double beta_function(double x, double y);

// Exact rational check of 1/(n B(n,m)) == (m/(n+m)) C(n+m, n).
bool beta_identity_exact(int n, int m);

// (n + s) B(n + s, m): the s-concave-density sectional constant.
double sectional_beta_constant(int n, int m, double s);

}  // namespace rsm
