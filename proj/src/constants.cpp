#include "rsm/constants.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>

namespace rsm {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial_big(int a, int b) {
  if (b < 0 || b > a || a < 0) throw std::invalid_argument("binomial: need 0 <= b <= a");
  if (b > a - b) b = a - b;
  BigInt r = 1;
  for (int i = 1; i <= b; ++i) {
    r *= a - b + i;
    r /= i;
  }
  return r;
}

Rational beta_rational(int a, int b) {
  // B(a,b) = (a-1)! (b-1)! / (a+b-1)!
  auto fact = [](int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  return Rational(fact(a - 1) * fact(b - 1), fact(a + b - 1));
}

}  // namespace

double binomial(int a, int b) { return static_cast<double>(binomial_big(a, b)); }

std::string binomial_exact_str(int a, int b) { return binomial_big(a, b).str(); }

double psi_factor(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("psi_factor: need 1 <= m <= n");
  return std::min(static_cast<double>(n) / m, std::sqrt(static_cast<double>(m)));
}

double beta_function(double x, double y) {
  if (!(x > 0) || !(y > 0)) throw std::invalid_argument("beta_function: positive arguments required");
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

bool beta_identity_exact(int n, int m) {
  // 1 / (n B(n, m)) == (m / (n + m)) C(n + m, n), exactly in rationals.
  Rational lhs = Rational(1) / (Rational(n) * beta_rational(n, m));
  Rational rhs = Rational(m, n + m) * Rational(binomial_big(n + m, n));
  return lhs == rhs;
}

double sectional_beta_constant(int n, int m, double s) {
  double ns = n + s;
  if (!(ns > 0)) throw std::invalid_argument("sectional_beta_constant: n + s must be positive");
  return ns * beta_function(ns, static_cast<double>(m));
}

}  // namespace rsm
