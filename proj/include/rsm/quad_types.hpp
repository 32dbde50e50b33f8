#pragma once

// Estimator configuration and the universal numeric return type.

#include <cmath>
#include <cstdint>
#include <string>

namespace rsm {

enum class Method { box_mc, polar, layer_cake };

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct EstimatorConfig {
  int64_t samples = 1 << 20;     // box MC draws (dimension <= 3 default)
  uint64_t seed = 1;
  Method method = Method::box_mc;
  int t_nodes = 64;              // Gauss-Legendre nodes on (0,1)
  double bisection_tol = 1e-10;
  int chunk = 8192;              // per-chunk seed derivation unit
  int polar_dirs = 512;          // direction draws for polar sections, m >= 2
  int64_t inner_samples = 1 << 18;  // per inner call in nested estimates
  int64_t outer_points = 1 << 12;   // outer rejection draws in nested estimates

  EstimatorConfig with_seed(uint64_t s) const {
    EstimatorConfig c = *this;
    c.seed = s;
    return c;
  }
  EstimatorConfig with_samples(int64_t n) const {
    EstimatorConfig c = *this;
    c.samples = n;
    return c;
  }
  EstimatorConfig with_method(Method m) const {
    EstimatorConfig c = *this;
    c.method = m;
    return c;
  }
};

struct Estimate {
  double value = 0;
  double std_error = 0;
  std::string method;
  double truncation_bound = 0;
  int64_t samples_used = 0;
};

inline Estimate exact_estimate(double v, const char* tag = "exact") {
  return Estimate{v, 0.0, tag, 0.0, 0};
}

// Relative standard error, saturating on zero-valued estimates.
inline double rel_err(const Estimate& e) {
  if (e.value == 0) return e.std_error == 0 ? 0.0 : 1e300;
  return e.std_error / std::abs(e.value);
}

}  // namespace rsm
