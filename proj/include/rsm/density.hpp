#pragma once

// Measure densities with declared structural attributes, plus products on
// (R^n)^p and lifts to R^{n+s}. Densities are unnormalized (phi(0) = 1
// scale); every inequality in the catalog is scale-invariant in phi.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rsm/body.hpp"
#include "rsm/vec.hpp"

namespace rsm {

struct DensityAttributes {
  bool even = false;
  bool radially_decreasing = false;
  bool quasiconcave = false;
  bool max_at_origin = false;
  std::optional<double> s_class;  // phi is (1/s)-concave for this s
  double sup_value = 1.0;
};

struct Density {
  int dim = 0;
  std::function<double(const Vec&)> eval;
  DensityAttributes attr;
  std::string name;    // family + parameters, e.g. "gaussian 1"
  double support_radius = std::numeric_limits<double>::infinity();
  // Radius that a translate search must cover for a body of the given norm
  // bound. Conical supports (wedges) push the maximizer far from the origin.
  std::function<double(double)> search_radius;  // optional

  double operator()(const Vec& x) const { return eval(x); }
  double translate_search_radius(double body_bound) const;
};

enum class DensityFamily {
  lebesgue,
  gaussian,        // exp(-|x|^2 / (2 sigma^2))
  exponential,     // exp(-|x|)
  power_law,       // (1+|x|)^-beta, beta > n
  body_indicator,  // chi_K, 0 interior to K
  wedge,           // planar cone of opening angle 1/k at the positive x-axis
  wedge_pair,      // support extended to -W (drops quasi-concavity)
  s_cone,          // max(0, 1-|x|)^s, s > 0
  s_tail,          // (1+|x|)^s, -n < s < 0
};

struct DensityParams {
  double sigma = 1.0;   // gaussian
  double beta = 0.0;    // power_law; 0 means the 2n default
  double s = 0.0;       // s_cone / s_tail
  double k = 0.0;       // wedge opening 1/k
  std::optional<ConvexBody> body;  // body_indicator
};

Density make_density(DensityFamily family, int n, const DensityParams& params = {});
Density parse_density(const std::string& text, int n);

struct AttributeViolation {
  std::string attribute;
  Vec witness;
  Vec witness2;
  double lhs = 0, rhs = 0;
};

// Monte Carlo falsification of the declared attributes over the sampling
// box [-R, R]^n. Violations are data, not errors.
std::vector<AttributeViolation> validate_attributes(const Density& d, int samples, uint64_t seed,
                                                    double box_radius = 4.0);

// Product of factor densities on the concatenation of their ambients.
Density product_density(const std::vector<Density>& factors);

// phi~(x, y) = phi(x) on R^{n+extra} (the density of nu_s).
Density lift_density(const Density& d, int extra);

}  // namespace rsm
