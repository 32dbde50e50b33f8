#pragma once

// s-concave function catalog and the functional transforms built on it:
// alpha-means, difference functions, super-level sets, Ball bodies K_m(f),
// the level body L_m(f), and the lifted bodies A_{f,s} / B_{f,s}.

#include <functional>
#include <optional>
#include <string>

#include "rsm/body.hpp"
#include "rsm/vec.hpp"

namespace rsm {

// Unweighted alpha-mean M_alpha(a,b); zero whenever ab = 0.
double alpha_mean(double a, double b, double alpha);
// Weighted mean M_alpha^lambda(a,b), lambda in [0,1].
double alpha_mean(double a, double b, double alpha, double lambda);

enum class FuncFamily {
  indicator,    // chi_K; admissible for every alpha
  gaussian,     // exp(-|x|^2), log-concave
  exp_norm,     // exp(-|x|), log-concave
  cone,         // max(0, 1-|x|)^s, (1/s)-concave, s > 0
  power_decay,  // (1+|x|)^-p, p > n, (-1/p)-concave
};

struct SConcaveFunction {
  int dim = 0;
  FuncFamily family = FuncFamily::gaussian;
  std::function<double(const Vec&)> eval;
  double s = 0;          // concavity exponent class (paper parametrization)
  double sup_value = 1;  // attained at the origin for all catalog members
  bool radial = false;
  double shape = 0;  // cone s / power_decay p

  // Super-level sets C_t = { f >= t * sup }, t in (0,1]; closed-form balls
  // (or K itself) for the whole catalog.
  std::function<ConvexBody(double)> level_set_form;
  bool unbounded_levels = false;  // level radius diverges as t -> 0
  double effective_radius = 0;    // f < 1e-12 * sup outside this radius
  std::optional<ConvexBody> body;  // indicator support

  std::string name;
  // K - K, precomputed for indicators (difference-function closed form).
  std::optional<ConvexBody> indicator_diff;
  double operator()(const Vec& x) const { return eval(x); }
};

struct FuncParams {
  double s = 1.0;                  // cone exponent
  double p = 0.0;                  // power_decay exponent; 0 means 2n
  std::optional<ConvexBody> body;  // indicator
};

SConcaveFunction make_function(FuncFamily family, int n, const FuncParams& params = {});
SConcaveFunction parse_function(const std::string& text, int n);

// Largest admissible alpha for f (alpha-concavity is downward closed).
double alpha_class(const SConcaveFunction& f);

ConvexBody level_set(const SConcaveFunction& f, double t);

// --- difference function ------------------------------------------------------

struct DeltaConfig {
  int restarts = 16;
  uint64_t seed = 0x5eed;
  double step_tol = 1e-8;
  double value_tol = 1e-10;
  int max_iters = 400;
};

struct DeltaValue {
  double value = 0;
  bool converged = true;   // restarts agreed within 1e-4 relative
  bool closed_form = false;
};

// Delta_alpha f(x) = sup over x = x1 - x2 of M_alpha(f(x1), f(x2)).
// Closed forms cover the catalog; force_search bypasses them so the
// derivative-free route can be validated independently.
DeltaValue delta_alpha(const SConcaveFunction& f, double alpha, const Vec& x,
                       const DeltaConfig& cfg = {}, bool force_search = false);

// Quasi-concave route: sup{ t : x in C_t - C_t } by bisection in t with
// difference-body membership. Cross-check for alpha = -inf.
double delta_minus_inf_by_levels(const SConcaveFunction& f, const Vec& x, double tol = 1e-9);

// Delta_alpha f packaged as a catalog function (closed-form evaluator and
// level-set form); alpha must be admissible for f.
SConcaveFunction delta_function(const SConcaveFunction& f, double alpha);
// x -> Delta_alpha f(2x): the halved difference function.
SConcaveFunction delta_halved_function(const SConcaveFunction& f, double alpha);

// --- derived bodies -------------------------------------------------------------

// Ball body K_m(f): radial power m equals the m-moment of f along rays.
ConvexBody ball_body(const SConcaveFunction& f, int m);
// Radial function of K_m(f) in direction u (unit).
double ball_body_radial(const SConcaveFunction& f, int m, const Vec& u);

// L_m(f) = { f >= sup * e^{-m} }.
ConvexBody level_body_Lm(const SConcaveFunction& f, int m);

// Lifted bodies. lift_A needs integer s >= 1; lift_B needs s = p/q in
// lowest terms (p, q >= 1). Boundary |y| = f(x)^{1/s} counts as inside.
ConvexBody lift_A(const SConcaveFunction& f, int s);
ConvexBody lift_B(const SConcaveFunction& f, int p, int q);

// sup over x1 of f(x1)^{1/s} + f(x1 - x)^{1/s}: the y-radius of the slice
// of A_{f,s} + (-A_{f,s}) over x, computed by direct search (independent of
// the difference-function closed forms).
double lift_sum_radius(const SConcaveFunction& f, int s, const Vec& x, const DeltaConfig& cfg = {});

}  // namespace rsm
