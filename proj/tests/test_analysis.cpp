#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rsm/density.hpp"
#include "rsm/funclass.hpp"
#include "rsm/rng.hpp"

using namespace rsm;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("density families: point values") {
  Density g = make_density(DensityFamily::gaussian, 2, {.sigma = 1.0});
  CHECK(g(Vec::zero(2)) == doctest::Approx(1.0));
  CHECK(g(Vec{1.0, 0.0}) == doctest::Approx(std::exp(-0.5)));

  Density w = make_density(DensityFamily::wedge, 2, {.k = 100});
  CHECK(w(Vec{1.0, 0.001}) == 1.0);
  CHECK(w(Vec{1.0, 0.02}) == 0.0);

  Density sc = make_density(DensityFamily::s_cone, 2, {.s = 2});
  CHECK(sc(Vec{0.5, 0.0}) == doctest::Approx(0.25));

  Density st = make_density(DensityFamily::s_tail, 2, {.s = -1});
  CHECK(st(Vec{1.0, 0.0}) == doctest::Approx(0.5));

  CHECK_THROWS_AS(make_density(DensityFamily::gaussian, 2, {.sigma = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_density(DensityFamily::power_law, 2, {.beta = 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(make_density(DensityFamily::s_tail, 2, {.s = -3.0}), std::invalid_argument);
  CHECK_THROWS_AS(make_density(DensityFamily::wedge, 3, {.k = 10}), std::invalid_argument);
}

TEST_CASE("validate_attributes: clean catalogs and planted violations") {
  Density g = make_density(DensityFamily::gaussian, 2);
  CHECK(validate_attributes(g, 4000, 1).empty());

  Density pl = make_density(DensityFamily::power_law, 2, {.beta = 3});
  CHECK(validate_attributes(pl, 4000, 2).empty());

  Density st = make_density(DensityFamily::s_tail, 2, {.s = -1});
  CHECK(validate_attributes(st, 4000, 5).empty());

  Density w = make_density(DensityFamily::wedge, 2, {.k = 100});
  CHECK(validate_attributes(w, 4000, 3).empty());
  Density wl = w;
  wl.attr.even = true;  // plant a lie
  auto viol = validate_attributes(wl, 20000, 4);
  REQUIRE_FALSE(viol.empty());
  CHECK(viol[0].attribute == "even");
  // Witness pair really disagrees.
  CHECK(w(viol[0].witness) != w(viol[0].witness2));

  Density wp = make_density(DensityFamily::wedge_pair, 2, {.k = 50});
  CHECK(validate_attributes(wp, 4000, 6).empty());  // even, not quasiconcave: attrs are truthful
  Density wpl = wp;
  wpl.attr.quasiconcave = true;
  CHECK_FALSE(validate_attributes(wpl, 20000, 7).empty());
}

TEST_CASE("s_cone midpoint s-mean inequality on sampled pairs") {
  Density sc = make_density(DensityFamily::s_cone, 2, {.s = 2});
  Rng rng(17);
  int inside = 0;
  while (inside < 10000) {
    Vec x = rng.in_box(Vec{-1, -1}, Vec{1, 1});
    Vec y = rng.in_box(Vec{-1, -1}, Vec{1, 1});
    double fx = sc(x), fy = sc(y);
    if (fx <= 0 || fy <= 0) continue;
    ++inside;
    double lhs = std::pow(sc((x + y) * 0.5), 0.5);
    double rhs = 0.5 * std::pow(fx, 0.5) + 0.5 * std::pow(fy, 0.5);
    CHECK(lhs >= rhs - 1e-9);
  }
}

TEST_CASE("product and lifted densities evaluate exactly") {
  Density g = make_density(DensityFamily::gaussian, 2);
  Density e = make_density(DensityFamily::exponential, 2);
  Density prod = product_density({g, e});
  CHECK(prod.dim == 4);
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    Vec x = rng.gaussian_vec(4);
    Vec a{x[0], x[1]}, b{x[2], x[3]};
    CHECK(prod(x) == g(a) * e(b));
  }
  Density lifted = lift_density(g, 2);
  for (int i = 0; i < 200; ++i) {
    Vec x = rng.gaussian_vec(4);
    CHECK(lifted(x) == g(Vec{x[0], x[1]}));
  }
}

TEST_CASE("alpha_mean case table") {
  CHECK(alpha_mean(1, 4, 0, 0.5) == doctest::Approx(2.0));
  CHECK(alpha_mean(3, 7, kInf) == 7.0);
  CHECK(alpha_mean(3, 7, -kInf) == 3.0);
  for (double a : {-kInf, -2.0, -1.0, 0.0, 0.5, 2.0, kInf}) {
    CHECK(alpha_mean(2.0, 0.0, a) == 0.0);
    CHECK(alpha_mean(0.0, 3.0, a) == 0.0);
  }
  CHECK(alpha_mean(2, 2, 1) == doctest::Approx(4.0));          // (2+2)
  CHECK(alpha_mean(2, 2, -1) == doctest::Approx(1.0));         // harmonic-type
  CHECK(alpha_mean(4, 9, 0) == doctest::Approx(36.0));         // product form
  CHECK(alpha_mean(4, 9, 0, 0.5) == doctest::Approx(6.0));     // geometric mean
  CHECK_THROWS_AS(alpha_mean(-1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(alpha_mean(1, 1, 0, 1.5), std::invalid_argument);
}

TEST_CASE("make_function: level sets and point values") {
  SConcaveFunction g = make_function(FuncFamily::gaussian, 2);
  ConvexBody c = level_set(g, std::exp(-1.0));
  REQUIRE(c.is_ball());
  CHECK(c.ball().radius == doctest::Approx(1.0));

  SConcaveFunction ind = make_function(FuncFamily::indicator, 2, {.body = make_simplex(2)});
  for (double t : {0.1, 0.5, 1.0}) {
    ConvexBody k = level_set(ind, t);
    CHECK(fast_contains(k, Vec{0.3, 0.3}));
    CHECK_FALSE(fast_contains(k, Vec{0.9, 0.9}));
  }

  SConcaveFunction cone1 = make_function(FuncFamily::cone, 2, {.s = 1});
  CHECK(cone1(Vec{0.25, 0.0}) == doctest::Approx(0.75));

  // Level-set form matches the evaluator on sampled points.
  Rng rng(21);
  for (const auto& f : {g, cone1, make_function(FuncFamily::exp_norm, 2),
                        make_function(FuncFamily::power_decay, 2, {})}) {
    for (double t : {0.2, 0.5, 0.8}) {
      ConvexBody ct = level_set(f, t);
      for (int i = 0; i < 300; ++i) {
        Vec x = rng.gaussian_vec(2);
        if (std::abs(f(x) - t) < 1e-9) continue;
        CHECK(fast_contains(ct, x) == (f(x) >= t));
      }
    }
  }
}

TEST_CASE("delta: indicator equals the difference-body indicator pointwise") {
  ConvexBody K = make_random_polytope(2, 6, 31);
  SConcaveFunction f = make_function(FuncFamily::indicator, 2, {.body = translate(K, -K.anchor_point())});
  ConvexBody D = *f.indicator_diff;
  Rng rng(32);
  Vec lo, hi;
  bounding_box(D, lo, hi);
  for (int i = 0; i < 1000; ++i) {
    Vec x = rng.in_box(lo, hi);
    double d = delta_alpha(f, -kInf, x).value;
    CHECK(d == (fast_contains(D, x) ? 1.0 : 0.0));
  }
}

TEST_CASE("delta: gaussian closed form and sup norm") {
  SConcaveFunction g = make_function(FuncFamily::gaussian, 2);
  Vec x{1.0, 0.0};
  CHECK(delta_alpha(g, 0.0, x).value == doctest::Approx(std::exp(-0.5)));
  // |Delta_0 f|_inf = |f|_inf^2 (both 1 at the origin for the catalog scale).
  CHECK(delta_alpha(g, 0.0, Vec::zero(2)).value == doctest::Approx(1.0));
  CHECK_THROWS_AS(delta_alpha(g, 1.0, x), std::invalid_argument);  // not (1/s)-concave for s>0
}

TEST_CASE("delta: derivative-free search agrees with closed forms") {
  DeltaConfig cfg;
  Rng rng(55);
  auto check_family = [&](const SConcaveFunction& f, double alpha, double tol) {
    for (int i = 0; i < 12; ++i) {
      Vec x = rng.gaussian_vec(f.dim);
      double closed = delta_alpha(f, alpha, x).value;
      DeltaValue searched = delta_alpha(f, alpha, x, cfg, /*force_search=*/true);
      CHECK(std::abs(searched.value - closed) <= tol * std::max(1.0, closed));
    }
  };
  check_family(make_function(FuncFamily::gaussian, 2), 0.0, 1e-6);
  check_family(make_function(FuncFamily::gaussian, 2), -1.0, 1e-6);
  check_family(make_function(FuncFamily::gaussian, 2), -kInf, 1e-6);
  check_family(make_function(FuncFamily::exp_norm, 2), 0.0, 1e-6);
  check_family(make_function(FuncFamily::cone, 2, {.s = 1}), 1.0, 1e-6);
  check_family(make_function(FuncFamily::cone, 2, {.s = 2}), 0.5, 1e-6);
  check_family(make_function(FuncFamily::power_decay, 1, {}), -kInf, 1e-6);
}

TEST_CASE("delta: level-set bisection route agrees at alpha = -inf") {
  SConcaveFunction g = make_function(FuncFamily::gaussian, 2);
  Rng rng(66);
  for (int i = 0; i < 20; ++i) {
    Vec x = rng.gaussian_vec(2);
    double via_levels = delta_minus_inf_by_levels(g, x);
    double closed = delta_alpha(g, -kInf, x).value;
    CHECK(via_levels == doctest::Approx(closed).epsilon(1e-6));
  }
}

TEST_CASE("delta: evenness and monotonicity in alpha") {
  SConcaveFunction g = make_function(FuncFamily::gaussian, 2);
  Rng rng(77);
  for (int i = 0; i < 50; ++i) {
    Vec x = rng.gaussian_vec(2);
    CHECK(delta_alpha(g, 0.0, x).value == doctest::Approx(delta_alpha(g, 0.0, -x).value));
    // Delta_{1/s} <= Delta_{-inf} for s < 0.
    CHECK(delta_alpha(g, -0.5, x).value <= delta_alpha(g, -kInf, x).value + 1e-12);
    CHECK(delta_alpha(g, -2.0, x).value <= delta_alpha(g, -kInf, x).value + 1e-12);
  }
}

TEST_CASE("level-set identity C_t(Delta_-inf f) = C_t(f) - C_t(f)") {
  Rng rng(88);
  for (const auto& f :
       {make_function(FuncFamily::gaussian, 2), make_function(FuncFamily::cone, 2, {.s = 1}),
        make_function(FuncFamily::exp_norm, 2),
        make_function(FuncFamily::indicator, 2, {.body = make_simplex(2)})}) {
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      ConvexBody diff = difference_body(level_set(f, t));
      for (int i = 0; i < 60; ++i) {
        Vec x = rng.gaussian_vec(2) * 1.5;
        double dv = delta_alpha(f, -kInf, x).value;
        if (std::abs(dv - t * f.sup_value) < 1e-7) continue;  // boundary band
        CHECK(fast_contains(diff, x) == (dv >= t * f.sup_value));
      }
    }
  }
}

TEST_CASE("ball_body: exponential moments, indicator reproduction, scale invariance") {
  SConcaveFunction e2 = make_function(FuncFamily::exp_norm, 2);
  ConvexBody k2 = ball_body(e2, 2);
  REQUIRE(k2.is_ball());
  CHECK(k2.ball().radius == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));  // (m!)^{1/m}
  ConvexBody k1 = ball_body(e2, 1);
  CHECK(k1.ball().radius == doctest::Approx(1.0).epsilon(1e-8));

  // K_m(chi_K) = K: radial functions agree along sampled directions.
  ConvexBody K = make_random_polytope(2, 6, 41);
  K = translate(K, -K.anchor_point());
  SConcaveFunction ind = make_function(FuncFamily::indicator, 2, {.body = K});
  Rng rng(42);
  for (int i = 0; i < 40; ++i) {
    Vec u = rng.on_sphere(2);
    CHECK(ball_body_radial(ind, 2, u) ==
          doctest::Approx(section_radial(K, Vec::zero(2), u)).epsilon(1e-8));
  }

  // Scaling f leaves K_m(f) unchanged (the f / |f|_inf ratio is invariant).
  SConcaveFunction scaled = e2;
  auto base = e2.eval;
  scaled.eval = [base](const Vec& x) { return 3.5 * base(x); };
  scaled.sup_value = 3.5;
  CHECK(ball_body_radial(scaled, 2, Vec{1.0, 0.0}) ==
        doctest::Approx(ball_body_radial(e2, 2, Vec{1.0, 0.0})));

  SConcaveFunction g3 = make_function(FuncFamily::gaussian, 3);
  // rho^m = Gamma(m/2 + 1) for exp(-|x|^2).
  CHECK(ball_body_radial(g3, 2, Vec{0.0, 1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("L_m level bodies and the K_m inclusion") {
  SConcaveFunction g = make_function(FuncFamily::gaussian, 2);
  ConvexBody l1 = level_body_Lm(g, 1);
  REQUIRE(l1.is_ball());
  CHECK(l1.ball().radius == doctest::Approx(1.0));

  SConcaveFunction ind = make_function(FuncFamily::indicator, 2, {.body = make_simplex(2)});
  for (int m : {1, 2}) {
    ConvexBody lm = level_body_Lm(ind, m);
    CHECK(fast_contains(lm, Vec{0.3, 0.3}));
    CHECK_FALSE(fast_contains(lm, Vec{0.9, 0.9}));
  }

  // K_m(f) subset L_m(f) for f = exp(-|x|): radii m!^{1/m} vs m.
  SConcaveFunction e2 = make_function(FuncFamily::exp_norm, 2);
  for (int m : {1, 2}) {
    double r_km = ball_body(e2, m).ball().radius;
    double r_lm = level_body_Lm(e2, m).ball().radius;
    CHECK(r_km <= r_lm + 1e-9);
  }
}

TEST_CASE("lift_A: cylinder membership and convexity") {
  SConcaveFunction ind = make_function(FuncFamily::indicator, 2, {.body = make_ball(2, 1.0)});
  ConvexBody A = lift_A(ind, 1);
  CHECK(A.dim() == 3);
  CHECK(fast_contains(A, Vec{0.5, 0.0, 0.9}));
  CHECK(fast_contains(A, Vec{0.5, 0.0, -1.0}));
  CHECK_FALSE(fast_contains(A, Vec{0.5, 0.0, 1.1}));
  CHECK_FALSE(fast_contains(A, Vec{1.5, 0.0, 0.0}));  // x outside supp(f)

  // Midpoint convexity on sampled member pairs for a (1/1)-concave f.
  SConcaveFunction c1 = make_function(FuncFamily::cone, 2, {.s = 1});
  ConvexBody Ac = lift_A(c1, 1);
  Rng rng(91);
  int tested = 0;
  while (tested < 10000) {
    Vec a = rng.in_box(Vec{-1, -1, -1}, Vec{1, 1, 1});
    Vec b = rng.in_box(Vec{-1, -1, -1}, Vec{1, 1, 1});
    if (!fast_contains(Ac, a) || !fast_contains(Ac, b)) continue;
    ++tested;
    CHECK(fast_contains(Ac, (a + b) * 0.5));
  }
  CHECK_THROWS_AS(lift_A(c1, 0), std::invalid_argument);
}

TEST_CASE("lift identity: A_{Delta f, s} = A_{f,s} + (-A_{f,s}) via independent search") {
  SConcaveFunction c1 = make_function(FuncFamily::cone, 2, {.s = 1});
  DeltaConfig cfg;
  Rng rng(93);
  int agree = 0;
  for (int i = 0; i < 1000; ++i) {
    Vec x{rng.uniform(-2.2, 2.2), rng.uniform(-2.2, 2.2)};
    double yr = rng.uniform(0.0, 2.2);
    double closed = delta_alpha(c1, 1.0, x).value;  // (2 - |x|)_+ for the unit cone
    double searched = lift_sum_radius(c1, 1, x, cfg);
    if (std::abs(closed - yr) < 1e-4 || std::abs(searched - yr) < 1e-4) continue;
    bool lhs = yr <= closed;  // (x, y) in A_{Delta f, s}
    bool rhs = yr <= searched;  // (x, y) in A + (-A)
    if (lhs == rhs) ++agree;
    CHECK(lhs == rhs);
  }
  CHECK(agree > 900);
}

TEST_CASE("lift_B: lowest-terms contract and product membership") {
  SConcaveFunction c1 = make_function(FuncFamily::cone, 1, {.s = 0.5});
  CHECK_THROWS_AS(lift_B(c1, 2, 4), std::invalid_argument);
  ConvexBody B = lift_B(c1, 1, 2);  // s = 1/2, body in R^{1*2+1}
  CHECK(B.dim() == 3);
  // |y| <= f(x1) f(x2) with f = (1-|x|)^{1/2}: at x1 = x2 = 0, radius 1.
  CHECK(fast_contains(B, Vec{0.0, 0.0, 0.99}));
  CHECK_FALSE(fast_contains(B, Vec{0.0, 0.0, 1.05}));
  double fx = std::sqrt(0.5);  // f(1/2)
  CHECK(fast_contains(B, Vec{0.5, 0.5, fx * fx - 0.01}));
  CHECK_FALSE(fast_contains(B, Vec{0.5, 0.5, fx * fx + 0.01}));
}
