#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rsm/oracle.hpp"
#include "rsm/optimize.hpp"
#include "rsm/parallel.hpp"
#include "rsm/quadrature.hpp"
#include "rsm/rng.hpp"

using namespace rsm;

namespace {

const double kPi = 3.14159265358979323846;

bool agree_3sigma(const Estimate& a, double truth, double extra_tol = 0.0) {
  return std::abs(a.value - truth) <= 3.0 * a.std_error + a.truncation_bound + extra_tol + 1e-12;
}

bool estimates_identical(const Estimate& a, const Estimate& b) {
  return a.value == b.value && a.std_error == b.std_error && a.samples_used == b.samples_used;
}

EstimatorConfig quick_cfg(uint64_t seed, int64_t samples = 1 << 16) {
  EstimatorConfig cfg;
  cfg.seed = seed;
  cfg.samples = samples;
  return cfg;
}

}  // namespace

TEST_CASE("measure_section: chords, gaussian marginal, off-axis plane") {
  Subspace Hx = Subspace::axes(2, {0});
  Density leb = make_density(DensityFamily::lebesgue, 2);

  Estimate chord = measure_section(make_ball(2, 1.0), Hx, Vec::zero(2), leb, quick_cfg(11));
  CHECK(agree_3sigma(chord, 2.0));
  Estimate chord_p = measure_section(make_ball(2, 1.0), Hx, Vec::zero(2), leb,
                                     quick_cfg(11).with_method(Method::polar));
  CHECK(chord_p.value == doctest::Approx(2.0).epsilon(1e-7));

  Density g = make_density(DensityFamily::gaussian, 2, {.sigma = 1.0});
  Estimate gm = measure_section(make_ball(2, 10.0), Hx, Vec::zero(2), g, quick_cfg(12, 1 << 18));
  CHECK(agree_3sigma(gm, std::sqrt(2.0 * kPi), 1e-6));

  Estimate sq = measure_section(make_cube(2), Hx, Vec{0.0, 0.5}, leb, quick_cfg(13));
  CHECK(agree_3sigma(sq, 1.0));
  // The offset enters only through its H-orthogonal component.
  Estimate sq2 = measure_section(make_cube(2), Hx, Vec{7.0, 0.5}, leb, quick_cfg(13));
  CHECK(estimates_identical(sq, sq2));

  // Empty section.
  Estimate none = measure_section(make_ball(2, 1.0), Hx, Vec{0.0, 5.0}, leb, quick_cfg(14));
  CHECK(none.value == 0.0);
}

TEST_CASE("measure_section: box and polar agree within 3 combined sigma") {
  Density leb2 = make_density(DensityFamily::lebesgue, 2);
  Density g2 = make_density(DensityFamily::gaussian, 2);
  Density e3 = make_density(DensityFamily::exponential, 3);
  Density leb3 = make_density(DensityFamily::lebesgue, 3);
  struct Case {
    ConvexBody body;
    Subspace H;
    Vec y;
    Density d;
  };
  std::vector<Case> cases;
  cases.push_back({make_random_polytope(2, 6, 5), Subspace::axes(2, {0}), Vec::zero(2), g2});
  cases.push_back({make_ball(2, 1.5), Subspace::axes(2, {1}), Vec{0.3, 0.0}, leb2});
  cases.push_back({make_random_polytope(3, 8, 9), Subspace::axes(3, {0, 1}), Vec{0.0, 0.0, 0.1}, e3});
  cases.push_back({difference_body(make_simplex(3)), Subspace::axes(3, {0, 2}), Vec::zero(3), leb3});
  for (auto& c : cases) {
    Estimate via_box = measure_section(c.body, c.H, c.y, c.d, quick_cfg(21, 1 << 17));
    Estimate via_polar =
        measure_section(c.body, c.H, c.y, c.d, quick_cfg(22).with_method(Method::polar));
    double sigma = std::sqrt(via_box.std_error * via_box.std_error +
                             via_polar.std_error * via_polar.std_error);
    CHECK(std::abs(via_box.value - via_polar.value) <= 3.0 * sigma + 1e-9);
  }
}

TEST_CASE("determinism: chunk-seeded estimates ignore the thread count") {
  ConvexBody K = difference_body(make_random_polytope(3, 7, 33));
  Density g = make_density(DensityFamily::gaussian, 3);
  Subspace H = Subspace::axes(3, {0, 1});
  std::vector<Estimate> runs;
  for (int threads : {1, 4, 8, 2}) {
    set_thread_count(threads);
    runs.push_back(measure_section(K, H, Vec{0.0, 0.0, 0.2}, g, quick_cfg(77)));
  }
  set_thread_count(0);
  for (size_t i = 1; i < runs.size(); ++i) CHECK(estimates_identical(runs[0], runs[i]));

  // Nested estimates keep the contract too.
  std::vector<Density> ds = {make_density(DensityFamily::gaussian, 2)};
  std::vector<Subspace> hs = {Subspace::axes(2, {0})};
  ConvexBody K2 = make_random_polytope(2, 6, 3);
  EstimatorConfig ncfg = quick_cfg(5);
  ncfg.outer_points = 256;
  ncfg.inner_samples = 4096;
  std::vector<Estimate> nested;
  for (int threads : {1, 4}) {
    set_thread_count(threads);
    nested.push_back(nested_srrs_rhs(K2, ds, hs, ncfg));
  }
  set_thread_count(0);
  CHECK(estimates_identical(nested[0], nested[1]));
}

TEST_CASE("integrate_function_section: gaussian, indicator, cone") {
  Subspace Hx = Subspace::axes(2, {0});
  Density leb = make_density(DensityFamily::lebesgue, 2);
  SConcaveFunction g = make_function(FuncFamily::gaussian, 2);

  Estimate layer = integrate_function_section(g, Hx, Vec::zero(2), leb,
                                              quick_cfg(31).with_method(Method::layer_cake));
  CHECK(std::abs(layer.value - std::sqrt(kPi)) <=
        3.0 * layer.std_error + layer.truncation_bound + 2e-4);
  Estimate direct = integrate_function_section(g, Hx, Vec::zero(2), leb, quick_cfg(32, 1 << 17));
  CHECK(agree_3sigma(direct, std::sqrt(kPi), 1e-4));

  ConvexBody K = make_random_polytope(2, 6, 8);
  K = translate(K, -K.anchor_point());
  SConcaveFunction ind = make_function(FuncFamily::indicator, 2, {.body = K});
  Density gd = make_density(DensityFamily::gaussian, 2);
  Estimate lhs = integrate_function_section(ind, Hx, Vec{0.0, 0.1}, gd,
                                            quick_cfg(33).with_method(Method::layer_cake));
  Estimate rhs = measure_section(K, Hx, Vec{0.0, 0.1}, gd, quick_cfg(34, 1 << 17));
  double sigma = std::sqrt(lhs.std_error * lhs.std_error + rhs.std_error * rhs.std_error);
  CHECK(std::abs(lhs.value - rhs.value) <= 3 * sigma + 1e-6);

  SConcaveFunction c1 = make_function(FuncFamily::cone, 1, {.s = 1});
  Density leb1 = make_density(DensityFamily::lebesgue, 1);
  Estimate tri = integrate_function_section(c1, Subspace::full(1), Vec::zero(1), leb1,
                                            quick_cfg(35).with_method(Method::layer_cake));
  CHECK(tri.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("marginal_of_translate: shifted gaussian has the closed form") {
  Subspace Hx = Subspace::axes(2, {0});
  Density leb = make_density(DensityFamily::lebesgue, 2);
  SConcaveFunction g = make_function(FuncFamily::gaussian, 2);
  Vec shift{0.3, 0.4};
  double truth = std::exp(-0.16) * std::sqrt(kPi);  // exp(-z2^2) * sqrt(pi)
  Estimate layer = marginal_of_translate(g, Hx, shift, leb,
                                         quick_cfg(41).with_method(Method::layer_cake));
  CHECK(std::abs(layer.value - truth) <= 3 * layer.std_error + layer.truncation_bound + 2e-4);
  Estimate direct = marginal_of_translate(g, Hx, shift, leb, quick_cfg(42, 1 << 17));
  CHECK(agree_3sigma(direct, truth, 1e-4));
}

TEST_CASE("layer_sup_integral: gaussian against the exact profile integral") {
  // sup over y of vol_1(C_t cap (H+y)) is the centered chord 2 sqrt(ln(1/t));
  // the t-integral is sqrt(pi).
  Subspace Hx = Subspace::axes(2, {0});
  Density leb = make_density(DensityFamily::lebesgue, 2);
  SConcaveFunction g = make_function(FuncFamily::gaussian, 2);
  EstimatorConfig cfg = quick_cfg(51);
  SupConfig scfg;
  auto r = layer_sup_integral(g, Hx, leb, cfg, scfg);
  CHECK(std::abs(r.est.value - std::sqrt(kPi)) <=
        3 * r.est.std_error + r.est.truncation_bound + 2e-3);

  // Doubling the node count moves the result by < 1e-3 relative.
  EstimatorConfig cfg2 = cfg;
  cfg2.t_nodes = 2 * cfg.t_nodes;
  auto r2 = layer_sup_integral(g, Hx, leb, cfg2, scfg);
  CHECK(std::abs(r2.est.value - r.est.value) <= 1e-3 * std::abs(r.est.value) + 3 * r.est.std_error);

  // For an indicator the layer integral collapses to the plain translate sup.
  ConvexBody K = make_random_polytope(2, 6, 12);
  SConcaveFunction ind = make_function(FuncFamily::indicator, 2, {.body = translate(K, -K.anchor_point())});
  auto lhs = layer_sup_integral(ind, Hx, leb, cfg, scfg);
  auto rhs = sup_section_translate(*ind.body, Hx, leb, cfg, scfg);
  double sigma = std::sqrt(lhs.est.std_error * lhs.est.std_error +
                           rhs.value.std_error * rhs.value.std_error);
  CHECK(std::abs(lhs.est.value - rhs.value.value) <= 3 * sigma + 1e-6);
}

TEST_CASE("sup_section_translate: symmetric bodies peak at the origin") {
  Subspace Hx = Subspace::axes(2, {0});
  Density g = make_density(DensityFamily::gaussian, 2);
  ConvexBody K = make_cross(2);
  EstimatorConfig cfg = quick_cfg(61, 1 << 14);
  cfg.method = Method::polar;
  SupConfig scfg;
  SupResult r = sup_section_translate(K, Hx, g, cfg, scfg);
  CHECK(r.converged);
  CHECK(norm(r.argmax) <= 1e-2);
  // Value equals the centered section integral: int_{-1}^{1} (1-|t|->) chord..
  Estimate centered = measure_section(K, Hx, Vec::zero(2), g, cfg);
  CHECK(std::abs(r.value.value - centered.value) <= 3 * centered.std_error + 1e-6);
}

TEST_CASE("sup_section_translate: flat optimum ties break toward 0") {
  Subspace Hx = Subspace::axes(2, {0});
  Density leb = make_density(DensityFamily::lebesgue, 2);
  ConvexBody K = make_cube(2);
  EstimatorConfig cfg = quick_cfg(62);
  cfg.method = Method::polar;
  SupConfig scfg;
  SupResult r = sup_section_translate(K, Hx, leb, cfg, scfg);
  CHECK(r.value.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(norm(r.argmax) <= 1e-2);  // any y2 in [0,1] is optimal; report the smallest
}

TEST_CASE("sup_marginal_translate: centered gaussian pair") {
  Subspace Hx = Subspace::axes(2, {0});
  Density gd = make_density(DensityFamily::gaussian, 2);  // exp(-|x|^2/2)
  SConcaveFunction g = make_function(FuncFamily::gaussian, 2);
  EstimatorConfig cfg = quick_cfg(63);
  cfg.method = Method::layer_cake;
  SupConfig scfg;
  SupResult r = sup_marginal_translate(g, Hx, gd, cfg, scfg);
  double truth = std::sqrt(kPi / 1.5);  // int exp(-1.5 h^2) dh
  CHECK(std::abs(r.value.value - truth) <= 3 * r.value.std_error + r.value.truncation_bound + 2e-3);
  CHECK(norm(r.argmax) <= 2e-2);
}

TEST_CASE("nested product: disk against the hand integral 16/(3 pi)") {
  ConvexBody K = make_ball(2, 1.0);
  std::vector<Density> ds = {make_density(DensityFamily::lebesgue, 2)};
  std::vector<Subspace> hs = {Subspace::axes(2, {0})};
  EstimatorConfig cfg = quick_cfg(71);
  cfg.outer_points = 1 << 12;
  Estimate e = nested_srrs_rhs(K, ds, hs, cfg);
  CHECK(agree_3sigma(e, 16.0 / (3.0 * kPi), 1e-6));
  CHECK(e.value <= 2.0 + 3 * e.std_error);  // bounded by sup_y vol_1((y-K) cap H)

  // Swapping identical factors leaves the estimate bit-identical.
  std::vector<Density> two = {ds[0], ds[0]};
  std::vector<Subspace> hs2 = {hs[0], hs[0]};
  EstimatorConfig c2 = cfg;
  c2.outer_points = 512;
  c2.inner_samples = 4096;
  Estimate a = nested_srrs_rhs(K, two, hs2, c2);
  Estimate b = nested_srrs_rhs(K, {two[1], two[0]}, {hs2[1], hs2[0]}, c2);
  CHECK(estimates_identical(a, b));
}

TEST_CASE("nested product: grid oracle cross-check in n=2") {
  // Coarse exhaustive oracle: average of mu((y-K) cap H) over a y-grid on K.
  ConvexBody K = make_random_polytope(2, 6, 19);
  Density g = make_density(DensityFamily::gaussian, 2);
  Subspace Hx = Subspace::axes(2, {0});
  Vec lo, hi;
  bounding_box(K, lo, hi);
  double h = 1.0 / 100.0;
  double sum = 0;
  int64_t cnt = 0;
  ConvexBody refl = reflect(K);
  for (double x = lo[0] + h / 2; x < hi[0]; x += h)
    for (double y = lo[1] + h / 2; y < hi[1]; y += h) {
      Vec p{x, y};
      if (!fast_contains(K, p)) continue;
      GridSpec gs;
      gs.h = 2e-3;
      ConvexBody moved = translate(refl, p);
      bounding_box(moved, gs.lo, gs.hi);
      sum += grid_section_measure(moved, Hx, Vec::zero(2), g, gs).value;
      ++cnt;
    }
  double oracle = sum / static_cast<double>(cnt);
  EstimatorConfig cfg = quick_cfg(72);
  cfg.outer_points = 1 << 12;
  Estimate fast = nested_srrs_rhs(K, {g}, {Hx}, cfg);
  CHECK(std::abs(fast.value - oracle) <= std::max(3 * fast.std_error, 0.02 * oracle));
}

TEST_CASE("grid oracles: areas, chords, marginals") {
  GridSpec gs;
  gs.h = 1.0 / 200.0;

  ConvexBody sq = make_cube(2);
  auto v = grid_volume(sq, GridSpec::cover(sq, gs.h));
  CHECK(std::abs(v.value - 1.0) <= 0.02);

  ConvexBody ball = make_ball(2, 1.0);
  auto vb = grid_volume(ball, GridSpec::cover(ball, gs.h));
  CHECK(std::abs(vb.value - kPi) <= 0.05);

  ConvexBody tri = make_simplex(2);
  auto vt = grid_volume(tri, GridSpec::cover(tri, gs.h));
  CHECK(std::abs(vt.value - 0.5) <= 0.02);

  ConvexBody c3 = make_cube(3);
  auto v3 = grid_volume(c3, GridSpec::cover(c3, 1.0 / 50.0));
  CHECK(std::abs(v3.value - 1.0) <= 0.05);

  Subspace Hx = Subspace::axes(2, {0});
  Density leb = make_density(DensityFamily::lebesgue, 2);
  GridSpec fine = GridSpec::cover(ball, 1e-4);
  auto chord = grid_section_measure(ball, Hx, Vec::zero(2), leb, fine);
  CHECK(std::abs(chord.value - 2.0) <= 1e-3);

  Density g = make_density(DensityFamily::gaussian, 2);
  ConvexBody big = scale(make_centered_cube(2), 10.0);  // [-5,5]^2
  GridSpec gm = GridSpec::cover(big, 1e-3);
  auto marg = grid_section_measure(big, Hx, Vec::zero(2), g, gm);
  CHECK(std::abs(marg.value - std::sqrt(2 * kPi)) <= 1e-2);
}

TEST_CASE("grid oracle: wedge sector area formula") {
  // mu_wedge(Ball(0, 1/2)) = (1/(2k)) r^2 with r = 1/2, k = 100.
  Density w = make_density(DensityFamily::wedge, 2, {.k = 100});
  ConvexBody disk = make_ball(2, 0.5);
  GridSpec gs = GridSpec::cover(disk, 1e-4);
  auto v = grid_section_measure(disk, Subspace::full(2), Vec::zero(2), w, gs);
  double analytic = 0.25 / 800.0 * 4.0;  // (1/(2*100)) * (1/2)^2
  CHECK(std::abs(v.value - analytic) <= 0.02 * analytic);
}

TEST_CASE("grid_sup_translate: symmetric maximizer and cube plateau") {
  Density g = make_density(DensityFamily::gaussian, 2);
  Subspace Hx = Subspace::axes(2, {0});
  ConvexBody cross = make_cross(2);
  auto [zstar, val] = grid_sup_translate(cross, Hx, g, 2e-3, Vec{-0.5, -0.5}, Vec{0.5, 0.5}, 0.05);
  CHECK(norm(zstar) <= 0.05 + 1e-9);
  GridSpec gs = GridSpec::cover(cross, 2e-3);
  auto centered = grid_section_measure(cross, Hx, Vec::zero(2), g, gs);
  CHECK(std::abs(val - centered.value) <= 0.02);

  Density leb = make_density(DensityFamily::lebesgue, 2);
  ConvexBody sq = make_cube(2);
  auto [zs, vs] = grid_sup_translate(sq, Hx, leb, 1e-3, Vec{-1.0, -1.0}, Vec{1.0, 1.0}, 0.1);
  (void)zs;
  CHECK(std::abs(vs - 1.0) <= 5e-3);
}

TEST_CASE("optimizer matches the wedge grid scan") {
  Density w = make_density(DensityFamily::wedge, 2, {.k = 8});
  ConvexBody disk = make_ball(2, 0.3);
  EstimatorConfig cfg = quick_cfg(81, 1 << 14);
  SupConfig scfg;
  SupResult opt = sup_section_translate(disk, Subspace::full(2), w, cfg, scfg);
  // Exhaustive scan over the cone-side window.
  auto [zg, vg] = grid_sup_translate(disk, Subspace::full(2), w, 4e-3, Vec{0.0, -1.0}, Vec{8.0, 3.0}, 0.25);
  (void)zg;
  CHECK(opt.value.value >= vg - std::max(3 * opt.value.std_error, 0.02));
  // Far from the apex the disk fits inside the cone; sup is the full disk mass.
  CHECK(std::abs(opt.value.value - kPi * 0.09) <= 0.02);
}

TEST_CASE("Brunn concavity of 1/m-th root section volumes along segments") {
  ConvexBody K = make_random_polytope(3, 8, 55);
  Density leb = make_density(DensityFamily::lebesgue, 3);
  Subspace H = Subspace::axes(3, {0, 1});
  EstimatorConfig cfg = quick_cfg(82);
  cfg.method = Method::polar;
  cfg.polar_dirs = 2048;
  Rng rng(83);
  Vec lo, hi;
  bounding_box(K, lo, hi);
  int tested = 0;
  while (tested < 10) {
    Vec a = rng.in_box(lo, hi), b = rng.in_box(lo, hi);
    Estimate fa = measure_section(translate(K, -a), H, Vec::zero(3), leb, cfg);
    Estimate fb = measure_section(translate(K, -b), H, Vec::zero(3), leb, cfg);
    if (fa.value <= 1e-9 || fb.value <= 1e-9) continue;
    Estimate fm = measure_section(translate(K, (a + b) * -0.5), H, Vec::zero(3), leb, cfg);
    ++tested;
    double lhs = std::sqrt(fm.value);
    double rhs = std::min(std::sqrt(fa.value), std::sqrt(fb.value));
    double noise = 3.0 * (std::sqrt(fm.std_error) + std::sqrt(fa.std_error + fb.std_error));
    CHECK(lhs >= rhs - noise - 1e-6);
  }
}

TEST_CASE("sup is stable under re-seeding") {
  Subspace Hx = Subspace::axes(2, {0});
  Density g = make_density(DensityFamily::gaussian, 2);
  ConvexBody K = make_random_polytope(2, 7, 29);
  EstimatorConfig cfg = quick_cfg(84, 1 << 14);
  std::vector<double> vals;
  double sigma = 0;
  for (uint64_t seed : {101u, 202u, 303u, 404u}) {
    SupConfig scfg;
    scfg.seed = seed;
    SupResult r = sup_section_translate(reflect(K), Hx, g, cfg.with_seed(seed), scfg);
    vals.push_back(r.value.value);
    sigma = std::max(sigma, r.value.std_error);
  }
  for (double v : vals) CHECK(std::abs(v - vals[0]) <= 3 * (sigma + 1e-4));
}
