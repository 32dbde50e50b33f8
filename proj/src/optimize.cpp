#include "rsm/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "rsm/parallel.hpp"
#include "rsm/rng.hpp"

namespace rsm {

namespace {

struct Probe {
  Vec arg;
  Estimate val;
};

Probe run_pattern_search(const std::function<Estimate(const Vec&)>& objective, Vec x,
                         double domain_radius, const SupConfig& cfg) {
  Estimate fx = objective(x);
  double step = 0.25 * domain_radius;
  const double floor = cfg.step_floor_rel * domain_radius;
  int n = x.dim();
  for (int it = 0; it < cfg.max_iters && step > floor; ++it) {
    bool improved = false;
    for (int i = 0; i < n; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Vec y = x;
        y[i] += sgn * step;
        if (norm(y) > domain_radius) continue;
        Estimate fy = objective(y);
        if (fy.value > fx.value) {
          x = y;
          fx = fy;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {x, fx};
}

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace

SupResult sup_translate(const std::function<Estimate(const Vec&)>& objective, int dim,
                        double domain_radius, const SupConfig& cfg,
                        const std::vector<Vec>& warm_starts) {
  if (dim < 1 || domain_radius <= 0) {
    SupResult r;
    r.argmax = Vec::zero(std::max(dim, 0));
    r.value = objective(r.argmax);
    r.restarts_agreeing = 1;
    return r;
  }
  std::vector<Vec> starts;
  starts.push_back(Vec::zero(dim));
  for (int i = 0; i < dim; ++i) {
    starts.push_back(Vec::axis(dim, i, 0.8 * domain_radius));
    starts.push_back(Vec::axis(dim, i, -0.8 * domain_radius));
  }
  for (const Vec& w : warm_starts)
    if (w.dim() == dim && norm(w) <= domain_radius) starts.push_back(w);
  Rng rng(derive_seed(cfg.seed, 0x7a9));
  while (static_cast<int>(starts.size()) < cfg.restarts)
    starts.push_back(rng.on_sphere(dim) * (domain_radius * rng.uniform()));
  if (static_cast<int>(starts.size()) > cfg.restarts) starts.resize(std::max<size_t>(cfg.restarts, 1 + 2 * dim + warm_starts.size()));

  // Restarts are independent; slots keep the reduction order fixed.
  std::vector<Probe> probes(starts.size());
  parallel_for_slots(static_cast<int>(starts.size()), [&](int i) {
    probes[i] = run_pattern_search(objective, starts[i], domain_radius, cfg);
  });

  // Deterministic reduction: best value, then smallest |argmax|, then lex.
  int best = 0;
  for (size_t i = 1; i < probes.size(); ++i) {
    const Probe& a = probes[i];
    const Probe& b = probes[best];
    double sigma = 3.0 * std::sqrt(a.val.std_error * a.val.std_error +
                                   b.val.std_error * b.val.std_error);
    if (a.val.value > b.val.value + sigma) {
      best = static_cast<int>(i);
    } else if (std::abs(a.val.value - b.val.value) <= sigma) {
      double na = norm(a.arg), nb = norm(b.arg);
      if (na < nb - 1e-12 || (std::abs(na - nb) <= 1e-12 && lex_less(a.arg, b.arg)))
        best = static_cast<int>(i);
    }
  }
  SupResult out;
  out.argmax = probes[best].arg;
  out.value = probes[best].val;
  // Agreement: count restarts within 3 combined sigma of the winner; the
  // runner-up decides convergence.
  double second = -1e300, second_err = 0;
  out.restarts_agreeing = 0;
  for (size_t i = 0; i < probes.size(); ++i) {
    double sigma = 3.0 * std::sqrt(probes[i].val.std_error * probes[i].val.std_error +
                                   out.value.std_error * out.value.std_error);
    if (std::abs(probes[i].val.value - out.value.value) <= sigma + 1e-12) ++out.restarts_agreeing;
    if (static_cast<int>(i) != best && probes[i].val.value > second) {
      second = probes[i].val.value;
      second_err = probes[i].val.std_error;
    }
  }
  if (probes.size() >= 2) {
    double sigma = 3.0 * std::sqrt(second_err * second_err +
                                   out.value.std_error * out.value.std_error);
    out.converged = (out.value.value - second) <= sigma + 1e-12;
  }
  return out;
}

}  // namespace rsm
