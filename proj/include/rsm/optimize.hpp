#pragma once

// Derivative-free maximization of noisy translate objectives
// y -> mu(body cap (H + y)) and friends. Each probe evaluates the objective
// with common random numbers (the caller fixes the estimator seed), so the
// search surface is deterministic within a run and pattern search cannot
// stall on the noise floor.

#include <cstdint>
#include <functional>
#include <vector>

#include "rsm/quad_types.hpp"
#include "rsm/vec.hpp"

namespace rsm {

struct SupConfig {
  int restarts = 16;
  uint64_t seed = 0x50b;
  double step_floor_rel = 1e-6;  // step contraction floor relative to the domain radius
  int max_iters = 240;
};

struct SupResult {
  Vec argmax;          // in the search coordinates handed to the objective
  Estimate value;
  int restarts_agreeing = 0;
  bool converged = true;
};

// Multi-start coordinate pattern search over the ball of radius
// domain_radius in R^dim. Restarts: origin, +-axis extremes, warm starts,
// seeded random fills. Flat optima tie-break toward the smallest |argmax|.
SupResult sup_translate(const std::function<Estimate(const Vec&)>& objective, int dim,
                        double domain_radius, const SupConfig& cfg,
                        const std::vector<Vec>& warm_starts = {});

}  // namespace rsm
