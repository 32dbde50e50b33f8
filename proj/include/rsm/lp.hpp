#pragma once

// Dense phase-1 simplex for LP feasibility systems  A x = b, x >= 0.
// This is the membership oracle behind V-polytopes, p-difference bodies and
// Minkowski sums. Floating point with Bland's rule by default; an exact
// rational solve is available to adjudicate near-degenerate verdicts in
// low-dimensional test oracles.

#include <cstdint>
#include <vector>

namespace rsm {

struct FeasResult {
  bool feasible = false;
  double residual = 0.0;       // phase-1 optimum (L1 infeasibility)
  bool near_degenerate = false;  // optimum landed in the (tol, degen_band] gray zone
  std::vector<double> point;   // a feasible x when feasible
};

// A is row-major rows x cols. tol: accept residual <= tol as feasible.
FeasResult simplex_feasible(const std::vector<double>& A, int rows, int cols,
                            const std::vector<double>& b, double tol = 1e-9,
                            double degen_band = 1e-7);

// Exact rational arithmetic over the dyadic values of the given doubles.
// Boundary-inclusive: feasible iff the system is exactly solvable.
bool simplex_feasible_exact(const std::vector<double>& A, int rows, int cols,
                            const std::vector<double>& b);

}  // namespace rsm
