#pragma once

// Convex-body representations and Minkowski algebra.
//
// A body is either an explicit V-polytope, a Euclidean ball, or an implicit
// set behind a membership oracle (p-difference bodies, sums involving balls,
// lifted bodies, Ball bodies K_m(f)). All values are immutable after
// construction and safe to share across threads; membership and support
// evaluations are pure.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rsm/hull.hpp"
#include "rsm/vec.hpp"

namespace rsm {

// Points within this distance of the boundary classify as inside; a
// measure-zero band that keeps bisection on membership stable.
inline constexpr double kMembershipTol = 1e-9;

struct VPolytope {
  int dim = 0;
  std::vector<Vec> vertices;
  // Hull-derived facets and exact volume (dimension <= 3).
  std::shared_ptr<const HullResult> hull;
  // Generator record ("simplex 2", "random 2 6 7", ...); vpoly row dump if empty.
  std::string tag;
};

struct BallBody {
  Vec center;
  double radius = 0;
};

struct ImplicitBody {
  int dim = 0;
  double bound = 0;  // every member point has |x| <= bound
  Vec interior_point;
  std::function<bool(const Vec&)> member;
  // Optional exact or over-estimating support function (used for bounding
  // boxes; absent means fall back to the norm bound).
  std::function<double(const Vec&)> support_hint;
  std::string describe;
};

class ConvexBody {
 public:
  ConvexBody() = default;
  explicit ConvexBody(VPolytope p);
  explicit ConvexBody(BallBody b);
  explicit ConvexBody(ImplicitBody b);

  int dim() const;
  bool is_polytope() const { return std::holds_alternative<VPolytope>(rep_); }
  bool is_ball() const { return std::holds_alternative<BallBody>(rep_); }
  bool is_implicit() const { return std::holds_alternative<ImplicitBody>(rep_); }
  const VPolytope& polytope() const { return std::get<VPolytope>(rep_); }
  const BallBody& ball() const { return std::get<BallBody>(rep_); }
  const ImplicitBody& implicit() const { return std::get<ImplicitBody>(rep_); }

  // Norm bound on member points.
  double norm_bound() const;
  // A point in the body (for polytopes the vertex centroid).
  Vec anchor_point() const;
  std::string describe() const;

 private:
  std::variant<VPolytope, BallBody, ImplicitBody> rep_;
};

// --- membership -----------------------------------------------------------

// Canonical membership: LP feasibility for V-polytopes, with an exact
// rational re-solve when the floating simplex terminates near degeneracy
// (dimension <= 3). Boundary-inclusive within kMembershipTol.
bool contains(const ConvexBody& body, const Vec& x);

// Hot-path membership used inside estimators: identical predicate, but
// facet tests replace the LP for low-dimensional polytopes and no rational
// adjudication is attempted. Agreement with contains() is tested.
bool fast_contains(const ConvexBody& body, const Vec& x);

// --- support and boxes ----------------------------------------------------

// sup_{x in body} <x,u> for unit u. Exact for explicit bodies; implicit
// bodies use their support hint when present, else a bound-constrained ray
// search from the interior point (a lower bound for non-centered bodies).
double support(const ConvexBody& body, const Vec& u);

// Per-axis bounds guaranteed to cover the body (support hints or norm
// bound for implicit bodies), inflated by 1e-6.
void bounding_box(const ConvexBody& body, Vec& lo, Vec& hi);

// --- algebra ----------------------------------------------------------------

ConvexBody reflect(const ConvexBody& body);
ConvexBody translate(const ConvexBody& body, const Vec& t);
ConvexBody scale(const ConvexBody& body, double c);

// Minkowski sum. Polytope+polytope hulls in dimension <= 3 (implicit LP
// membership above); any ball involved yields an implicit body decided by
// point-to-set distance. At least one summand must be explicit.
ConvexBody minkowski_sum(const ConvexBody& K, const ConvexBody& L);

// K + (-K).
ConvexBody difference_body(const ConvexBody& K);

// Intersection behind a joint membership oracle (needs a common interior
// point, checked at anchor of the first body or the origin).
ConvexBody intersection_body(const std::vector<ConvexBody>& bodies);

// --- p-difference bodies ----------------------------------------------------

struct PDifferenceSpec {
  ConvexBody base;
  int p = 1;
  std::optional<std::vector<ConvexBody>> companions;  // general form L_i
};

// Membership of (x_1,...,x_p) decided by one LP feasibility problem over
// convex-combination weights. Polytope inputs only.
ConvexBody dp_body(const PDifferenceSpec& spec);

// --- sections ----------------------------------------------------------------

// Largest t >= 0 with base + t*u inside the body (u unit). Exact for balls
// and faceted polytopes, else bisection on fast_contains to relative
// tolerance tol. Returns 0 when the base point is outside.
double section_radial(const ConvexBody& body, const Vec& base, const Vec& u, double tol = 1e-10);

// Spec'd overload: ray y + t*u inside body, u in H.
double section_radial(const ConvexBody& body, const Subspace& H, const Vec& y, const Vec& u,
                      double tol = 1e-10);

// --- generators and volume ---------------------------------------------------

enum class BodyKind { simplex, cube, ball, cross, random_polytope };

struct BodyParams {
  int vertex_count = 0;   // random_polytope
  uint64_t seed = 0;      // random_polytope
  double radius = 1.0;    // ball
};

ConvexBody make_body(BodyKind kind, int n, const BodyParams& params = {});

ConvexBody make_simplex(int n);
ConvexBody make_cube(int n);                      // [0,1]^n
ConvexBody make_centered_cube(int n);             // [-1/2,1/2]^n
ConvexBody make_ball(int n, double r = 1.0, const Vec* center = nullptr);
ConvexBody make_cross(int n);
ConvexBody make_random_polytope(int n, int vertex_count, uint64_t seed);

// Exact volume of a V-polytope, dimension <= 3.
double polytope_volume(const ConvexBody& body);

// --- serialization -----------------------------------------------------------

// Plain-text record: kind tag, dimension, parameters or vertex rows, seed
// for random bodies. Round-trips through parse_body.
std::string serialize_body(const ConvexBody& body);
ConvexBody parse_body(const std::string& text);

}  // namespace rsm
