#include "rsm/body.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rsm/lp.hpp"
#include "rsm/rng.hpp"

namespace rsm {

namespace {

constexpr double kDegenBand = 1e-7;

std::shared_ptr<const HullResult> build_hull(const std::vector<Vec>& vertices, int dim) {
  if (dim > 3) return nullptr;
  return std::make_shared<const HullResult>(convex_hull(vertices));
}

// Support for arbitrary (possibly zero) direction vectors; positively
// homogeneous extension of the unit-direction support function.
double raw_support(const ConvexBody& body, const Vec& u);

// ---- Wolfe's minimum-norm-point algorithm over conv(P). --------------------
// Used for point-to-polytope distance in ball Minkowski sums.

bool solve_affine_weights(const std::vector<Vec>& S, std::vector<double>& alpha) {
  int k = static_cast<int>(S.size());
  int m = k + 1;
  std::vector<double> M(m * m, 0.0), rhs(m, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) M[i * m + j] = dot(S[i], S[j]);
    M[i * m + k] = 1.0;
    M[k * m + i] = 1.0;
  }
  rhs[k] = 1.0;
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(M[r * m + col]) > std::abs(M[piv * m + col])) piv = r;
    if (std::abs(M[piv * m + col]) < 1e-14) return false;
    if (piv != col) {
      for (int c = 0; c < m; ++c) std::swap(M[piv * m + c], M[col * m + c]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      double f = M[r * m + col] / M[col * m + col];
      if (f == 0.0) continue;
      for (int c = col; c < m; ++c) M[r * m + c] -= f * M[col * m + c];
      rhs[r] -= f * rhs[col];
    }
  }
  alpha.resize(k);
  for (int i = 0; i < k; ++i) alpha[i] = rhs[i] / M[i * m + i];
  return true;
}

double min_norm_point_dist(const std::vector<Vec>& points) {
  double scale = 1.0;
  for (const Vec& p : points) scale = std::max(scale, norm(p));
  const double tol = 1e-13 * scale * scale;

  size_t start = 0;
  for (size_t i = 1; i < points.size(); ++i)
    if (norm2(points[i]) < norm2(points[start])) start = i;
  std::vector<Vec> S = {points[start]};
  std::vector<double> w = {1.0};

  for (int outer = 0; outer < 200; ++outer) {
    Vec x = Vec::zero(points[0].dim());
    for (size_t i = 0; i < S.size(); ++i) x += w[i] * S[i];
    // Most-opposing vertex.
    size_t best = 0;
    double bestv = dot(x, points[0]);
    for (size_t i = 1; i < points.size(); ++i) {
      double v = dot(x, points[i]);
      if (v < bestv) {
        bestv = v;
        best = i;
      }
    }
    if (bestv >= norm2(x) - tol) return norm(x);
    S.push_back(points[best]);
    w.push_back(0.0);
    for (int inner = 0; inner < 100; ++inner) {
      std::vector<double> alpha;
      if (!solve_affine_weights(S, alpha)) {
        // Degenerate corral: drop the smallest-weight point and retry.
        size_t drop = 0;
        for (size_t i = 1; i < w.size(); ++i)
          if (w[i] < w[drop]) drop = i;
        S.erase(S.begin() + drop);
        w.erase(w.begin() + drop);
        continue;
      }
      bool all_pos = true;
      for (double a : alpha)
        if (a <= 1e-12) all_pos = false;
      if (all_pos) {
        w = alpha;
        break;
      }
      double theta = 1.0;
      for (size_t i = 0; i < w.size(); ++i)
        if (alpha[i] <= 1e-12 && w[i] - alpha[i] > 1e-15)
          theta = std::min(theta, w[i] / (w[i] - alpha[i]));
      for (size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - theta) * w[i] + theta * alpha[i];
      for (size_t i = S.size(); i-- > 0;) {
        if (w[i] <= 1e-12) {
          S.erase(S.begin() + i);
          w.erase(w.begin() + i);
        }
      }
    }
  }
  Vec x = Vec::zero(points[0].dim());
  for (size_t i = 0; i < S.size(); ++i) x += w[i] * S[i];
  return norm(x);
}

double dist_to_polytope(const Vec& q, const VPolytope& P) {
  std::vector<Vec> shifted;
  shifted.reserve(P.vertices.size());
  for (const Vec& v : P.vertices) shifted.push_back(v - q);
  return min_norm_point_dist(shifted);
}

// ---- LP membership ----------------------------------------------------------

bool vpoly_member_lp(const VPolytope& P, const Vec& x, bool allow_rational) {
  int d = P.dim;
  int cols = static_cast<int>(P.vertices.size());
  int rows = d + 1;
  std::vector<double> A(static_cast<size_t>(rows) * cols), b(rows);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < d; ++i) A[static_cast<size_t>(i) * cols + j] = P.vertices[j][i];
  for (int j = 0; j < cols; ++j) A[static_cast<size_t>(d) * cols + j] = 1.0;
  for (int i = 0; i < d; ++i) b[i] = x[i];
  b[d] = 1.0;
  FeasResult r = simplex_feasible(A, rows, cols, b, kMembershipTol, kDegenBand);
  if (r.near_degenerate && allow_rational && d <= 3) return simplex_feasible_exact(A, rows, cols, b);
  return r.feasible;
}

}  // namespace

// ---- ConvexBody basics --------------------------------------------------------

ConvexBody::ConvexBody(VPolytope p) : rep_(std::move(p)) {
  auto& P = std::get<VPolytope>(rep_);
  if (P.dim < 1 || P.dim > kMaxDim) throw std::invalid_argument("VPolytope: bad dimension");
  if (P.vertices.empty()) throw std::invalid_argument("VPolytope: no vertices");
  for (const Vec& v : P.vertices)
    if (v.dim() != P.dim || !v.finite()) throw std::invalid_argument("VPolytope: bad vertex");
  if (!P.hull && P.dim <= 3) P.hull = build_hull(P.vertices, P.dim);
}

ConvexBody::ConvexBody(BallBody b) : rep_(std::move(b)) {
  auto& B = std::get<BallBody>(rep_);
  if (B.radius <= 0) throw std::invalid_argument("BallBody: radius must be positive");
  if (!B.center.finite()) throw std::invalid_argument("BallBody: bad center");
}

ConvexBody::ConvexBody(ImplicitBody b) : rep_(std::move(b)) {
  auto& I = std::get<ImplicitBody>(rep_);
  if (I.dim < 1 || I.dim > kMaxDim) throw std::invalid_argument("ImplicitBody: bad dimension");
  if (!I.member) throw std::invalid_argument("ImplicitBody: missing membership oracle");
  if (I.bound <= 0) throw std::invalid_argument("ImplicitBody: bad bound");
  if (!I.member(I.interior_point)) throw std::invalid_argument("ImplicitBody: interior point not a member");
}

int ConvexBody::dim() const {
  if (is_polytope()) return polytope().dim;
  if (is_ball()) return ball().center.dim();
  return implicit().dim;
}

double ConvexBody::norm_bound() const {
  if (is_polytope()) {
    double b = 0;
    for (const Vec& v : polytope().vertices) b = std::max(b, norm(v));
    return b;
  }
  if (is_ball()) return norm(ball().center) + ball().radius;
  return implicit().bound;
}

Vec ConvexBody::anchor_point() const {
  if (is_polytope()) {
    Vec c = Vec::zero(dim());
    for (const Vec& v : polytope().vertices) c += v;
    return c * (1.0 / static_cast<double>(polytope().vertices.size()));
  }
  if (is_ball()) return ball().center;
  return implicit().interior_point;
}

std::string ConvexBody::describe() const {
  if (is_implicit() && !implicit().describe.empty()) return implicit().describe;
  return serialize_body(*this);
}

// ---- membership ---------------------------------------------------------------

bool contains(const ConvexBody& body, const Vec& x) {
  if (x.dim() != body.dim()) throw std::invalid_argument("contains: dimension mismatch");
  if (body.is_ball()) {
    const auto& B = body.ball();
    return norm(x - B.center) <= B.radius + kMembershipTol;
  }
  if (body.is_implicit()) return body.implicit().member(x);
  const auto& P = body.polytope();
  if (P.hull) return P.hull->facets.margin(x) <= kMembershipTol;
  return vpoly_member_lp(P, x, true);
}

bool fast_contains(const ConvexBody& body, const Vec& x) {
  if (body.is_ball()) {
    const auto& B = body.ball();
    return norm(x - B.center) <= B.radius + kMembershipTol;
  }
  if (body.is_implicit()) return body.implicit().member(x);
  const auto& P = body.polytope();
  if (P.hull) return P.hull->facets.margin(x) <= kMembershipTol;
  return vpoly_member_lp(P, x, false);
}

// ---- support --------------------------------------------------------------------

namespace {

double raw_support(const ConvexBody& body, const Vec& u) {
  double r = norm(u);
  if (r <= 1e-14) return 0.0;
  return r * support(body, u * (1.0 / r));
}

double ray_exit(const ConvexBody& body, const Vec& base, const Vec& u, double tol);

}  // namespace

double support(const ConvexBody& body, const Vec& u) {
  if (u.dim() != body.dim()) throw std::invalid_argument("support: dimension mismatch");
  double r = norm(u);
  if (r <= 1e-14) throw std::invalid_argument("support: zero direction");
  Vec d = u * (1.0 / r);
  if (body.is_polytope()) {
    double best = -1e300;
    for (const Vec& v : body.polytope().vertices) best = std::max(best, dot(v, d));
    return best;
  }
  if (body.is_ball()) return dot(body.ball().center, d) + body.ball().radius;
  const auto& I = body.implicit();
  if (I.support_hint) return I.support_hint(d);
  // Bound-constrained 1-D search along the ray from the interior point.
  double t = ray_exit(body, I.interior_point, d, 1e-10);
  return dot(I.interior_point, d) + t;
}

void bounding_box(const ConvexBody& body, Vec& lo, Vec& hi) {
  int n = body.dim();
  lo = Vec::zero(n);
  hi = Vec::zero(n);
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::axis(n, i);
    double up, dn;
    if (body.is_implicit() && !body.implicit().support_hint) {
      up = body.norm_bound();
      dn = -body.norm_bound();
    } else {
      up = support(body, e);
      dn = -support(body, -e);
    }
    double pad = 1e-6 * (1.0 + std::max(std::abs(up), std::abs(dn)));
    lo[i] = dn - pad;
    hi[i] = up + pad;
  }
}

// ---- transforms --------------------------------------------------------------------

ConvexBody reflect(const ConvexBody& body) {
  if (body.is_ball()) return ConvexBody(BallBody{-body.ball().center, body.ball().radius});
  if (body.is_polytope()) {
    const auto& P = body.polytope();
    VPolytope out;
    out.dim = P.dim;
    for (const Vec& v : P.vertices) out.vertices.push_back(-v);
    if (P.hull) {
      auto h = std::make_shared<HullResult>();
      for (const Vec& v : P.hull->vertices) h->vertices.push_back(-v);
      for (size_t i = 0; i < P.hull->facets.normals.size(); ++i) {
        h->facets.normals.push_back(-P.hull->facets.normals[i]);
        h->facets.offsets.push_back(P.hull->facets.offsets[i]);
      }
      h->facets.scale = P.hull->facets.scale;
      h->volume = P.hull->volume;
      out.hull = h;
    }
    return ConvexBody(std::move(out));
  }
  const auto& I = body.implicit();
  ImplicitBody out;
  out.dim = I.dim;
  out.bound = I.bound;
  out.interior_point = -I.interior_point;
  auto member = I.member;
  out.member = [member](const Vec& x) { return member(-x); };
  if (I.support_hint) {
    auto hint = I.support_hint;
    out.support_hint = [hint](const Vec& u) { return hint(-u); };
  }
  out.describe = "reflect(" + I.describe + ")";
  return ConvexBody(std::move(out));
}

ConvexBody translate(const ConvexBody& body, const Vec& t) {
  if (t.dim() != body.dim()) throw std::invalid_argument("translate: dimension mismatch");
  if (body.is_ball()) return ConvexBody(BallBody{body.ball().center + t, body.ball().radius});
  if (body.is_polytope()) {
    const auto& P = body.polytope();
    VPolytope out;
    out.dim = P.dim;
    for (const Vec& v : P.vertices) out.vertices.push_back(v + t);
    if (P.hull) {
      auto h = std::make_shared<HullResult>();
      for (const Vec& v : P.hull->vertices) h->vertices.push_back(v + t);
      for (size_t i = 0; i < P.hull->facets.normals.size(); ++i) {
        h->facets.normals.push_back(P.hull->facets.normals[i]);
        h->facets.offsets.push_back(P.hull->facets.offsets[i] + dot(P.hull->facets.normals[i], t));
      }
      h->facets.scale = P.hull->facets.scale + norm(t);
      h->volume = P.hull->volume;
      out.hull = h;
    }
    return ConvexBody(std::move(out));
  }
  const auto& I = body.implicit();
  ImplicitBody out;
  out.dim = I.dim;
  out.bound = I.bound + norm(t);
  out.interior_point = I.interior_point + t;
  auto member = I.member;
  Vec shift = t;
  out.member = [member, shift](const Vec& x) { return member(x - shift); };
  if (I.support_hint) {
    auto hint = I.support_hint;
    out.support_hint = [hint, shift](const Vec& u) { return hint(u) + dot(shift, u); };
  }
  out.describe = "translate(" + I.describe + ")";
  return ConvexBody(std::move(out));
}

ConvexBody scale(const ConvexBody& body, double c) {
  if (c == 0 || !std::isfinite(c)) throw std::invalid_argument("scale: bad factor");
  if (c < 0) return scale(reflect(body), -c);
  if (body.is_ball()) return ConvexBody(BallBody{body.ball().center * c, body.ball().radius * c});
  if (body.is_polytope()) {
    const auto& P = body.polytope();
    VPolytope out;
    out.dim = P.dim;
    for (const Vec& v : P.vertices) out.vertices.push_back(v * c);
    if (P.hull) {
      auto h = std::make_shared<HullResult>();
      for (const Vec& v : P.hull->vertices) h->vertices.push_back(v * c);
      for (size_t i = 0; i < P.hull->facets.normals.size(); ++i) {
        h->facets.normals.push_back(P.hull->facets.normals[i]);
        h->facets.offsets.push_back(P.hull->facets.offsets[i] * c);
      }
      h->facets.scale = P.hull->facets.scale * c;
      h->volume = P.hull->volume * std::pow(c, P.dim);
      out.hull = h;
    }
    return ConvexBody(std::move(out));
  }
  const auto& I = body.implicit();
  ImplicitBody out;
  out.dim = I.dim;
  out.bound = I.bound * c;
  out.interior_point = I.interior_point * c;
  auto member = I.member;
  double inv = 1.0 / c;
  out.member = [member, inv](const Vec& x) { return member(x * inv); };
  if (I.support_hint) {
    auto hint = I.support_hint;
    double fac = c;
    out.support_hint = [hint, fac](const Vec& u) { return fac * hint(u); };
  }
  out.describe = "scale(" + I.describe + ")";
  return ConvexBody(std::move(out));
}

// ---- Minkowski sums -------------------------------------------------------------------

ConvexBody minkowski_sum(const ConvexBody& K, const ConvexBody& L) {
  if (K.dim() != L.dim()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  if (K.is_implicit() || L.is_implicit())
    throw std::invalid_argument("minkowski_sum: requires explicit summands");
  int n = K.dim();
  if (K.is_ball() && L.is_ball()) {
    return ConvexBody(BallBody{K.ball().center + L.ball().center, K.ball().radius + L.ball().radius});
  }
  if (K.is_polytope() && L.is_polytope()) {
    const auto& A = K.polytope();
    const auto& B = L.polytope();
    if (n <= 3) {
      std::vector<Vec> sums;
      sums.reserve(A.vertices.size() * B.vertices.size());
      for (const Vec& a : A.vertices)
        for (const Vec& b : B.vertices) sums.push_back(a + b);
      auto hull = convex_hull(sums);
      VPolytope out;
      out.dim = n;
      out.vertices = hull.vertices;
      out.hull = std::make_shared<const HullResult>(std::move(hull));
      return ConvexBody(std::move(out));
    }
    // High dimension: implicit membership via one LP (a in K, b in L, a+b=x).
    auto Av = A.vertices;
    auto Bv = B.vertices;
    ImplicitBody out;
    out.dim = n;
    out.bound = K.norm_bound() + L.norm_bound();
    out.interior_point = K.anchor_point() + L.anchor_point();
    out.member = [Av, Bv, n](const Vec& x) {
      int ca = static_cast<int>(Av.size()), cb = static_cast<int>(Bv.size());
      int rows = n + 2, cols = ca + cb;
      std::vector<double> M(static_cast<size_t>(rows) * cols, 0.0), rhs(rows, 0.0);
      for (int j = 0; j < ca; ++j)
        for (int i = 0; i < n; ++i) M[static_cast<size_t>(i) * cols + j] = Av[j][i];
      for (int j = 0; j < cb; ++j)
        for (int i = 0; i < n; ++i) M[static_cast<size_t>(i) * cols + ca + j] = Bv[j][i];
      for (int j = 0; j < ca; ++j) M[static_cast<size_t>(n) * cols + j] = 1.0;
      for (int j = 0; j < cb; ++j) M[static_cast<size_t>(n + 1) * cols + ca + j] = 1.0;
      for (int i = 0; i < n; ++i) rhs[i] = x[i];
      rhs[n] = 1.0;
      rhs[n + 1] = 1.0;
      return simplex_feasible(M, rows, cols, rhs, kMembershipTol).feasible;
    };
    ConvexBody Kc = K, Lc = L;
    out.support_hint = [Kc, Lc](const Vec& u) { return raw_support(Kc, u) + raw_support(Lc, u); };
    out.describe = "minkowski(" + K.describe() + ", " + L.describe() + ")";
    return ConvexBody(std::move(out));
  }
  // Polytope + ball: membership via point-to-polytope distance.
  const ConvexBody& poly = K.is_polytope() ? K : L;
  const ConvexBody& bl = K.is_ball() ? K : L;
  VPolytope P = poly.polytope();
  BallBody B = bl.ball();
  ImplicitBody out;
  out.dim = n;
  out.bound = poly.norm_bound() + norm(B.center) + B.radius;
  out.interior_point = poly.anchor_point() + B.center;
  out.member = [P, B](const Vec& x) {
    return dist_to_polytope(x - B.center, P) <= B.radius + kMembershipTol;
  };
  ConvexBody pc = poly;
  Vec c = B.center;
  double r = B.radius;
  out.support_hint = [pc, c, r](const Vec& u) { return raw_support(pc, u) + dot(c, u) + r * norm(u); };
  out.describe = "minkowski(" + poly.describe() + ", " + bl.describe() + ")";
  return ConvexBody(std::move(out));
}

ConvexBody difference_body(const ConvexBody& K) { return minkowski_sum(K, reflect(K)); }

ConvexBody intersection_body(const std::vector<ConvexBody>& bodies) {
  if (bodies.empty()) throw std::invalid_argument("intersection_body: empty list");
  int n = bodies[0].dim();
  for (const auto& b : bodies)
    if (b.dim() != n) throw std::invalid_argument("intersection_body: dimension mismatch");
  auto inside_all = [&bodies](const Vec& x) {
    for (const auto& b : bodies)
      if (!fast_contains(b, x)) return false;
    return true;
  };
  Vec anchor = Vec::zero(n);
  if (!inside_all(anchor)) {
    anchor = bodies[0].anchor_point();
    if (!inside_all(anchor)) {
      Vec avg = Vec::zero(n);
      for (const auto& b : bodies) avg += b.anchor_point();
      avg *= 1.0 / static_cast<double>(bodies.size());
      anchor = avg;
      if (!inside_all(anchor)) throw std::invalid_argument("intersection_body: no common anchor found");
    }
  }
  double bound = 1e300;
  for (const auto& b : bodies) bound = std::min(bound, b.norm_bound());
  std::vector<ConvexBody> list = bodies;
  ImplicitBody out;
  out.dim = n;
  out.bound = bound;
  out.interior_point = anchor;
  out.member = [list](const Vec& x) {
    for (const auto& b : list)
      if (!fast_contains(b, x)) return false;
    return true;
  };
  std::string d = "intersection(";
  for (size_t i = 0; i < bodies.size(); ++i) d += (i ? ", " : "") + bodies[i].describe();
  out.describe = d + ")";
  return ConvexBody(std::move(out));
}

// ---- p-difference bodies -----------------------------------------------------------------

ConvexBody dp_body(const PDifferenceSpec& spec) {
  const ConvexBody& K = spec.base;
  if (!K.is_polytope()) throw std::invalid_argument("dp_body: base must be a V-polytope");
  int n = K.dim();
  int p = spec.p;
  if (p < 1) throw std::invalid_argument("dp_body: p >= 1 required");
  if (n * p > kMaxDim) throw std::invalid_argument("dp_body: ambient dimension too large");

  std::vector<ConvexBody> Ls;
  bool general_form = spec.companions.has_value();
  if (general_form) {
    Ls = *spec.companions;
    if (static_cast<int>(Ls.size()) != p) throw std::invalid_argument("dp_body: need p companion bodies");
    for (const auto& L : Ls) {
      if (!L.is_polytope()) throw std::invalid_argument("dp_body: companions must be V-polytopes");
      if (L.dim() != n) throw std::invalid_argument("dp_body: dimension mismatch");
    }
    // General form requires 0 interior to K and every -L_i.
    std::vector<ConvexBody> cut = {K};
    for (const auto& L : Ls) cut.push_back(reflect(L));
    for (const auto& b : cut) {
      const auto* hull = b.polytope().hull.get();
      double margin = hull ? hull->facets.margin(Vec::zero(n)) : (contains(b, Vec::zero(n)) ? -1.0 : 1.0);
      if (margin >= -1e-9)
        throw std::invalid_argument("dp_body: general form needs 0 interior to K and each -L_i");
    }
  } else {
    for (int i = 0; i < p; ++i) Ls.push_back(reflect(K));
  }

  // Membership of (x_1,...,x_p): exists z in K with x_i - z in L_i for all i,
  // i.e.  V_K l + V_{L_i} m_i = x_i,  sum(l) = 1,  sum(m_i) = 1.
  std::vector<Vec> Kv = K.polytope().vertices;
  std::vector<std::vector<Vec>> Lv;
  for (const auto& L : Ls) Lv.push_back(L.polytope().vertices);

  int ck = static_cast<int>(Kv.size());
  std::vector<int> cl(p);
  int cols = ck;
  for (int i = 0; i < p; ++i) {
    cl[i] = static_cast<int>(Lv[i].size());
    cols += cl[i];
  }
  int rows = n * p + 1 + p;

  ImplicitBody out;
  out.dim = n * p;
  double maxL = 0;
  for (const auto& L : Ls) maxL = std::max(maxL, L.norm_bound());
  out.bound = p * (K.norm_bound() + maxL);
  out.interior_point = Vec::zero(n * p);
  out.member = [Kv, Lv, n, p, ck, cl, cols, rows](const Vec& xbar) {
    std::vector<double> A(static_cast<size_t>(rows) * cols, 0.0), b(rows, 0.0);
    for (int i = 0; i < p; ++i) {
      int off = 0;
      for (int q = 0; q < i; ++q) off += cl[q];
      for (int r = 0; r < n; ++r) {
        int row = i * n + r;
        for (int j = 0; j < ck; ++j) A[static_cast<size_t>(row) * cols + j] = Kv[j][r];
        for (int j = 0; j < cl[i]; ++j) A[static_cast<size_t>(row) * cols + ck + off + j] = Lv[i][j][r];
        b[row] = xbar[i * n + r];
      }
    }
    for (int j = 0; j < ck; ++j) A[static_cast<size_t>(n * p) * cols + j] = 1.0;
    b[n * p] = 1.0;
    for (int i = 0; i < p; ++i) {
      int off = 0;
      for (int q = 0; q < i; ++q) off += cl[q];
      int row = n * p + 1 + i;
      for (int j = 0; j < cl[i]; ++j) A[static_cast<size_t>(row) * cols + ck + off + j] = 1.0;
      b[row] = 1.0;
    }
    return simplex_feasible(A, rows, cols, b, kMembershipTol).feasible;
  };
  if (!out.member(out.interior_point))
    throw std::invalid_argument("dp_body: infeasible spec (origin not a member)");

  ConvexBody Kc = K;
  std::vector<ConvexBody> Lc = Ls;
  out.support_hint = [Kc, Lc, n, p](const Vec& ubar) {
    double s = 0;
    for (int i = 0; i < p; ++i) {
      Vec ui = Vec::zero(n);
      for (int r = 0; r < n; ++r) ui[r] = ubar[i * n + r];
      s += raw_support(Kc, ui) + raw_support(Lc[i], ui);
    }
    return s;
  };
  out.describe = "dp(" + K.describe() + ", p=" + std::to_string(p) + (general_form ? ", general)" : ")");
  return ConvexBody(std::move(out));
}

// ---- sections ---------------------------------------------------------------------

namespace {

double ray_exit(const ConvexBody& body, const Vec& base, const Vec& u, double tol) {
  if (body.is_ball()) {
    const auto& B = body.ball();
    Vec w = base - B.center;
    double beta = dot(w, u);
    double gamma = norm2(w) - B.radius * B.radius;
    double disc = beta * beta - gamma;
    if (disc <= 0) return 0.0;
    return std::max(0.0, -beta + std::sqrt(disc));
  }
  if (body.is_polytope() && body.polytope().hull) {
    const Facets& F = body.polytope().hull->facets;
    double t = 1e300;
    for (size_t i = 0; i < F.normals.size(); ++i) {
      double den = dot(F.normals[i], u);
      if (den <= 1e-14) continue;
      double num = F.offsets[i] - dot(F.normals[i], base) + kMembershipTol;
      t = std::min(t, std::max(0.0, num / den));
    }
    return t >= 1e300 ? 0.0 : t;
  }
  // Bisection on membership; the bracket comes from the norm bound.
  double hi = body.norm_bound() + norm(base) + 1.0;
  double lo = 0.0;
  if (fast_contains(body, base + hi * u)) return hi;  // saturated at the bound
  for (int it = 0; it < 200 && (hi - lo) > tol * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    if (fast_contains(body, base + mid * u))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

double section_radial(const ConvexBody& body, const Vec& base, const Vec& u, double tol) {
  if (base.dim() != body.dim() || u.dim() != body.dim())
    throw std::invalid_argument("section_radial: dimension mismatch");
  double r = norm(u);
  if (r <= 1e-14) throw std::invalid_argument("section_radial: zero direction");
  if (!fast_contains(body, base)) return 0.0;
  return ray_exit(body, base, u * (1.0 / r), tol);
}

double section_radial(const ConvexBody& body, const Subspace& H, const Vec& y, const Vec& u,
                      double tol) {
  if (norm(H.perp(u)) > 1e-9 * std::max(1.0, norm(u)))
    throw std::invalid_argument("section_radial: direction not inside the subspace");
  return section_radial(body, y, u, tol);
}

// ---- generators -------------------------------------------------------------------

ConvexBody make_simplex(int n) {
  VPolytope P;
  P.dim = n;
  P.vertices.push_back(Vec::zero(n));
  for (int i = 0; i < n; ++i) P.vertices.push_back(Vec::axis(n, i));
  P.tag = "simplex " + std::to_string(n);
  return ConvexBody(std::move(P));
}

ConvexBody make_cube(int n) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("make_cube: bad dimension");
  VPolytope P;
  P.dim = n;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec v = Vec::zero(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1.0 : 0.0;
    P.vertices.push_back(v);
  }
  P.tag = "cube " + std::to_string(n);
  return ConvexBody(std::move(P));
}

ConvexBody make_centered_cube(int n) {
  ConvexBody c = make_cube(n);
  Vec t = Vec::zero(n);
  for (int i = 0; i < n; ++i) t[i] = -0.5;
  ConvexBody out = translate(c, t);
  VPolytope P = out.polytope();
  P.tag = "ccube " + std::to_string(n);
  return ConvexBody(std::move(P));
}

ConvexBody make_ball(int n, double r, const Vec* center) {
  Vec c = center ? *center : Vec::zero(n);
  if (c.dim() != n) throw std::invalid_argument("make_ball: bad center");
  return ConvexBody(BallBody{c, r});
}

ConvexBody make_cross(int n) {
  VPolytope P;
  P.dim = n;
  for (int i = 0; i < n; ++i) {
    P.vertices.push_back(Vec::axis(n, i));
    P.vertices.push_back(Vec::axis(n, i, -1.0));
  }
  P.tag = "cross " + std::to_string(n);
  return ConvexBody(std::move(P));
}

ConvexBody make_random_polytope(int n, int vertex_count, uint64_t seed) {
  if (vertex_count < n + 1) throw std::invalid_argument("make_random_polytope: need at least n+1 vertices");
  for (uint64_t attempt = 0; attempt < 64; ++attempt) {
    Rng rng(derive_seed(seed, 0xb0d7, attempt));
    std::vector<Vec> pts;
    for (int i = 0; i < vertex_count; ++i) {
      Vec v(n);
      for (int j = 0; j < n; ++j) v[j] = rng.uniform(-1.0, 1.0);
      pts.push_back(v);
    }
    if (affine_dimension(pts) == n) {
      VPolytope P;
      P.dim = n;
      P.vertices = std::move(pts);
      P.tag = "random " + std::to_string(n) + " " + std::to_string(vertex_count) + " " +
              std::to_string(seed);
      return ConvexBody(std::move(P));
    }
  }
  throw std::runtime_error("make_random_polytope: failed to generate a full-dimensional body");
}

ConvexBody make_body(BodyKind kind, int n, const BodyParams& params) {
  switch (kind) {
    case BodyKind::simplex:
      return make_simplex(n);
    case BodyKind::cube:
      return make_cube(n);
    case BodyKind::ball:
      return make_ball(n, params.radius);
    case BodyKind::cross:
      return make_cross(n);
    case BodyKind::random_polytope:
      return make_random_polytope(n, params.vertex_count, params.seed);
  }
  throw std::invalid_argument("make_body: unknown kind");
}

double polytope_volume(const ConvexBody& body) {
  if (!body.is_polytope()) throw std::invalid_argument("polytope_volume: not a polytope");
  const auto& P = body.polytope();
  if (!P.hull) throw std::invalid_argument("polytope_volume: exact volume needs dimension <= 3");
  return P.hull->volume;
}

// ---- serialization ------------------------------------------------------------------

std::string serialize_body(const ConvexBody& body) {
  std::ostringstream os;
  os.precision(17);
  if (body.is_ball()) {
    const auto& B = body.ball();
    os << "ball " << B.center.dim() << " " << B.radius;
    for (int i = 0; i < B.center.dim(); ++i) os << " " << B.center[i];
    return os.str();
  }
  if (body.is_polytope()) {
    const auto& P = body.polytope();
    if (!P.tag.empty()) return P.tag;
    os << "vpoly " << P.dim << " " << P.vertices.size();
    for (const Vec& v : P.vertices)
      for (int i = 0; i < P.dim; ++i) os << " " << v[i];
    return os.str();
  }
  return "implicit " + std::to_string(body.dim()) + " " + body.implicit().describe;
}

ConvexBody parse_body(const std::string& text) {
  std::istringstream is(text);
  std::string kind;
  is >> kind;
  auto want_int = [&is, &text](const char* what) {
    long long v;
    if (!(is >> v)) throw std::invalid_argument(std::string("parse_body: missing ") + what + " in '" + text + "'");
    return v;
  };
  auto want_real = [&is, &text](const char* what) {
    double v;
    if (!(is >> v)) throw std::invalid_argument(std::string("parse_body: missing ") + what + " in '" + text + "'");
    return v;
  };
  if (kind == "simplex") return make_simplex(static_cast<int>(want_int("dimension")));
  if (kind == "cube") return make_cube(static_cast<int>(want_int("dimension")));
  if (kind == "ccube") return make_centered_cube(static_cast<int>(want_int("dimension")));
  if (kind == "cross") return make_cross(static_cast<int>(want_int("dimension")));
  if (kind == "ball") {
    int n = static_cast<int>(want_int("dimension"));
    double r = want_real("radius");
    Vec c = Vec::zero(n);
    double x;
    int i = 0;
    while (i < n && (is >> x)) c[i++] = x;
    return make_ball(n, r, &c);
  }
  if (kind == "random") {
    int n = static_cast<int>(want_int("dimension"));
    int nv = static_cast<int>(want_int("vertex count"));
    uint64_t seed = static_cast<uint64_t>(want_int("seed"));
    return make_random_polytope(n, nv, seed);
  }
  if (kind == "vpoly") {
    int n = static_cast<int>(want_int("dimension"));
    int nv = static_cast<int>(want_int("vertex count"));
    VPolytope P;
    P.dim = n;
    for (int v = 0; v < nv; ++v) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = want_real("coordinate");
      P.vertices.push_back(x);
    }
    return ConvexBody(std::move(P));
  }
  throw std::invalid_argument("parse_body: unknown body kind '" + kind + "'");
}

}  // namespace rsm
