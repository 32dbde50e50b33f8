#include "rsm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rsm/lp.hpp"
#include "rsm/numeric.hpp"
#include "rsm/parallel.hpp"
#include "rsm/rng.hpp"

namespace rsm {

namespace {

struct ChunkStat {
  double sum = 0;
  double sumsq = 0;
  int64_t n = 0;
};

// Ordered reduction of chunk statistics: the mean/variance of the pooled
// sample, combined in chunk-index order.
Estimate reduce_chunks(const std::vector<ChunkStat>& stats, double factor, const char* tag) {
  double sum = 0, sumsq = 0;
  int64_t n = 0;
  for (const ChunkStat& c : stats) {
    sum += c.sum;
    sumsq += c.sumsq;
    n += c.n;
  }
  Estimate e;
  e.method = tag;
  e.samples_used = n;
  if (n == 0) return e;
  double mean = sum / static_cast<double>(n);
  double var = std::max(0.0, sumsq / static_cast<double>(n) - mean * mean);
  e.value = factor * mean;
  e.std_error = std::abs(factor) * std::sqrt(var / static_cast<double>(n));
  return e;
}

// H-coordinate box of the section body cap (H + y_perp), clamped by the
// density's support radius. Returns false when provably empty.
bool section_box(const ConvexBody& body, const Subspace& H, const Vec& y_perp, const Density& d,
                 Vec& lo, Vec& hi) {
  int m = H.dim();
  lo = Vec::zero(m);
  hi = Vec::zero(m);
  bool have_hint = !body.is_implicit() || static_cast<bool>(body.implicit().support_hint);
  for (int j = 0; j < m; ++j) {
    double up, dn;
    if (have_hint) {
      up = support(body, H.basis[j]);
      dn = -support(body, -H.basis[j]);
    } else {
      up = body.norm_bound();
      dn = -up;
    }
    double pad = 1e-6 * (1.0 + std::max(std::abs(up), std::abs(dn)));
    lo[j] = dn - pad;
    hi[j] = up + pad;
    if (lo[j] > hi[j]) return false;
  }
  if (std::isfinite(d.support_radius)) {
    double reach2 = d.support_radius * d.support_radius - norm2(y_perp);
    if (reach2 <= 0) return false;
    double reach = std::sqrt(reach2) + 1e-9;
    for (int j = 0; j < m; ++j) {
      lo[j] = std::max(lo[j], -reach);
      hi[j] = std::min(hi[j], reach);
      if (lo[j] >= hi[j]) return false;
    }
  }
  return true;
}

Estimate box_mc_section(const ConvexBody& body, const Subspace& H, const Vec& y_perp,
                        const Density& d, const EstimatorConfig& cfg, const char* tag) {
  Vec lo, hi;
  if (!section_box(body, H, y_perp, d, lo, hi)) return Estimate{0, 0, "empty", 0, 0};
  int m = H.dim();
  double box_vol = 1, core_vol = 1;
  for (int j = 0; j < m; ++j) {
    box_vol *= hi[j] - lo[j];
    double pad = 1e-6 * (1.0 + std::max(std::abs(hi[j]), std::abs(lo[j])));
    core_vol *= std::max(hi[j] - lo[j] - 2 * pad, 0.0);
  }
  int64_t total = std::max<int64_t>(cfg.samples, 1);
  int64_t chunk = std::max<int64_t>(cfg.chunk, 1);
  int nchunks = static_cast<int>((total + chunk - 1) / chunk);
  std::vector<ChunkStat> stats(nchunks);
  parallel_for_slots(nchunks, [&](int c) {
    Rng rng(derive_seed(cfg.seed, 0xb0c5ec, static_cast<uint64_t>(c)));
    int64_t count = std::min<int64_t>(chunk, total - static_cast<int64_t>(c) * chunk);
    ChunkStat st;
    for (int64_t i = 0; i < count; ++i) {
      Vec h = rng.in_box(lo, hi);
      Vec p = y_perp + H.lift(h);
      double v = 0;
      if (fast_contains(body, p)) v = d(p);
      st.sum += v;
      st.sumsq += v * v;
      ++st.n;
    }
    stats[c] = st;
  });
  Estimate e = reduce_chunks(stats, box_vol, tag);
  // Deterministic bias bound from the 1e-6 box inflation.
  e.truncation_bound += (box_vol - core_vol) * d.attr.sup_value;
  return e;
}

enum class BaseSearch { found, empty, unknown };

// Interior base point for polar integration of body cap (H + y_perp).
// "empty" is conclusive (ball distance test / polytope LP infeasibility).
BaseSearch find_section_base(const ConvexBody& body, const Subspace& H, const Vec& y_perp, Vec& base) {
  if (fast_contains(body, y_perp)) {
    base = y_perp;
    return BaseSearch::found;
  }
  if (body.is_ball()) {
    const auto& B = body.ball();
    Vec closest = y_perp + H.lift(H.coords(B.center));
    if (norm(closest - B.center) <= B.radius + kMembershipTol) {
      base = closest;
      return BaseSearch::found;
    }
    return BaseSearch::empty;
  }
  Vec cand = y_perp + H.lift(H.coords(body.anchor_point()));
  if (fast_contains(body, cand)) {
    base = cand;
    return BaseSearch::found;
  }
  if (body.is_polytope()) {
    // LP: V l - sum_j h_j b_j = y_perp, sum(l) = 1, h free (split h = u - v).
    const auto& V = body.polytope().vertices;
    int n = body.dim(), m = H.dim();
    int nv = static_cast<int>(V.size());
    int cols = nv + 2 * m, rows = n + 1;
    std::vector<double> A(static_cast<size_t>(rows) * cols, 0.0), b(rows, 0.0);
    for (int j = 0; j < nv; ++j)
      for (int i = 0; i < n; ++i) A[static_cast<size_t>(i) * cols + j] = V[j][i];
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < n; ++i) {
        A[static_cast<size_t>(i) * cols + nv + k] = -H.basis[k][i];
        A[static_cast<size_t>(i) * cols + nv + m + k] = H.basis[k][i];
      }
    for (int j = 0; j < nv; ++j) A[static_cast<size_t>(n) * cols + j] = 1.0;
    for (int i = 0; i < n; ++i) b[i] = y_perp[i];
    b[n] = 1.0;
    FeasResult r = simplex_feasible(A, rows, cols, b, 1e-9);
    if (!r.feasible) return BaseSearch::empty;
    if (!r.point.empty()) {
      Vec p = Vec::zero(n);
      for (int j = 0; j < nv; ++j) p += r.point[j] * V[j];
      // Project back onto the section plane to clean up LP slack.
      Vec h = H.coords(p);
      Vec q = y_perp + H.lift(h);
      if (fast_contains(body, q)) {
        base = q;
        return BaseSearch::found;
      }
    }
  }
  return BaseSearch::unknown;
}

Estimate polar_section(const ConvexBody& body, const Subspace& H, const Vec& y_perp,
                       const Density& d, const EstimatorConfig& cfg) {
  Vec base;
  BaseSearch found = find_section_base(body, H, y_perp, base);
  if (found == BaseSearch::empty) return Estimate{0, 0, "empty", 0, 0};
  if (found == BaseSearch::unknown) {
    // Implicit body without a conclusive base: fall back with a note.
    return box_mc_section(body, H, y_perp, d, cfg, "polar->box_mc");
  }
  int m = H.dim();
  auto radial_integral = [&](const Vec& u_ambient) {
    double rho = section_radial(body, base, u_ambient, cfg.bisection_tol);
    if (rho <= 0) return 0.0;
    auto integrand = [&](double r) {
      double w = m >= 2 ? std::pow(r, m - 1) : 1.0;
      return w * d(base + u_ambient * r);
    };
    return adaptive_simpson(integrand, 0.0, rho, 1e-9, 1e-300, 36);
  };
  if (m == 1) {
    double v = radial_integral(H.basis[0]) + radial_integral(-H.basis[0]);
    Estimate e;
    e.value = v;
    e.std_error = 2e-9 * std::abs(v);  // radial quadrature tolerance proxy
    e.method = "polar";
    e.samples_used = 2;
    return e;
  }
  int dirs = std::max(cfg.polar_dirs, 8);
  const int chunk = 64;
  int nchunks = (dirs + chunk - 1) / chunk;
  std::vector<ChunkStat> stats(nchunks);
  parallel_for_slots(nchunks, [&](int c) {
    Rng rng(derive_seed(cfg.seed, 0x9017a5, static_cast<uint64_t>(c)));
    int count = std::min(chunk, dirs - c * chunk);
    ChunkStat st;
    for (int i = 0; i < count; ++i) {
      Vec u = H.lift(rng.on_sphere(m));
      double v = radial_integral(u);
      st.sum += v;
      st.sumsq += v * v;
      ++st.n;
    }
    stats[c] = st;
  });
  return reduce_chunks(stats, sphere_surface(m), "polar");
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::box_mc:
      return "box_mc";
    case Method::polar:
      return "polar";
    case Method::layer_cake:
      return "layer_cake";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "box_mc") return Method::box_mc;
  if (name == "polar") return Method::polar;
  if (name == "layer_cake") return Method::layer_cake;
  throw std::invalid_argument("parse_method: unknown method '" + name + "'");
}

Estimate measure_section(const ConvexBody& body, const Subspace& H, const Vec& y, const Density& d,
                         const EstimatorConfig& cfg) {
  if (body.dim() != H.ambient || y.dim() != H.ambient || d.dim != H.ambient)
    throw std::invalid_argument("measure_section: dimension mismatch");
  Vec y_perp = H.perp(y);
  if (cfg.method == Method::polar) return polar_section(body, H, y_perp, d, cfg);
  return box_mc_section(body, H, y_perp, d, cfg, "box_mc");
}

Estimate estimate_volume(const ConvexBody& body, const EstimatorConfig& cfg) {
  Density leb = make_density(DensityFamily::lebesgue, body.dim());
  return measure_section(body, Subspace::full(body.dim()), Vec::zero(body.dim()), leb, cfg);
}

// ---- layer-cake machinery ------------------------------------------------------

namespace {

struct LevelNode {
  double t;
  double w;
};

// Nodes and weights for Int_0^1 g(t) dt. Unbounded level sets use the
// substitution t = exp(-u^2) with the tail t < t_min dropped (bounded
// analytically by the caller).
std::vector<LevelNode> level_nodes(const SConcaveFunction& f, int t_nodes, double t_min = 1e-6) {
  std::vector<LevelNode> out;
  auto gl = gauss_legendre_01(t_nodes);
  if (!f.unbounded_levels) {
    for (auto& q : gl) out.push_back({q.x, q.w});
    return out;
  }
  double u_max = std::sqrt(std::log(1.0 / t_min));
  for (auto& q : gl) {
    double u = q.x * u_max;
    double t = std::exp(-u * u);
    out.push_back({t, q.w * u_max * 2.0 * u * t});
  }
  return out;
}

// Conservative tail bound sup_phi * omega_m * Int_0^{t_min} r(t)^m dt for
// radial level-set forms (zero for bounded level families).
double level_tail_bound(const SConcaveFunction& f, const Density& d, int m, double t_min = 1e-6) {
  if (!f.unbounded_levels) return 0.0;
  auto gl = gauss_legendre_01(32);
  double integral = 0;
  for (auto& q : gl) {
    double t = q.x * t_min;
    ConvexBody c = f.level_set_form(t);
    double r = c.is_ball() ? c.ball().radius : c.norm_bound();
    integral += q.w * t_min * std::pow(r, m);
  }
  return d.attr.sup_value * unit_ball_volume(m) * integral;
}

}  // namespace

namespace {

struct GridPass {
  double value = 0;
  double var = 0;
  double trunc = 0;
  int64_t used = 0;
};

GridPass layer_cake_pass(const SConcaveFunction& f,
                         const std::function<ConvexBody(const ConvexBody&)>& transform,
                         const Subspace& H, const Vec& y, const Density& d,
                         const EstimatorConfig& cfg, int t_nodes, uint64_t salt) {
  auto nodes = level_nodes(f, t_nodes);
  EstimatorConfig node_cfg = cfg;
  node_cfg.samples = std::max<int64_t>(cfg.samples / t_nodes, 256);
  if (H.dim() == 1) node_cfg.method = Method::polar;  // deterministic two-ray route
  std::vector<Estimate> per_node(nodes.size());
  parallel_for_slots(static_cast<int>(nodes.size()), [&](int j) {
    ConvexBody level = f.level_set_form(nodes[j].t);
    ConvexBody body = transform ? transform(level) : level;
    EstimatorConfig nc =
        node_cfg.with_seed(derive_seed(cfg.seed, 0x1a7e5 + salt, static_cast<uint64_t>(j)));
    per_node[j] = measure_section(body, H, y, d, nc);
  });
  GridPass out;
  for (size_t j = 0; j < nodes.size(); ++j) {
    out.value += nodes[j].w * per_node[j].value;
    out.var += nodes[j].w * per_node[j].std_error * nodes[j].w * per_node[j].std_error;
    out.used += per_node[j].samples_used;
    out.trunc = std::max(out.trunc, per_node[j].truncation_bound);
  }
  return out;
}

}  // namespace

Estimate layer_cake_sections(const SConcaveFunction& f,
                             const std::function<ConvexBody(const ConvexBody&)>& transform,
                             const Subspace& H, const Vec& y, const Density& d,
                             const EstimatorConfig& cfg) {
  if (!f.level_set_form) throw std::invalid_argument("layer_cake_sections: f has no level-set form");
  GridPass fine = layer_cake_pass(f, transform, H, y, d, cfg, cfg.t_nodes, 0);
  // t-grid quadrature error estimated by node halving.
  GridPass coarse =
      layer_cake_pass(f, transform, H, y, d, cfg, std::max(cfg.t_nodes / 2, 8), 0x40d);
  double quad_err = std::abs(fine.value - coarse.value);
  Estimate e;
  e.value = f.sup_value * fine.value;
  e.std_error = f.sup_value * std::sqrt(fine.var + quad_err * quad_err);
  e.method = "layer_cake";
  e.samples_used = fine.used + coarse.used;
  e.truncation_bound = f.sup_value * (level_tail_bound(f, d, H.dim()) + fine.trunc);
  return e;
}

Estimate integrate_function_section(const SConcaveFunction& f, const Subspace& H, const Vec& y,
                                    const Density& d, const EstimatorConfig& cfg) {
  if (f.dim != H.ambient || d.dim != H.ambient)
    throw std::invalid_argument("integrate_function_section: dimension mismatch");
  if (cfg.method != Method::box_mc && f.level_set_form) {
    return layer_cake_sections(f, nullptr, H, y, d, cfg);
  }
  // Direct Monte Carlo on f * phi over the section box.
  Vec y_perp = H.perp(y);
  Density fd = d;
  SConcaveFunction fc = f;
  Density prod;
  prod.dim = d.dim;
  prod.eval = [fc, fd](const Vec& x) { return fc.eval(x) * fd.eval(x); };
  prod.attr = d.attr;
  prod.attr.sup_value = f.sup_value * d.attr.sup_value;
  prod.support_radius = std::min(f.effective_radius, d.support_radius);
  prod.name = "f*phi";
  ConvexBody reach = make_ball(d.dim, f.effective_radius + norm(y_perp) + 1.0);
  Estimate e = box_mc_section(reach, H, y_perp, prod, cfg, "box_mc");
  // The effective-radius cut drops f < 1e-12 sup on the integration box.
  double box_meas = 1.0;
  for (int j = 0; j < H.dim(); ++j) box_meas *= 2.0 * (f.effective_radius + norm(y_perp) + 1.0);
  e.truncation_bound += 1e-12 * f.sup_value * d.attr.sup_value * box_meas;
  return e;
}

Estimate marginal_of_translate(const SConcaveFunction& f, const Subspace& H, const Vec& shift,
                               const Density& d, const EstimatorConfig& cfg) {
  if (f.dim != H.ambient || shift.dim() != H.ambient)
    throw std::invalid_argument("marginal_of_translate: dimension mismatch");
  if (cfg.method != Method::box_mc && f.level_set_form) {
    Vec minus = -shift;
    auto transform = [minus](const ConvexBody& c) { return translate(c, minus); };
    return layer_cake_sections(f, transform, H, Vec::zero(H.ambient), d, cfg);
  }
  SConcaveFunction fc = f;
  Density fd = d;
  Vec sh = shift;
  Density prod;
  prod.dim = d.dim;
  prod.eval = [fc, fd, sh](const Vec& x) { return fc.eval(x + sh) * fd.eval(x); };
  prod.attr = d.attr;
  prod.attr.sup_value = f.sup_value * d.attr.sup_value;
  prod.support_radius = std::numeric_limits<double>::infinity();
  prod.name = "f(.+z)*phi";
  ConvexBody reach = make_ball(d.dim, f.effective_radius + norm(shift) + 1.0);
  return box_mc_section(reach, H, Vec::zero(H.ambient), prod, cfg, "box_mc");
}

// ---- translate suprema -----------------------------------------------------------

Subspace orthogonal_complement(const Subspace& H) {
  int n = H.ambient;
  if (H.dim() >= n) throw std::invalid_argument("orthogonal_complement: subspace is full");
  Subspace out;
  out.ambient = n;
  for (int i = 0; i < n && static_cast<int>(out.basis.size()) < n - H.dim(); ++i) {
    Vec v = Vec::axis(n, i);
    for (const Vec& b : H.basis) v -= dot(v, b) * b;
    for (const Vec& b : out.basis) v -= dot(v, b) * b;
    double r = norm(v);
    if (r > 1e-8) out.basis.push_back(v * (1.0 / r));
  }
  if (static_cast<int>(out.basis.size()) != n - H.dim())
    throw std::runtime_error("orthogonal_complement: failed to complete the basis");
  out.validate();
  return out;
}

SupResult sup_section_translate(const ConvexBody& body, const Subspace& H, const Density& d,
                                const EstimatorConfig& cfg, const SupConfig& sup_cfg) {
  int n = H.ambient;
  bool lebesgue_like = d.name == "lebesgue";
  // For Lebesgue the section measure is invariant under shifts inside H:
  // search only the complement. General densities need the full space.
  Subspace search = lebesgue_like && H.dim() < n ? orthogonal_complement(H) : Subspace::full(n);
  double radius = d.translate_search_radius(body.norm_bound());
  ConvexBody bc = body;
  auto objective = [bc, &H, &d, &cfg, &search](const Vec& coords) {
    Vec z = search.lift(coords);
    return measure_section(translate(bc, -z), H, Vec::zero(H.ambient), d, cfg);
  };
  return sup_translate(objective, search.dim(), radius, sup_cfg);
}

SupResult sup_marginal_translate(const SConcaveFunction& f, const Subspace& H, const Density& d,
                                 const EstimatorConfig& cfg, const SupConfig& sup_cfg) {
  int n = H.ambient;
  bool lebesgue_like = d.name == "lebesgue";
  Subspace search = lebesgue_like && H.dim() < n ? orthogonal_complement(H) : Subspace::full(n);
  double radius = d.translate_search_radius(f.effective_radius);
  auto objective = [&f, &H, &d, &cfg, &search](const Vec& coords) {
    Vec z = search.lift(coords);
    return marginal_of_translate(f, H, z, d, cfg);
  };
  return sup_translate(objective, search.dim(), radius, sup_cfg);
}

LayerSupResult layer_sup_integral(const SConcaveFunction& f, const Subspace& H, const Density& d,
                                  const EstimatorConfig& cfg, const SupConfig& sup_cfg) {
  if (!f.level_set_form) throw std::invalid_argument("layer_sup_integral: f has no level-set form");
  auto nodes = level_nodes(f, cfg.t_nodes);
  int n = H.ambient;
  bool lebesgue_like = d.name == "lebesgue";
  Subspace search = lebesgue_like && H.dim() < n ? orthogonal_complement(H) : Subspace::full(n);
  EstimatorConfig node_cfg = cfg;
  node_cfg.samples = std::max<int64_t>(cfg.samples / cfg.t_nodes, 256);
  if (H.dim() == 1) node_cfg.method = Method::polar;

  LayerSupResult out;
  double val = 0, var = 0;
  int64_t used = 0;
  std::vector<Vec> warm;  // argmax chain across neighbouring nodes
  for (size_t j = 0; j < nodes.size(); ++j) {
    ConvexBody level = f.level_set_form(nodes[j].t);
    EstimatorConfig nc = node_cfg.with_seed(derive_seed(cfg.seed, 0x50b5, static_cast<uint64_t>(j)));
    double radius = d.translate_search_radius(level.norm_bound());
    ConvexBody lc = level;
    auto objective = [lc, &H, &d, &nc, &search](const Vec& coords) {
      Vec z = search.lift(coords);
      return measure_section(translate(lc, -z), H, Vec::zero(H.ambient), d, nc);
    };
    SupConfig scfg = sup_cfg;
    scfg.seed = derive_seed(sup_cfg.seed, 0x5a9, static_cast<uint64_t>(j));
    SupResult s = sup_translate(objective, search.dim(), radius, scfg, warm);
    warm = {s.argmax};
    if (!s.converged) ++out.flagged_nodes;
    val += nodes[j].w * s.value.value;
    var += nodes[j].w * s.value.std_error * nodes[j].w * s.value.std_error;
    used += s.value.samples_used;
  }
  out.est.value = f.sup_value * val;
  out.est.std_error = f.sup_value * std::sqrt(var);
  out.est.method = "layer_sup";
  out.est.samples_used = used;
  out.est.truncation_bound = f.sup_value * level_tail_bound(f, d, H.dim());
  return out;
}

// ---- nested product --------------------------------------------------------------

Estimate nested_translate_product(const ConvexBody& K, const std::vector<ConvexBody>& companions,
                                  const std::vector<Subspace>& subspaces,
                                  const std::vector<Density>& densities,
                                  const EstimatorConfig& cfg) {
  size_t p = companions.size();
  if (subspaces.size() != p || densities.size() != p || p == 0)
    throw std::invalid_argument("nested_translate_product: list sizes must match");
  int n = K.dim();
  for (size_t i = 0; i < p; ++i) {
    if (companions[i].dim() != n || subspaces[i].ambient != n || densities[i].dim != n)
      throw std::invalid_argument("nested_translate_product: dimension mismatch");
  }
  Vec lo, hi;
  bounding_box(K, lo, hi);
  int64_t attempts = std::max<int64_t>(cfg.outer_points, 1);
  int64_t chunk = std::max<int64_t>(std::min<int64_t>(cfg.chunk, 256), 1);
  int nchunks = static_cast<int>((attempts + chunk - 1) / chunk);
  std::vector<ChunkStat> stats(nchunks);
  EstimatorConfig inner_base = cfg;
  inner_base.samples = cfg.inner_samples;
  inner_base.method = Method::polar;
  parallel_for_slots(nchunks, [&](int c) {
    Rng rng(derive_seed(cfg.seed, 0xd7e9, static_cast<uint64_t>(c)));
    int64_t count = std::min<int64_t>(chunk, attempts - static_cast<int64_t>(c) * chunk);
    ChunkStat st;
    for (int64_t i = 0; i < count; ++i) {
      uint64_t idx = static_cast<uint64_t>(c) * static_cast<uint64_t>(chunk) + static_cast<uint64_t>(i);
      Vec y = rng.in_box(lo, hi);
      if (!fast_contains(K, y)) continue;
      double prod = 1.0;
      for (size_t q = 0; q < p; ++q) {
        EstimatorConfig ic = inner_base.with_seed(derive_seed(cfg.seed, idx + 1, q + 1));
        Estimate inner = measure_section(translate(companions[q], y), subspaces[q],
                                         Vec::zero(n), densities[q], ic);
        prod *= inner.value;
        if (prod == 0) break;
      }
      st.sum += prod;
      st.sumsq += prod * prod;
      ++st.n;
    }
    stats[c] = st;
  });
  Estimate e = reduce_chunks(stats, 1.0, "nested_mc");
  return e;
}

Estimate nested_srrs_rhs(const ConvexBody& K, const std::vector<Density>& densities,
                         const std::vector<Subspace>& subspaces, const EstimatorConfig& cfg) {
  std::vector<ConvexBody> companions(densities.size(), reflect(K));
  return nested_translate_product(K, companions, subspaces, densities, cfg);
}

}  // namespace rsm
