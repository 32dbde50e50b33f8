#include "rsm/funclass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rsm/numeric.hpp"
#include "rsm/rng.hpp"

namespace rsm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailCut = 1e-12;  // radial quadrature truncates where f < 1e-12 sup

// Deterministic coordinate pattern search (maximization).
template <class F>
std::pair<Vec, double> pattern_search_max(const F& g, Vec x, double step, double step_tol,
                                          double value_tol, int max_iters) {
  double fx = g(x);
  int n = x.dim();
  for (int it = 0; it < max_iters && step > step_tol; ++it) {
    bool improved = false;
    for (int i = 0; i < n; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Vec y = x;
        y[i] += sgn * step;
        double fy = g(y);
        if (fy > fx + value_tol) {
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

}  // namespace

double alpha_mean(double a, double b, double alpha) {
  if (a < 0 || b < 0) throw std::invalid_argument("alpha_mean: negative argument");
  if (a == 0 || b == 0) return 0.0;
  if (alpha == kInf) return std::max(a, b);
  if (alpha == -kInf) return std::min(a, b);
  if (alpha == 0) return a * b;
  return std::pow(std::pow(a, alpha) + std::pow(b, alpha), 1.0 / alpha);
}

double alpha_mean(double a, double b, double alpha, double lambda) {
  if (a < 0 || b < 0) throw std::invalid_argument("alpha_mean: negative argument");
  if (lambda < 0 || lambda > 1) throw std::invalid_argument("alpha_mean: lambda in [0,1]");
  if (a == 0 || b == 0) return 0.0;
  if (alpha == kInf) return std::max(a, b);
  if (alpha == -kInf) return std::min(a, b);
  if (alpha == 0) return std::pow(a, 1.0 - lambda) * std::pow(b, lambda);
  return std::pow((1.0 - lambda) * std::pow(a, alpha) + lambda * std::pow(b, alpha), 1.0 / alpha);
}

SConcaveFunction make_function(FuncFamily family, int n, const FuncParams& params) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("make_function: bad dimension");
  SConcaveFunction f;
  f.dim = n;
  f.family = family;
  f.sup_value = 1.0;
  switch (family) {
    case FuncFamily::indicator: {
      if (!params.body) throw std::invalid_argument("make_function: indicator needs a body");
      ConvexBody K = *params.body;
      if (K.dim() != n) throw std::invalid_argument("make_function: indicator dimension mismatch");
      if (!fast_contains(K, Vec::zero(n)))
        throw std::invalid_argument("make_function: indicator needs 0 in K");
      f.eval = [K](const Vec& x) { return fast_contains(K, x) ? 1.0 : 0.0; };
      f.s = -kInf;  // admissible for every alpha; see alpha_class
      f.radial = false;
      f.level_set_form = [K](double) { return K; };
      f.effective_radius = K.norm_bound();
      f.body = K;
      f.indicator_diff = difference_body(K);
      f.name = "indicator " + serialize_body(K);
      return f;
    }
    case FuncFamily::gaussian: {
      f.eval = [](const Vec& x) { return std::exp(-norm2(x)); };
      f.s = 0;
      f.radial = true;
      int dim = n;
      f.level_set_form = [dim](double t) {
        return make_ball(dim, std::max(std::sqrt(std::log(1.0 / t)), 1e-12));
      };
      f.unbounded_levels = true;
      f.effective_radius = std::sqrt(std::log(1.0 / kTailCut));
      f.name = "gaussian";
      return f;
    }
    case FuncFamily::exp_norm: {
      f.eval = [](const Vec& x) { return std::exp(-norm(x)); };
      f.s = 0;
      f.radial = true;
      int dim = n;
      f.level_set_form = [dim](double t) { return make_ball(dim, std::max(std::log(1.0 / t), 1e-12)); };
      f.unbounded_levels = true;
      f.effective_radius = std::log(1.0 / kTailCut);
      f.name = "exp";
      return f;
    }
    case FuncFamily::cone: {
      double s = params.s;
      if (!(s > 0)) throw std::invalid_argument("make_function: cone needs s > 0");
      f.eval = [s](const Vec& x) {
        double t = 1.0 - norm(x);
        return t > 0 ? std::pow(t, s) : 0.0;
      };
      f.s = s;
      f.shape = s;
      f.radial = true;
      int dim = n;
      f.level_set_form = [dim, s](double t) {
        return make_ball(dim, std::max(1.0 - std::pow(t, 1.0 / s), 1e-12));
      };
      f.effective_radius = 1.0;
      std::ostringstream os;
      os << "cone " << s;
      f.name = os.str();
      return f;
    }
    case FuncFamily::power_decay: {
      double p = params.p > 0 ? params.p : 2.0 * n;
      if (!(p > n)) throw std::invalid_argument("make_function: power_decay needs p > n");
      f.eval = [p](const Vec& x) { return std::pow(1.0 + norm(x), -p); };
      f.s = -p;
      f.shape = p;
      f.radial = true;
      int dim = n;
      f.level_set_form = [dim, p](double t) {
        return make_ball(dim, std::max(std::pow(t, -1.0 / p) - 1.0, 1e-12));
      };
      f.unbounded_levels = true;
      f.effective_radius = std::pow(kTailCut, -1.0 / p) - 1.0;
      std::ostringstream os;
      os << "power_decay " << p;
      f.name = os.str();
      return f;
    }
  }
  throw std::invalid_argument("make_function: unknown family");
}

SConcaveFunction parse_function(const std::string& text, int n) {
  std::istringstream is(text);
  std::string fam;
  is >> fam;
  FuncParams p;
  if (fam == "gaussian") return make_function(FuncFamily::gaussian, n);
  if (fam == "exp") return make_function(FuncFamily::exp_norm, n);
  if (fam == "cone") {
    if (!(is >> p.s)) throw std::invalid_argument("parse_function: cone needs s");
    return make_function(FuncFamily::cone, n, p);
  }
  if (fam == "power_decay") {
    if (!(is >> p.p)) p.p = 0;
    return make_function(FuncFamily::power_decay, n, p);
  }
  if (fam == "indicator") {
    std::string rest;
    std::getline(is, rest);
    p.body = parse_body(rest);
    return make_function(FuncFamily::indicator, n, p);
  }
  throw std::invalid_argument("parse_function: unknown family '" + fam + "'");
}

double alpha_class(const SConcaveFunction& f) {
  if (f.family == FuncFamily::indicator) return kInf;
  if (f.s == 0) return 0.0;
  return 1.0 / f.s;
}

ConvexBody level_set(const SConcaveFunction& f, double t) {
  if (!(t > 0 && t <= 1)) throw std::invalid_argument("level_set: t in (0,1]");
  if (f.level_set_form) return f.level_set_form(t);
  double thresh = t * f.sup_value;
  auto eval = f.eval;
  ImplicitBody b;
  b.dim = f.dim;
  b.bound = f.effective_radius + 1.0;
  b.interior_point = Vec::zero(f.dim);
  b.member = [eval, thresh](const Vec& x) { return eval(x) >= thresh; };
  b.describe = "levelset(" + f.name + ")";
  return ConvexBody(std::move(b));
}

// ---- difference function ---------------------------------------------------

namespace {

// Closed forms for the catalog. Radial members: the optimal split of
// x = x1 - x2 is the symmetric one, by convexity of f^alpha (alpha < 0),
// log f (alpha = 0) or f^{1/s} concavity (alpha = 1/s > 0); power_decay at
// alpha = 0 peaks at the one-sided split instead.
std::optional<double> delta_closed_form(const SConcaveFunction& f, double alpha, const Vec& x) {
  if (f.family == FuncFamily::indicator) {
    // Membership in K - K decides every alpha; the mean of (1,1) scales it.
    double mass = alpha == 0 || alpha == kInf || alpha == -kInf ? 1.0 : std::pow(2.0, 1.0 / alpha);
    return fast_contains(*f.indicator_diff, x) ? mass : 0.0;
  }
  if (!f.radial) return std::nullopt;
  if (alpha == -kInf) return f.eval(x * 0.5);
  if (alpha == kInf) return f.sup_value;  // max(f(0), f(-x)) attains the sup
  if (alpha == 0) {
    if (f.family == FuncFamily::power_decay) return f.eval(x);  // one-sided split
    double h = f.eval(x * 0.5);
    return h * h;
  }
  // alpha = 1/s within the admissible class: symmetric split.
  if (alpha <= alpha_class(f) + 1e-15) {
    double h = f.eval(x * 0.5);
    return std::pow(2.0, 1.0 / alpha) * h;
  }
  return std::nullopt;
}

}  // namespace

DeltaValue delta_alpha(const SConcaveFunction& f, double alpha, const Vec& x, const DeltaConfig& cfg,
                       bool force_search) {
  if (x.dim() != f.dim) throw std::invalid_argument("delta_alpha: dimension mismatch");
  if (alpha > alpha_class(f) + 1e-15)
    throw std::invalid_argument("delta_alpha: alpha exceeds the admissible class of f");
  if (!force_search) {
    auto cf = delta_closed_form(f, alpha, x);
    if (cf) return {*cf, true, true};
  }
  // Multi-start derivative-free maximization over x1 (x2 = x1 - x).
  auto objective = [&f, &x, alpha](const Vec& x1) {
    return alpha_mean(f.eval(x1), f.eval(x1 - x), alpha);
  };
  double radius = 0.5 * norm(x) + f.effective_radius;
  std::vector<Vec> starts = {x * 0.5, x, Vec::zero(f.dim)};
  Rng rng(derive_seed(cfg.seed, 0xde17a));
  while (static_cast<int>(starts.size()) < cfg.restarts)
    starts.push_back(x * 0.5 + rng.on_sphere(f.dim) * (radius * rng.uniform()));
  double best = 0, second = 0;
  for (const Vec& s0 : starts) {
    auto [arg, val] = pattern_search_max(objective, s0, std::max(0.25 * radius, 1e-3), cfg.step_tol,
                                         cfg.value_tol, cfg.max_iters);
    (void)arg;
    if (val > best) {
      second = best;
      best = val;
    } else if (val > second) {
      second = val;
    }
  }
  bool converged = best <= 0 || (best - second) <= 1e-4 * best;
  return {best, converged, false};
}

double delta_minus_inf_by_levels(const SConcaveFunction& f, const Vec& x, double tol) {
  // sup { t : x in C_t - C_t } * sup_value, bisection on t.
  auto member_at = [&f, &x](double t) {
    ConvexBody D = difference_body(level_set(f, t));
    return fast_contains(D, x);
  };
  if (!member_at(1e-9)) return 0.0;
  double lo = 1e-9, hi = 1.0;
  if (member_at(1.0)) return f.sup_value;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (member_at(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo * f.sup_value;
}

namespace {

// Shared construction for Delta_alpha f and its halved variant. For the
// catalog these have closed forms:
//   indicator:      c(alpha) * chi_{K-K}
//   radial, a=0:    f(x/2)^2
//   radial, other:  2^{1/alpha} f(x/2)   (admissible alpha, symmetric split)
//   radial, -inf:   f(x/2)
// The halved variant replaces x/2 by x.
SConcaveFunction make_delta(const SConcaveFunction& f, double alpha, bool halved) {
  if (alpha > alpha_class(f) + 1e-15)
    throw std::invalid_argument("delta_function: alpha exceeds the admissible class of f");
  SConcaveFunction g = f;
  double stretch = halved ? 1.0 : 2.0;
  g.effective_radius = f.effective_radius * stretch;
  g.name = (halved ? "delta2[" : "delta[") + std::to_string(alpha) + "](" + f.name + ")";
  if (f.family == FuncFamily::indicator) {
    double mass = alpha == 0 || alpha == kInf || alpha == -kInf ? 1.0 : std::pow(2.0, 1.0 / alpha);
    ConvexBody D = halved ? scale(*f.indicator_diff, 0.5) : *f.indicator_diff;
    g.sup_value = mass;
    g.eval = [D, mass](const Vec& x) { return fast_contains(D, x) ? mass : 0.0; };
    g.level_set_form = [D](double) { return D; };
    g.body = D;
    g.indicator_diff = difference_body(D);
    g.effective_radius = D.norm_bound();
    return g;
  }
  if (!f.radial) throw std::invalid_argument("delta_function: no closed form for this family");
  auto base = f.eval;
  double inv = halved ? 1.0 : 0.5;
  auto form = f.level_set_form;
  if (alpha == 0) {
    g.sup_value = f.sup_value * f.sup_value;
    g.eval = [base, inv](const Vec& x) {
      double v = base(x * inv);
      return v * v;
    };
    g.level_set_form = [form, stretch](double t) {
      return scale(form(std::sqrt(t)), stretch);
    };
  } else {
    double mass = alpha == kInf || alpha == -kInf ? 1.0 : std::pow(2.0, 1.0 / alpha);
    g.sup_value = mass * f.sup_value;
    g.eval = [base, inv, mass](const Vec& x) { return mass * base(x * inv); };
    g.level_set_form = [form, stretch](double t) { return scale(form(t), stretch); };
  }
  return g;
}

}  // namespace

SConcaveFunction delta_function(const SConcaveFunction& f, double alpha) {
  return make_delta(f, alpha, false);
}

SConcaveFunction delta_halved_function(const SConcaveFunction& f, double alpha) {
  return make_delta(f, alpha, true);
}

// ---- Ball bodies -----------------------------------------------------------

double ball_body_radial(const SConcaveFunction& f, int m, const Vec& u) {
  // ((m / sup) Int_0^inf r^{m-1} f(ru) dr)^{1/m}, tail cut where f < 1e-12 sup.
  if (f.family == FuncFamily::indicator)
    return section_radial(*f.body, Vec::zero(f.dim), u);  // moment integral collapses to rho_K
  double cut = f.effective_radius;
  auto integrand = [&f, &u, m](double r) { return std::pow(r, m - 1) * f.eval(u * r); };
  double integral = adaptive_simpson(integrand, 0.0, cut, 1e-10, 1e-300, 48);
  if (!std::isfinite(integral) || integral < 0)
    throw std::runtime_error("ball_body: divergent radial integral");
  return std::pow(static_cast<double>(m) / f.sup_value * integral, 1.0 / m);
}

ConvexBody ball_body(const SConcaveFunction& f, int m) {
  if (m < 1 || m > f.dim) throw std::invalid_argument("ball_body: need 1 <= m <= n");
  if (!(f.eval(Vec::zero(f.dim)) > 0)) throw std::invalid_argument("ball_body: f(0) must be positive");
  SConcaveFunction fc = f;
  if (fc.radial) {
    double rho = ball_body_radial(fc, m, Vec::axis(fc.dim, 0));
    return make_ball(fc.dim, rho);
  }
  int mm = m;
  ImplicitBody b;
  b.dim = f.dim;
  // Radial profile is bounded by the majorant along the widest direction.
  double rho_bound = 0;
  {
    Rng rng(0xba11);
    for (int i = 0; i < 64; ++i) rho_bound = std::max(rho_bound, ball_body_radial(fc, m, rng.on_sphere(fc.dim)));
    rho_bound = 2.0 * rho_bound + 1e-6;
    if (fc.family == FuncFamily::indicator) rho_bound = fc.body->norm_bound() + 1e-6;
  }
  b.bound = rho_bound;
  b.interior_point = Vec::zero(f.dim);
  b.member = [fc, mm](const Vec& x) {
    double r = norm(x);
    if (r <= 1e-14) return true;
    return r <= ball_body_radial(fc, mm, x * (1.0 / r)) + 1e-12;
  };
  b.describe = "ballbody_K" + std::to_string(m) + "(" + f.name + ")";
  return ConvexBody(std::move(b));
}

ConvexBody level_body_Lm(const SConcaveFunction& f, int m) {
  if (m < 1) throw std::invalid_argument("level_body_Lm: m >= 1");
  return level_set(f, std::exp(-static_cast<double>(m)));
}

// ---- lifted bodies ------------------------------------------------------------

ConvexBody lift_A(const SConcaveFunction& f, int s) {
  if (s < 1) throw std::invalid_argument("lift_A: s must be a positive integer");
  if (f.dim + s > kMaxDim) throw std::invalid_argument("lift_A: lifted dimension too large");
  SConcaveFunction fc = f;
  int n = f.dim;
  ImplicitBody b;
  b.dim = n + s;
  double ymax = std::pow(f.sup_value, 1.0 / s);
  b.bound = std::sqrt(f.effective_radius * f.effective_radius + ymax * ymax) + 1.0;
  b.interior_point = Vec::zero(n + s);
  double si = s;
  b.member = [fc, n, si](const Vec& xy) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = xy[i];
    double fx = fc.eval(x);
    if (fx <= 0) return false;
    double y2 = 0;
    for (int i = n; i < xy.dim(); ++i) y2 += xy[i] * xy[i];
    return std::sqrt(y2) <= std::pow(fx, 1.0 / si) * (1.0 + 1e-12) + 1e-15;
  };
  double xr = f.effective_radius;
  b.support_hint = [n, xr, ymax](const Vec& u) {
    double sx = 0, sy = 0;
    for (int i = 0; i < u.dim(); ++i)
      (i < n ? sx : sy) += u[i] * u[i];
    return xr * std::sqrt(sx) + ymax * std::sqrt(sy);
  };
  b.describe = "lift_A(" + f.name + ", s=" + std::to_string(s) + ")";
  return ConvexBody(std::move(b));
}

ConvexBody lift_B(const SConcaveFunction& f, int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("lift_B: p, q >= 1 required");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("lift_B: p/q must be in lowest terms");
  int n = f.dim;
  if (n * q + p > kMaxDim) throw std::invalid_argument("lift_B: lifted dimension too large");
  SConcaveFunction fc = f;
  ImplicitBody b;
  b.dim = n * q + p;
  double ymax = std::pow(f.sup_value, static_cast<double>(q) / p);
  b.bound = std::sqrt(q * f.effective_radius * f.effective_radius + ymax * ymax) + 1.0;
  b.interior_point = Vec::zero(b.dim);
  int pp = p, qq = q;
  b.member = [fc, n, pp, qq](const Vec& xy) {
    double prod = 1.0;
    for (int i = 0; i < qq; ++i) {
      Vec xi(n);
      for (int j = 0; j < n; ++j) xi[j] = xy[i * n + j];
      double fx = fc.eval(xi);
      if (fx <= 0) return false;
      prod *= std::pow(fx, 1.0 / pp);
    }
    double y2 = 0;
    for (int i = n * qq; i < xy.dim(); ++i) y2 += xy[i] * xy[i];
    return std::sqrt(y2) <= prod * (1.0 + 1e-12) + 1e-15;
  };
  b.describe = "lift_B(" + f.name + ", s=" + std::to_string(p) + "/" + std::to_string(q) + ")";
  return ConvexBody(std::move(b));
}

double lift_sum_radius(const SConcaveFunction& f, int s, const Vec& x, const DeltaConfig& cfg) {
  // Both pieces of the decomposition must sit inside supp(f); otherwise the
  // fiber over x is empty and the radius is zero.
  auto objective = [&f, &x, s](const Vec& x1) {
    double a = f.eval(x1), b = f.eval(x1 - x);
    if (a <= 0 || b <= 0) return 0.0;
    return std::pow(a, 1.0 / s) + std::pow(b, 1.0 / s);
  };
  double radius = 0.5 * norm(x) + f.effective_radius;
  std::vector<Vec> starts = {x * 0.5, x, Vec::zero(f.dim)};
  Rng rng(derive_seed(cfg.seed, 0x11f7));
  while (static_cast<int>(starts.size()) < cfg.restarts)
    starts.push_back(x * 0.5 + rng.on_sphere(f.dim) * (radius * rng.uniform()));
  double best = 0;
  for (const Vec& s0 : starts) {
    auto [arg, val] = pattern_search_max(objective, s0, std::max(0.25 * radius, 1e-3), cfg.step_tol,
                                         cfg.value_tol, cfg.max_iters);
    (void)arg;
    best = std::max(best, val);
  }
  return best;
}

}  // namespace rsm
