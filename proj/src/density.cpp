#include "rsm/density.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rsm/rng.hpp"

namespace rsm {

double Density::translate_search_radius(double body_bound) const {
  if (search_radius) return search_radius(body_bound);
  if (std::isfinite(support_radius)) return body_bound + support_radius;
  return 2.0 * body_bound + 1.0;
}

Density make_density(DensityFamily family, int n, const DensityParams& params) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("make_density: bad dimension");
  Density d;
  d.dim = n;
  switch (family) {
    case DensityFamily::lebesgue: {
      d.eval = [](const Vec&) { return 1.0; };
      d.attr = {true, true, true, true, std::nullopt, 1.0};
      d.name = "lebesgue";
      return d;
    }
    case DensityFamily::gaussian: {
      double sigma = params.sigma;
      if (!(sigma > 0)) throw std::invalid_argument("make_density: gaussian needs sigma > 0");
      double inv = 1.0 / (2.0 * sigma * sigma);
      d.eval = [inv](const Vec& x) { return std::exp(-norm2(x) * inv); };
      d.attr = {true, true, true, true, 0.0, 1.0};
      std::ostringstream os;
      os << "gaussian " << sigma;
      d.name = os.str();
      return d;
    }
    case DensityFamily::exponential: {
      d.eval = [](const Vec& x) { return std::exp(-norm(x)); };
      d.attr = {true, true, true, true, 0.0, 1.0};
      d.name = "exponential";
      return d;
    }
    case DensityFamily::power_law: {
      double beta = params.beta > 0 ? params.beta : 2.0 * n;
      if (!(beta > n)) throw std::invalid_argument("make_density: power_law needs beta > n");
      d.eval = [beta](const Vec& x) { return std::pow(1.0 + norm(x), -beta); };
      d.attr = {true, true, true, true, -beta, 1.0};
      std::ostringstream os;
      os << "power_law " << beta;
      d.name = os.str();
      return d;
    }
    case DensityFamily::body_indicator: {
      if (!params.body) throw std::invalid_argument("make_density: body_indicator needs a body");
      ConvexBody K = *params.body;
      if (K.dim() != n) throw std::invalid_argument("make_density: indicator body dimension mismatch");
      if (!fast_contains(K, Vec::zero(n)))
        throw std::invalid_argument("make_density: body_indicator needs 0 interior to K");
      bool even = true;  // verified by sampling below; only symmetric bodies qualify
      {
        Rng rng(0x1d1ca7);
        Vec lo, hi;
        bounding_box(K, lo, hi);
        for (int i = 0; i < 512 && even; ++i) {
          Vec x = rng.in_box(lo, hi);
          if (fast_contains(K, x) != fast_contains(K, -x)) even = false;
        }
      }
      d.eval = [K](const Vec& x) { return fast_contains(K, x) ? 1.0 : 0.0; };
      d.attr = {even, true, true, true, std::nullopt, 1.0};
      d.support_radius = K.norm_bound();
      d.name = "indicator " + serialize_body(K);
      return d;
    }
    case DensityFamily::wedge:
    case DensityFamily::wedge_pair: {
      if (n != 2) throw std::invalid_argument("make_density: wedge densities are planar (n = 2)");
      double k = params.k;
      if (!(k >= 1)) throw std::invalid_argument("make_density: wedge needs k >= 1");
      double angle = 1.0 / k;
      bool pair = family == DensityFamily::wedge_pair;
      auto in_wedge = [angle](double x0, double x1) {
        if (x0 == 0 && x1 == 0) return true;
        double theta = std::atan2(x1, x0);
        return theta >= 0.0 && theta <= angle;
      };
      d.eval = [in_wedge, pair](const Vec& x) {
        if (in_wedge(x[0], x[1])) return 1.0;
        if (pair && in_wedge(-x[0], -x[1])) return 1.0;
        return 0.0;
      };
      // The pair variant is even but loses quasi-concavity; the single wedge
      // is a convex cone (quasi-concave) but one-sided.
      d.attr = {pair, true, !pair, true, std::nullopt, 1.0};
      std::ostringstream os;
      os << (pair ? "wedge_pair " : "wedge ") << k;
      d.name = os.str();
      double kk = k;
      d.search_radius = [kk](double body_bound) { return 2.5 * kk * std::max(body_bound, 1e-3); };
      return d;
    }
    case DensityFamily::s_cone: {
      double s = params.s;
      if (!(s > 0)) throw std::invalid_argument("make_density: s_cone needs s > 0");
      d.eval = [s](const Vec& x) {
        double t = 1.0 - norm(x);
        return t > 0 ? std::pow(t, s) : 0.0;
      };
      d.attr = {true, true, true, true, s, 1.0};
      d.support_radius = 1.0;
      std::ostringstream os;
      os << "s_cone " << s;
      d.name = os.str();
      return d;
    }
    case DensityFamily::s_tail: {
      double s = params.s;
      if (!(s < 0 && s > -n)) throw std::invalid_argument("make_density: s_tail needs -n < s < 0");
      d.eval = [s](const Vec& x) { return std::pow(1.0 + norm(x), s); };
      d.attr = {true, true, true, true, s, 1.0};
      std::ostringstream os;
      os << "s_tail " << s;
      d.name = os.str();
      return d;
    }
  }
  throw std::invalid_argument("make_density: unknown family");
}

Density parse_density(const std::string& text, int n) {
  std::istringstream is(text);
  std::string fam;
  is >> fam;
  DensityParams p;
  if (fam == "lebesgue") return make_density(DensityFamily::lebesgue, n);
  if (fam == "gaussian") {
    if (!(is >> p.sigma)) p.sigma = 1.0;
    return make_density(DensityFamily::gaussian, n, p);
  }
  if (fam == "exponential") return make_density(DensityFamily::exponential, n);
  if (fam == "power_law") {
    if (!(is >> p.beta)) p.beta = 0.0;
    return make_density(DensityFamily::power_law, n, p);
  }
  if (fam == "indicator") {
    std::string rest;
    std::getline(is, rest);
    p.body = parse_body(rest);
    return make_density(DensityFamily::body_indicator, n, p);
  }
  if (fam == "wedge" || fam == "wedge_pair") {
    if (!(is >> p.k)) throw std::invalid_argument("parse_density: wedge needs k");
    return make_density(fam == "wedge" ? DensityFamily::wedge : DensityFamily::wedge_pair, n, p);
  }
  if (fam == "s_cone") {
    if (!(is >> p.s)) throw std::invalid_argument("parse_density: s_cone needs s");
    return make_density(DensityFamily::s_cone, n, p);
  }
  if (fam == "s_tail") {
    if (!(is >> p.s)) throw std::invalid_argument("parse_density: s_tail needs s");
    return make_density(DensityFamily::s_tail, n, p);
  }
  throw std::invalid_argument("parse_density: unknown family '" + fam + "'");
}

std::vector<AttributeViolation> validate_attributes(const Density& d, int samples, uint64_t seed,
                                                    double box_radius) {
  if (samples < 1) throw std::invalid_argument("validate_attributes: samples >= 1");
  std::vector<AttributeViolation> out;
  Rng rng(derive_seed(seed, 0xa77b));
  const double tol = 1e-9;
  Vec lo = Vec::zero(d.dim), hi = Vec::zero(d.dim);
  for (int i = 0; i < d.dim; ++i) {
    lo[i] = -box_radius;
    hi[i] = box_radius;
  }
  auto record = [&out](const char* what, const Vec& w, const Vec& w2, double l, double r) {
    out.push_back({what, w, w2, l, r});
  };
  if (d.attr.max_at_origin && std::abs(d(Vec::zero(d.dim)) - d.attr.sup_value) > tol)
    record("max_at_origin", Vec::zero(d.dim), Vec::zero(d.dim), d(Vec::zero(d.dim)), d.attr.sup_value);

  // Draw a point inside the support; falls back to an unconditioned draw
  // when the support is thin (the conditioned tests then skip the pair).
  auto draw_in_support = [&](Vec& x) {
    for (int tries = 0; tries < 64; ++tries) {
      x = rng.in_box(lo, hi);
      if (d(x) > 0) return true;
    }
    return false;
  };

  bool bad_even = false, bad_rad = false, bad_qc = false, bad_sup = false, bad_sclass = false,
       bad_finite = false;
  for (int i = 0; i < samples; ++i) {
    Vec x = rng.in_box(lo, hi);
    double fx = d(x);
    if (!bad_finite && (!std::isfinite(fx) || fx < 0)) {
      bad_finite = true;
      record("finite_nonnegative", x, x, fx, 0.0);
    }
    if (!bad_sup && fx > d.attr.sup_value + tol) {
      bad_sup = true;
      record("sup_value", x, x, fx, d.attr.sup_value);
    }
    if (d.attr.even && !bad_even) {
      Vec xs = x;
      if (fx == 0.0) draw_in_support(xs);  // seek the support before mirroring
      double v = d(xs);
      if (std::abs(v - d(-xs)) > tol * std::max(1.0, std::abs(v))) {
        bad_even = true;
        record("even", xs, -xs, v, d(-xs));
      }
    }
    if (d.attr.radially_decreasing && !bad_rad) {
      double t = rng.uniform();
      double fs = d(x * t);
      if (fs < fx - tol) {
        bad_rad = true;
        record("radially_decreasing", x * t, x, fs, fx);
      }
    }
    if ((d.attr.quasiconcave || d.attr.s_class) && !(bad_qc && bad_sclass)) {
      // Midpoint tests need both endpoints inside the support to bite.
      Vec a, b;
      if (!draw_in_support(a) || !draw_in_support(b)) continue;
      double fa = d(a), fb = d(b);
      double fm = d((a + b) * 0.5);
      if (d.attr.quasiconcave && !bad_qc && fm < std::min(fa, fb) - tol) {
        bad_qc = true;
        record("quasiconcave", a, b, fm, std::min(fa, fb));
      }
      if (d.attr.s_class && !bad_sclass) {
        double s = *d.attr.s_class;
        if (s != 0) {
          double want = 0.5 * std::pow(fa, 1.0 / s) + 0.5 * std::pow(fb, 1.0 / s);
          double got = fm > 0 ? std::pow(fm, 1.0 / s) : (s > 0 ? 0.0 : 1e300);
          bool ok = s > 0 ? got >= want - 1e-7 : got <= want + 1e-7;
          if (!ok) {
            bad_sclass = true;
            record("s_class", a, b, got, want);
          }
        } else if (fm + 1e-12 < std::sqrt(fa * fb) * (1.0 - 1e-9)) {
          bad_sclass = true;
          record("s_class", a, b, fm, std::sqrt(fa * fb));
        }
      }
    }
  }
  return out;
}

Density product_density(const std::vector<Density>& factors) {
  if (factors.empty()) throw std::invalid_argument("product_density: empty");
  int total = 0;
  for (const auto& f : factors) total += f.dim;
  if (total > kMaxDim) throw std::invalid_argument("product_density: dimension too large");
  Density d;
  d.dim = total;
  std::vector<Density> fs = factors;
  d.eval = [fs, total](const Vec& x) {
    double prod = 1.0;
    int off = 0;
    for (const auto& f : fs) {
      Vec xi(f.dim);
      for (int i = 0; i < f.dim; ++i) xi[i] = x[off + i];
      prod *= f.eval(xi);
      if (prod == 0.0) return 0.0;
      off += f.dim;
    }
    return prod;
  };
  bool even = true, rad = true, origin = true, logc = true;
  double sup = 1.0, srad = 0.0;
  for (const auto& f : factors) {
    even = even && f.attr.even;
    rad = rad && f.attr.radially_decreasing;
    origin = origin && f.attr.max_at_origin;
    logc = logc && f.attr.s_class.has_value() && *f.attr.s_class >= 0;
    sup *= f.attr.sup_value;
    srad = std::max(srad, f.support_radius);
  }
  // Products of log-concave factors stay log-concave (hence quasi-concave);
  // general quasi-concavity does not survive products.
  d.attr = {even, rad, logc, origin, logc ? std::optional<double>(0.0) : std::nullopt, sup};
  d.support_radius = std::isfinite(srad) ? srad * std::sqrt(static_cast<double>(factors.size()))
                                         : srad;
  std::string name = "product(";
  for (size_t i = 0; i < factors.size(); ++i) name += (i ? ", " : "") + factors[i].name;
  d.name = name + ")";
  return d;
}

Density lift_density(const Density& base, int extra) {
  if (extra < 0 || base.dim + extra > kMaxDim) throw std::invalid_argument("lift_density: bad extra");
  Density d;
  d.dim = base.dim + extra;
  Density b = base;
  int n = base.dim;
  d.eval = [b, n](const Vec& x) {
    Vec head(n);
    for (int i = 0; i < n; ++i) head[i] = x[i];
    return b.eval(head);
  };
  d.attr = base.attr;  // phi(tx) >= phi(x) and evenness survive the lift
  d.support_radius = std::numeric_limits<double>::infinity();
  d.name = "lift(" + base.name + ", +" + std::to_string(extra) + ")";
  return d;
}

}  // namespace rsm
