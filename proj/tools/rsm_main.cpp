// Command-line front end: run verification suites, one-off estimates, and
// the check catalog listing.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rsm/checks.hpp"
#include "rsm/parallel.hpp"
#include "rsm/quadrature.hpp"
#include "rsm/suite.hpp"

namespace {

using namespace rsm;

Vec parse_point(const std::string& text, int expect_dim = -1) {
  std::istringstream is(text);
  std::vector<double> xs;
  double v;
  while (is >> v) xs.push_back(v);
  if (xs.empty()) throw std::invalid_argument("expected coordinates, got '" + text + "'");
  if (expect_dim > 0 && static_cast<int>(xs.size()) != expect_dim)
    throw std::invalid_argument("expected " + std::to_string(expect_dim) + " coordinates");
  return Vec::from(xs);
}

void ensure_parent_dir(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

int cmd_verify(const std::string& suite_path, uint64_t seed_override, int64_t samples_override,
               const std::string& out_override, const std::string& summary_override, int threads) {
  SuiteConfig cfg;
  try {
    cfg = parse_suite_file(suite_path);
  } catch (const std::exception& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  }
  if (seed_override) {
    cfg.seed = seed_override;
    for (auto& c : cfg.cases) {
      c.estimator.seed = derive_seed(cfg.seed, fnv1a64(c.label));
      c.sup.seed = derive_seed(c.estimator.seed, 0x05f5);
    }
  }
  if (samples_override > 0)
    for (auto& c : cfg.cases) c.estimator.samples = samples_override;
  if (!out_override.empty()) cfg.out = out_override;
  if (!summary_override.empty()) cfg.summary = summary_override;
  if (threads >= 0) cfg.threads = threads;

  try {
    SuiteResult result = run_suite(cfg);
    ensure_parent_dir(cfg.out);
    ensure_parent_dir(cfg.summary);
    std::ofstream jout(cfg.out);
    std::ofstream sout(cfg.summary);
    if (!jout || !sout) {
      std::cerr << "cannot open report outputs\n";
      return 3;
    }
    sout << report_csv_header() << "\n";
    int pass = 0, viol = 0, fail = 0, inc = 0;
    for (const CheckReport& r : result.reports) {
      jout << report_json_line(r) << "\n";
      sout << report_csv_line(r) << "\n";
      std::cout << report_console_line(r) << "\n";
      if (r.verdict == "pass")
        ++pass;
      else if (r.verdict == "expected_violation")
        ++viol;
      else if (r.verdict == "inconclusive")
        ++inc;
      else
        ++fail;
    }
    std::cout << "----\n"
              << result.reports.size() << " checks: " << pass << " pass, " << viol
              << " expected violations, " << fail << " fail, " << inc << " inconclusive\n"
              << "reports: " << cfg.out << ", " << cfg.summary << "\n";
    return result.exit_code;
  } catch (const std::exception& ex) {
    std::cerr << "runtime error: " << ex.what() << "\n";
    return 3;
  }
}

void print_estimate(const Estimate& e) {
  std::cout.precision(10);
  std::cout << e.value << " +- " << e.std_error;
  if (e.truncation_bound > 0) std::cout << " (truncation <= " << e.truncation_bound << ")";
  std::cout << "  [" << e.method << ", " << e.samples_used << " samples]\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convex-geometry marginal-inequality lab"};
  app.require_subcommand(1);
  int threads = -1;
  app.add_option("--threads", threads, "worker threads (0 = hardware); never changes results");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite_path, out_override, summary_override;
  uint64_t seed_override = 0;
  int64_t samples_override = 0;
  verify->add_option("--suite", suite_path, "suite config file")->required();
  verify->add_option("--seed", seed_override, "override the global seed");
  verify->add_option("--samples", samples_override, "override per-case sample counts");
  verify->add_option("--out", out_override, "JSON-lines output path");
  verify->add_option("--summary", summary_override, "CSV summary path");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "one-off estimate");
  std::string kind, body_text, density_text = "lebesgue", function_text, subspace_text = "";
  std::string point_text, shift_text;
  int n = 2;
  double alpha = 0;
  int64_t samples = 1 << 18;
  uint64_t seed = 1;
  bool diff = false;
  std::string method_text = "box_mc";
  estimate->add_option("kind", kind, "volume | section | marginal | delta")->required();
  estimate->add_option("--body", body_text, "body record, e.g. 'simplex 2'");
  estimate->add_option("--function", function_text, "function record, e.g. 'gaussian'");
  estimate->add_option("--density", density_text, "density record (default lebesgue)");
  estimate->add_option("--subspace", subspace_text, "'axes 0 1' or 'random m seed'");
  estimate->add_option("--n", n, "ambient dimension for function inputs");
  estimate->add_option("--alpha", alpha, "difference-function exponent");
  estimate->add_option("--point", point_text, "evaluation point");
  estimate->add_option("--shift", shift_text, "plane offset / translate");
  estimate->add_option("--samples", samples, "sample budget");
  estimate->add_option("--seed", seed, "estimator seed");
  estimate->add_option("--method", method_text, "box_mc | polar | layer_cake");
  estimate->add_flag("--diff", diff, "use the difference body K - K");

  // list-checks
  auto* list = app.add_subcommand("list-checks", "print the check catalog");

  CLI11_PARSE(app, argc, argv);
  if (threads >= 0) rsm::set_thread_count(threads);

  if (list->parsed()) {
    const auto& entries = check_catalog();
    for (const auto& e : entries) {
      std::cout << check_id_name(e.id) << "\n  bound: " << e.bound
                << "\n  hypotheses: " << e.hypotheses << "\n";
    }
    std::cout << "----\n" << entries.size() << " checks\n";
    return 0;
  }
  if (verify->parsed()) {
    return cmd_verify(suite_path, seed_override, samples_override, out_override, summary_override,
                      threads);
  }

  // estimate
  try {
    EstimatorConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.method = parse_method(method_text);
    if (kind == "volume") {
      ConvexBody K = parse_body(body_text);
      if (diff) K = difference_body(K);
      print_estimate(estimate_volume(K, cfg));
      return 0;
    }
    if (kind == "section") {
      ConvexBody K = parse_body(body_text);
      if (diff) K = difference_body(K);
      int nn = K.dim();
      Subspace H = subspace_text.empty() ? Subspace::axes(nn, {0})
                                         : [&] {
                                             SuiteConfig tmp;  // reuse the suite subspace grammar
                                             (void)tmp;
                                             std::istringstream is(subspace_text);
                                             std::string kind2;
                                             is >> kind2;
                                             if (kind2 == "axes") {
                                               std::vector<int> axes;
                                               int a;
                                               while (is >> a) axes.push_back(a);
                                               return Subspace::axes(nn, axes);
                                             }
                                             int m;
                                             uint64_t sd;
                                             if (kind2 == "random" && (is >> m >> sd))
                                               return Subspace::random(nn, m, sd);
                                             throw std::invalid_argument("bad --subspace");
                                           }();
      Vec y = shift_text.empty() ? Vec::zero(nn) : parse_point(shift_text, nn);
      Density d = parse_density(density_text, nn);
      print_estimate(measure_section(K, H, y, d, cfg));
      return 0;
    }
    if (kind == "marginal") {
      SConcaveFunction f = parse_function(function_text, n);
      Subspace H = [&] {
        if (subspace_text.empty()) return Subspace::axes(n, {0});
        std::istringstream is(subspace_text);
        std::string kind2;
        is >> kind2;
        if (kind2 == "axes") {
          std::vector<int> axes;
          int a;
          while (is >> a) axes.push_back(a);
          return Subspace::axes(n, axes);
        }
        int m;
        uint64_t sd;
        if (kind2 == "random" && (is >> m >> sd)) return Subspace::random(n, m, sd);
        throw std::invalid_argument("bad --subspace");
      }();
      Density d = parse_density(density_text, n);
      Vec y = shift_text.empty() ? Vec::zero(n) : parse_point(shift_text, n);
      EstimatorConfig mcfg = cfg;
      if (mcfg.method == Method::box_mc && f.level_set_form) mcfg.method = Method::layer_cake;
      print_estimate(integrate_function_section(f, H, y, d, mcfg));
      return 0;
    }
    if (kind == "delta") {
      SConcaveFunction f = parse_function(function_text, n);
      Vec x = parse_point(point_text, n);
      DeltaValue v = delta_alpha(f, alpha, x);
      std::cout.precision(10);
      std::cout << v.value << " +- 0";
      if (!v.converged) std::cout << "  [non-converged restarts]";
      std::cout << "  [" << (v.closed_form ? "closed_form" : "search") << "]\n";
      return 0;
    }
    std::cerr << "unknown estimate kind '" << kind << "'\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
