#include "rsm/suite.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "rsm/parallel.hpp"
#include "rsm/quadrature.hpp"
#include "rsm/rng.hpp"

namespace rsm {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw std::invalid_argument("suite config line " + std::to_string(line) + ": " + what);
}

int64_t to_int(const std::string& v, int line) {
  try {
    size_t pos = 0;
    int64_t r = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return r;
  } catch (...) {
    parse_fail(line, "expected an integer, got '" + v + "'");
  }
}

double to_real(const std::string& v, int line) {
  if (v == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    size_t pos = 0;
    double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return r;
  } catch (...) {
    parse_fail(line, "expected a number, got '" + v + "'");
  }
}

SubspaceSpec parse_subspace_value(const std::string& v, int line) {
  std::istringstream is(v);
  std::string kind;
  is >> kind;
  SubspaceSpec s;
  if (kind == "axes") {
    int a;
    while (is >> a) s.axes.push_back(a);
    if (s.axes.empty()) parse_fail(line, "subspace axes needs at least one index");
    return s;
  }
  if (kind == "random") {
    if (!(is >> s.m >> s.seed)) parse_fail(line, "subspace random needs '<m> <seed>'");
    return s;
  }
  parse_fail(line, "unknown subspace kind '" + kind + "' (use 'axes ...' or 'random m seed')");
}

void set_factor(std::vector<std::string>& list, size_t idx, const std::string& value) {
  if (list.size() <= idx) list.resize(idx + 1);
  list[idx] = value;
}

void set_factor(std::vector<SubspaceSpec>& list, size_t idx, const SubspaceSpec& value) {
  if (list.size() <= idx) list.resize(idx + 1);
  list[idx] = value;
}

// Keys accepted inside a [check ...] section.
bool apply_case_key(CaseSpec& c, const std::string& key, const std::string& value, int line) {
  if (key == "n") {
    c.n = static_cast<int>(to_int(value, line));
    return true;
  }
  if (key == "p") {
    c.p = static_cast<int>(to_int(value, line));
    return true;
  }
  if (key == "m") {
    // convenience: m for a single random subspace placed later
    parse_fail(line, "use 'subspace = axes ...' or 'subspace = random m seed' instead of 'm'");
  }
  if (key == "s") {
    c.s = to_real(value, line);
    return true;
  }
  if (key == "lift") {
    std::istringstream is(value);
    char slash;
    if (!(is >> c.lift_p >> slash >> c.lift_q) || slash != '/')
      parse_fail(line, "lift expects 'p/q'");
    return true;
  }
  if (key == "body") {
    c.body = value;
    return true;
  }
  if (key == "companion") {
    c.companions.push_back(value);
    return true;
  }
  if (key == "function") {
    c.function = value;
    return true;
  }
  if (key == "variant") {
    c.variant = value;
    return true;
  }
  if (key.rfind("density", 0) == 0) {
    std::string suffix = key.substr(7);
    size_t idx = suffix.empty() ? 0 : static_cast<size_t>(to_int(suffix, line)) - 1;
    set_factor(c.densities, idx, value);
    return true;
  }
  if (key.rfind("subspace", 0) == 0) {
    std::string suffix = key.substr(8);
    size_t idx = suffix.empty() ? 0 : static_cast<size_t>(to_int(suffix, line)) - 1;
    set_factor(c.subspaces, idx, parse_subspace_value(value, line));
    return true;
  }
  if (key == "seed") {
    c.estimator.seed = static_cast<uint64_t>(to_int(value, line));
    return true;
  }
  if (key == "samples") {
    c.estimator.samples = to_int(value, line);
    return true;
  }
  if (key == "inner") {
    c.estimator.inner_samples = to_int(value, line);
    return true;
  }
  if (key == "outer") {
    c.estimator.outer_points = to_int(value, line);
    return true;
  }
  if (key == "t_nodes") {
    c.estimator.t_nodes = static_cast<int>(to_int(value, line));
    return true;
  }
  if (key == "polar_dirs") {
    c.estimator.polar_dirs = static_cast<int>(to_int(value, line));
    return true;
  }
  if (key == "method") {
    c.estimator.method = parse_method(value);
    return true;
  }
  if (key == "restarts") {
    c.sup.restarts = static_cast<int>(to_int(value, line));
    return true;
  }
  return false;
}

}  // namespace

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

SuiteConfig parse_suite_text(const std::string& text) {
  SuiteConfig cfg;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  CaseSpec* current = nullptr;
  bool seed_explicit = false;
  std::vector<bool> case_seed_explicit;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') parse_fail(line, "unterminated section header");
      std::istringstream hs(s.substr(1, s.size() - 2));
      std::string word, id, label;
      hs >> word >> id;
      std::getline(hs, label);
      if (word != "check" || id.empty()) parse_fail(line, "section must be '[check <ID> <label>]'");
      CaseSpec c;
      try {
        c.check = parse_check_id(id);
      } catch (const std::exception& e) {
        parse_fail(line, e.what());
      }
      c.label = trim(label);
      if (c.label.empty()) c.label = id + "-" + std::to_string(cfg.cases.size() + 1);
      cfg.cases.push_back(c);
      case_seed_explicit.push_back(false);
      current = &cfg.cases.back();
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) parse_fail(line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty()) parse_fail(line, "empty key");
    if (!current) {
      if (key == "seed") {
        cfg.seed = static_cast<uint64_t>(to_int(value, line));
        seed_explicit = true;
      } else if (key == "samples") {
        cfg.samples = to_int(value, line);
      } else if (key == "t_nodes") {
        cfg.t_nodes = static_cast<int>(to_int(value, line));
      } else if (key == "threads") {
        cfg.threads = static_cast<int>(to_int(value, line));
      } else if (key == "out") {
        cfg.out = value;
      } else if (key == "summary") {
        cfg.summary = value;
      } else {
        parse_fail(line, "unknown global key '" + key + "'");
      }
      continue;
    }
    if (key == "seed") case_seed_explicit.back() = true;
    if (!apply_case_key(*current, key, value, line)) parse_fail(line, "unknown key '" + key + "'");
  }
  (void)seed_explicit;
  // Global overrides and derived per-case seeds.
  for (size_t i = 0; i < cfg.cases.size(); ++i) {
    CaseSpec& c = cfg.cases[i];
    if (!case_seed_explicit[i]) c.estimator.seed = derive_seed(cfg.seed, fnv1a64(c.label));
    if (cfg.samples) c.estimator.samples = *cfg.samples;
    if (cfg.t_nodes) c.estimator.t_nodes = *cfg.t_nodes;
    c.sup.seed = derive_seed(c.estimator.seed, 0x05f5);
  }
  return cfg;
}

SuiteConfig parse_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open suite file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_suite_text(buf.str());
}

SuiteResult run_suite(const SuiteConfig& config) {
  if (config.threads > 0) set_thread_count(config.threads);
  SuiteResult result;
  result.reports.resize(config.cases.size());
  // Cases are independent; each report lands in its own slot.
  parallel_for_slots(static_cast<int>(config.cases.size()),
                     [&](int i) { result.reports[i] = run_check(config.cases[i]); });
  for (const CheckReport& r : result.reports)
    if (r.verdict != "pass" && r.verdict != "expected_violation") result.exit_code = 1;
  return result;
}

std::string report_json_line(const CheckReport& rep) {
  nlohmann::ordered_json j;
  j["check"] = rep.check_id;
  j["label"] = rep.label;
  j["instance"] = rep.instance;
  j["seed"] = rep.seed;
  auto enc = [](const Estimate& e) {
    nlohmann::ordered_json o;
    o["value"] = e.value;
    o["std_error"] = e.std_error;
    o["method"] = e.method;
    o["truncation_bound"] = e.truncation_bound;
    o["samples_used"] = e.samples_used;
    return o;
  };
  j["lhs"] = enc(rep.lhs);
  j["rhs"] = enc(rep.rhs);
  j["constant"] = rep.constant;
  j["constant_exact"] = rep.constant_exact;
  j["ratio"] = rep.ratio;
  j["sigma_rel"] = rep.sigma_rel;
  j["realized_constant"] = rep.realized_constant;
  j["verdict"] = rep.verdict;
  nlohmann::ordered_json det;
  for (const auto& [k, v] : rep.details) det[k] = v;
  j["details"] = det;
  j["notes"] = rep.notes;
  j["timing"] = nlohmann::ordered_json{{"wall_ms", rep.wall_ms}};
  return j.dump();
}

std::string report_csv_header() { return "check,label,instance_hash,ratio,verdict"; }

std::string report_csv_line(const CheckReport& rep) {
  std::ostringstream os;
  os << rep.check_id << "," << rep.label << "," << std::hex << std::setw(16) << std::setfill('0')
     << fnv1a64(rep.instance) << std::dec << ",";
  os << std::setprecision(12) << rep.ratio << "," << rep.verdict;
  return os.str();
}

std::string report_console_line(const CheckReport& rep) {
  std::ostringstream os;
  os << std::left << std::setw(15) << rep.check_id << " " << std::setw(28) << rep.label << " ";
  os << "ratio=" << std::setw(12) << std::setprecision(5) << rep.ratio;
  os << " +-3s=" << std::setw(10) << std::setprecision(3) << 3 * rep.sigma_rel;
  os << " " << rep.verdict;
  return os.str();
}

}  // namespace rsm
