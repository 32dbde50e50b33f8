#pragma once

// The inequality catalog: one check per theorem, corollary, identity or
// counterexample, with statistical pass criteria and realized-constant
// reporting. Pass criterion: normalized ratio <= 1 + 3 sigma_rel, where
// sigma_rel combines both sides' standard errors in quadrature;
// counterexample checks invert the verdict logic.

#include <optional>
#include <string>
#include <vector>

#include "rsm/optimize.hpp"
#include "rsm/quad_types.hpp"
#include "rsm/vec.hpp"

namespace rsm {

enum class CheckId {
  RS,
  BM_LOWER,
  SCHNEIDER,
  SRRS,
  DP_KL,
  K_PLUS_L,
  RU_GOOD,
  RUDELSON_RATIO,
  QC_MARGINAL,
  LIFT_S,
  SANDWICH,
  SYM_BODIES,
  WEDGE,
  SANDWICH_S,
  BETA_S,
  LOGCONCAVE_KM,
  IDENTITIES,
  COLESANTI,
};

std::string check_id_name(CheckId id);
CheckId parse_check_id(const std::string& name);

struct CatalogEntry {
  CheckId id;
  std::string bound;       // the inequality or identity, in formula shorthand
  std::string hypotheses;  // what the instance must satisfy
};
const std::vector<CatalogEntry>& check_catalog();

// One subspace per factor: fixed coordinate axes or a seeded random frame.
struct SubspaceSpec {
  std::vector<int> axes;  // used when non-empty
  int m = 1;              // random frame dimension
  uint64_t seed = 1;
  Subspace resolve(int n) const;
  std::string describe() const;
};

struct CaseSpec {
  CheckId check = CheckId::RS;
  std::string label;
  int n = 2;
  int p = 1;                  // factor count for product-body checks
  double s = 0;               // concavity exponent where applicable
  int lift_p = 0, lift_q = 0; // rational s = p/q for the lifted route
  std::string body;           // serialized instance bodies
  std::vector<std::string> companions;
  std::string function;       // serialized f
  std::vector<std::string> densities;
  std::vector<SubspaceSpec> subspaces;
  std::string variant;        // check-specific switch (exact / grid / full / pair / ...)
  EstimatorConfig estimator;
  SupConfig sup;
};

struct CheckReport {
  std::string check_id;
  std::string label;
  std::string instance;   // replayable instance descriptor
  Estimate lhs, rhs;
  double constant = 1.0;
  std::string constant_exact;
  double ratio = 0;       // normalized; pass iff <= 1 + 3 sigma_rel
  double sigma_rel = 0;
  double realized_constant = 0;  // smallest constant tight on this instance
  std::string verdict;    // pass | fail | expected_violation | inconclusive
  uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> details;
  std::string notes;
  double wall_ms = 0;
};

CheckReport run_check(const CaseSpec& spec);

}  // namespace rsm
