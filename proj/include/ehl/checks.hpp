#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ehl/ehl_core.hpp"
#include "ehl/model_spec.hpp"

namespace ehl {

enum class CheckSuite {
  all,
  purity,
  pure_sum,
  odd_omega,
  reconstruction,
  coarse_graining,
  growth,
  factorization,
  gaussian_relations,
};

CheckSuite parse_suite(std::string_view name);

struct CheckTolerances {
  double identity = kIdentityTol;
  double reconstruction = kReconstructionTol;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// Runs the identity checks applicable to the given state. A named suite other
// than `all` restricts to that single check; asking for a check the state
// cannot support (for instance gaussian-relations on a GHZ state) is an input
// error, while under `all` inapplicable checks are simply omitted.
CheckReport run_checks(CheckSuite suite, const ModelSpec& spec, const CheckTolerances& tol = {},
                       int jobs = 1);

}  // namespace ehl
