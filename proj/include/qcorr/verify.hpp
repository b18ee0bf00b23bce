#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qcorr/optimizer.hpp"

namespace qcorr {

struct CheckResult {
  std::string name;
  double measured = 0.0;   // residual or worst-case value
  double tolerance = 0.0;
  bool passed = false;
};

/// Built-in self checks: "paper-example", "bounds", "oracle", "identities" or
/// "all". Random states are drawn from `seed`. Throws ParamOutOfRange for an
/// unknown suite name.
std::vector<CheckResult> run_verification(const std::string& suite, std::uint64_t seed,
                                          const OptimizerConfig& config = {});

const std::vector<std::string>& verification_suites();

/// "[PASS] name  measured=... tol=..." per check.
void print_checks(const std::vector<CheckResult>& checks, std::ostream& out);

}  // namespace qcorr
