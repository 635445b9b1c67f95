#pragma once

// Seeded randomized checks of the calculus identities, grouped in suites.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slicecalc {

struct Check {
  std::string name;
  int samples = 0;
  double value = 0.0;
  /// Absent for informational entries.
  std::optional<double> bound;
  /// value <= bound when true, value >= bound otherwise.
  bool upper = true;
  bool pass = true;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  bool pass() const;
  /// Largest value among the upper-bounded checks.
  double max_residual() const;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool pass() const;
};

/// kernel, resolvent, spectrum, moments, planes, unbounded.
const std::vector<std::string>& suite_names();

/// `suite` is one of suite_names() or "all". Each suite draws from its own
/// generator seeded with (seed, suite index), so a suite gives the same
/// numbers alone and inside "all".
VerifyReport run_verify(std::string_view suite, std::uint64_t seed);

nlohmann::ordered_json report_to_json(const VerifyReport& report);

}  // namespace slicecalc
