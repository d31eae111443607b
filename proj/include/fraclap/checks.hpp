#pragma once

#include <string>
#include <vector>

namespace fraclap {

/// One named pass/fail item of a validation report.
struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  bool skipped = false;
  std::string detail;
};

struct CheckReport {
  std::vector<Check> checks;

  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const CheckReport& other);
  bool passed() const;
  /// Names of the failed checks, in order.
  std::vector<std::string> failures() const;
  /// {"passed": bool, "checks": [{"name", "passed", "skipped", "measured", "tolerance", "detail"}]}
  std::string to_json(int indent = 2) const;
};

}  // namespace fraclap
