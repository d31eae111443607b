#include "fraclap/checks.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace fraclap {

void CheckReport::append(const CheckReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool CheckReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<std::string> CheckReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

std::string CheckReport::to_json(int indent) const {
  // Non-finite measurements are written as null.
  auto number = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  nlohmann::json doc;
  doc["passed"] = passed();
  doc["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["skipped"] = c.skipped;
    item["measured"] = number(c.measured);
    item["tolerance"] = number(c.tolerance);
    if (!c.detail.empty()) item["detail"] = c.detail;
    doc["checks"].push_back(std::move(item));
  }
  return doc.dump(indent) + "\n";
}

}  // namespace fraclap
