#include "covlie/report.hpp"

namespace covlie {

bool VerificationReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return true;
}

void VerificationReport::add_pass(const std::string& name, long long tuples) {
  checks.push_back(CheckResult{name, "pass", tuples, std::nullopt});
}

void VerificationReport::add_fail(const std::string& name, long long tuples,
                                  const std::string& witness) {
  checks.push_back(CheckResult{name, "fail", tuples, witness});
}

void VerificationReport::add_skipped(const std::string& name, const std::string& reason) {
  CheckResult c{name, "skipped", 0, std::nullopt};
  c.witness = std::nullopt;
  c.name = name + " (" + reason + ")";
  checks.push_back(c);
}

void VerificationReport::absorb(const VerificationReport& other, const std::string& prefix) {
  for (auto c : other.checks) {
    if (!prefix.empty()) c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
}

}  // namespace covlie
