#pragma once

#include <optional>
#include <string>
#include <vector>

namespace covlie {

/// One verified identity or structural property.
struct CheckResult {
  std::string name;
  std::string status = "pass";  // pass | fail | skipped
  long long tuple_count = 0;
  std::optional<std::string> witness;  // present iff status == fail

  bool passed() const { return status != "fail"; }
};

/// Structured pass/fail record for a verification suite.
struct VerificationReport {
  std::string suite;
  std::string group;
  int character = 1;
  std::optional<int> window;
  std::vector<CheckResult> checks;

  bool passed() const;
  void add_pass(const std::string& name, long long tuples);
  void add_fail(const std::string& name, long long tuples, const std::string& witness);
  void add_skipped(const std::string& name, const std::string& reason);
  void absorb(const VerificationReport& other, const std::string& prefix = "");
};

}  // namespace covlie
