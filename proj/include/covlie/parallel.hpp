#pragma once

#include <functional>
#include <optional>
#include <string>

namespace covlie {

/// Number of sweep workers. Honors the COVLIE_THREADS environment variable,
/// otherwise uses the hardware concurrency, clamped to [1, 64].
unsigned worker_count();

/// Outcome of an exhaustive index sweep. Failures are merged by lowest index,
/// so the reported witness does not depend on how the range was partitioned.
struct SweepOutcome {
  long long checked = 0;
  long long first_fail = -1;
  std::string witness;

  bool ok() const { return first_fail < 0; }
  void merge(const SweepOutcome& other);
};

/// Runs `probe` over [0, total) in parallel chunks. `probe(idx)` returns
/// an empty optional on success and a witness string on failure. Each chunk
/// scans in order and stops at its first failure.
SweepOutcome run_sweep(long long total,
                       const std::function<std::optional<std::string>(long long)>& probe);

}  // namespace covlie
