#include "covlie/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace covlie {

unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("COVLIE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = static_cast<unsigned>(std::min<long>(v, 64));
  }
  return std::min(hw, 64u);
}

void SweepOutcome::merge(const SweepOutcome& other) {
  checked += other.checked;
  if (other.first_fail >= 0 &&
      (first_fail < 0 || other.first_fail < first_fail)) {
    first_fail = other.first_fail;
    witness = other.witness;
  }
}

SweepOutcome run_sweep(
    long long total,
    const std::function<std::optional<std::string>(long long)>& probe) {
  SweepOutcome result;
  if (total <= 0) return result;

  unsigned workers = worker_count();
  if (static_cast<long long>(workers) > total)
    workers = static_cast<unsigned>(total);

  auto scan = [&probe](long long begin, long long end) {
    SweepOutcome part;
    for (long long i = begin; i < end; ++i) {
      ++part.checked;
      if (auto w = probe(i)) {
        part.first_fail = i;
        part.witness = *w;
        break;
      }
    }
    return part;
  };

  if (workers <= 1) return scan(0, total);

  std::vector<SweepOutcome> parts(workers);
  std::vector<std::thread> threads;
  long long chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    long long begin = static_cast<long long>(w) * chunk;
    long long end = std::min(total, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, w, begin, end] { parts[w] = scan(begin, end); });
  }
  for (auto& t : threads) t.join();
  for (const auto& part : parts) result.merge(part);
  return result;
}

}  // namespace covlie
