#pragma once

#include <chrono>
#include <functional>
#include <string>

#include "parindex/io.hpp"
#include "parindex/lab.hpp"

namespace parindex::lab_detail {

// Runs body(i) for i < count, turning exceptions into failures and timing the whole loop.
// body returns an empty string on success, otherwise the failure message; it may set `witness`.
inline CheckResult run_instances(std::string name, std::size_t count, double time_limit,
                                 const std::function<std::string(std::size_t, std::string& witness)>& body) {
  CheckResult r;
  r.name = std::move(name);
  r.time_limit = time_limit;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < count; ++i) {
    std::string witness, message;
    try {
      message = body(i, witness);
    } catch (const std::exception& e) {
      message = std::string("exception: ") + e.what();
    }
    ++r.instances;
    if (!message.empty()) r.failures.push_back(CheckFailure{i, message, witness});
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

CheckResult solver_cross_oracle(const GenParams& p);
CheckResult evenness_decomposition(const GenParams& p);
CheckResult transduction_soundness(const GenParams& p, ResetRule reset);
CheckResult bounded_pair_completeness(const GenParams& p, ResetRule reset);
CheckResult strahler_completeness(const GenParams& p);
CheckResult bounded_pair_strahler(const GenParams& p);
CheckResult universal_trees(const GenParams& p);
CheckResult composition(const GenParams& p);
CheckResult guided_bound(const GenParams& p);
CheckResult mutation(const GenParams& p);

}  // namespace parindex::lab_detail
