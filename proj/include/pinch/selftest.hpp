#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pinch {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  std::string detail;
};

struct SelftestOptions {
  std::uint64_t seed = 42;
  int trials = 0;  // 0: use the per-criterion defaults
  bool verbose = false;
};

// Runs the full verification battery (one result per criterion, the last one
// being the aggregate timing bound).
std::vector<CriterionResult> run_acceptance(const SelftestOptions& opts);

// 0 when every criterion passed, 1 otherwise.
int exit_code(const std::vector<CriterionResult>& results);

std::string format_result_line(const CriterionResult& r);

}  // namespace pinch
