// Acceptance battery: one pass/fail line per criterion; exit 0 iff all pass.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "pinch/selftest.hpp"

int main(int argc, char** argv) {
  pinch::SelftestOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (std::strcmp(argv[i], "--trials") == 0 && i + 1 < argc)
      opts.trials = std::atoi(argv[++i]);
  }
  auto results = pinch::run_acceptance(opts);
  for (const auto& r : results) std::printf("%s\n", pinch::format_result_line(r).c_str());
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return pinch::exit_code(results);
}
