// Acceptance suite driver: one PASS/FAIL line per criterion.
#include <algorithm>
#include <iostream>
#include <thread>

#include "xishift/selftest.hpp"

int main() {
  xishift::AcceptanceOptions opts;
  opts.jobs = static_cast<int>(std::clamp(std::thread::hardware_concurrency(), 1u, 8u));
  const auto results = xishift::run_acceptance(std::cout, opts);
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return passed == static_cast<long>(results.size()) ? 0 : 1;
}
