// Acceptance suite: one pass/fail line per criterion, every tolerance pinned here.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace xishift {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  nlohmann::json data = nlohmann::json::object();
};

struct AcceptanceOptions {
  int jobs = 1;
  std::uint64_t seed = 20240601;
};

namespace tol {
inline constexpr double kXiZero = 1e-12;
inline constexpr double kCountC = 1.0;          // fitted; largest observed ratio 0.742 at T = 50
inline constexpr double kCountCeiling = 5.0;
inline constexpr double kPhaseCountSlack = 2.0;
inline constexpr double kMeanSpacing = 0.05;
inline constexpr double kConsecutiveMean = 0.1;
inline constexpr double kDirichletReal = 1e-8;
inline constexpr double kRhBound = 1.51;
inline constexpr double kRhHalfC = 0.5;         // fitted; largest observed ratio 0.443 at T = 50
}  // namespace tol

/// Upper bound for the sum of gamma^-2 over zeta zeros with gamma > T, from
/// N(t) = (t/2 pi) log(t/2 pi e) + 7/8 + E(t), |E(t)| <= 0.137 log t + 0.443 log log t + 4.350.
double zero_tail_sum_bound(double T);

CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});
/// Runs criteria 1..11, printing one line each; returns all results.
std::vector<CriterionResult> run_acceptance(std::ostream& os, const AcceptanceOptions& opts = {});

}  // namespace xishift
