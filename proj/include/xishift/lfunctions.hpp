// Completed L-functions, the deformation family E = e^{i theta} xi(s + h) = A - iB,
// continuous phase functions and the structure-function inequality.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "xishift/characters.hpp"
#include "xishift/numeric.hpp"

namespace xishift {

enum class Regime { undeformed, conditional_rh, unconditional };

std::string to_string(Regime r);

/// Shift h and rotation theta of the family E_{h,theta}; theta is kept in [0, 2 pi).
class DeformationParams {
 public:
  DeformationParams(double h, double theta);

  [[nodiscard]] double h() const { return h_; }
  [[nodiscard]] double theta() const { return theta_; }
  [[nodiscard]] Regime regime() const;
  [[nodiscard]] nlohmann::json to_json() const;

 private:
  double h_;
  double theta_;
};

/// Which completed function the family is built from.
class LFunctionTarget {
 public:
  enum class Kind { riemann, dirichlet };

  static LFunctionTarget riemann();
  /// Requires a primitive character. Fixes the unimodular constant that makes
  /// the completed function real on the critical line and checks it on a
  /// 16-point line grid; throws AccuracyError if the check fails.
  static LFunctionTarget dirichlet(const DirichletCharacter& chi, const EvalConfig& cfg = {});
  /// "riemann" or "dirichlet:q.label".
  static LFunctionTarget parse(const std::string& spec, const EvalConfig& cfg = {});

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::optional<DirichletCharacter>& character() const { return chi_; }
  [[nodiscard]] cplx normalization_phase() const { return phase_; }
  /// Conductor N entering the Gamma factor (1 for the Riemann target).
  [[nodiscard]] std::int64_t conductor() const;
  /// True when the completed function is real on the real axis as well,
  /// which makes its zero set symmetric under t -> -t.
  [[nodiscard]] bool conjugate_symmetric() const;
  [[nodiscard]] std::string spec() const;
  /// Target built from the conjugate character (identity for riemann).
  [[nodiscard]] LFunctionTarget conjugate() const;

 private:
  Kind kind_ = Kind::riemann;
  std::optional<DirichletCharacter> chi_;
  cplx phase_{1.0, 0.0};
};

/// The completed function at s split as exp(log_factor) * core. log_factor
/// collects the Gamma and pi-power factors (its imaginary part is continuous
/// along vertical lines with Re(s) > 0); core is (s-1) zeta(s) for the Riemann
/// target and epsilon L(s, chi) for Dirichlet targets. Only valid for
/// Re(s) >= 0; use completed() elsewhere.
struct CompletedParts {
  cplx log_factor;
  double log_factor_err = 0.0;
  ComplexValue core;
};

CompletedParts completed_parts(cplx s, const LFunctionTarget& target, const EvalConfig& cfg = {});

/// The entire completed function of the target: xi(s) for riemann,
/// epsilon (pi/N)^{-(s+k)/2} Gamma((s+k)/2) L(s, chi) for dirichlet.
ComplexValue completed(cplx s, const LFunctionTarget& target, const EvalConfig& cfg = {});

/// xi(s) = s(s-1)/2 pi^{-s/2} Gamma(s/2) zeta(s).
ComplexValue xi(cplx s, const EvalConfig& cfg = {});

/// Normalized completed Dirichlet L-function. For the trivial character mod 1
/// this is pi^{-s/2} Gamma(s/2) zeta(s) without the s(s-1)/2 polynomial and
/// throws PoleError at s = 0 and s = 1.
ComplexValue xi_chi(cplx s, const LFunctionTarget& target, const EvalConfig& cfg = {});

struct DeformedValue {
  ComplexValue E;
  ComplexValue A;
  ComplexValue B;
};

/// E(s) = e^{i theta} xi(s + h), A = (E + E#)/2, B = -(E - E#)/(2i) with
/// E#(s) = conj(E(1 - conj(s))).
DeformedValue deformed(cplx s, const DeformationParams& params, const LFunctionTarget& target,
                       const EvalConfig& cfg = {});

/// One evaluated point of the phase function on the line Re(s) = 1/2 + h.
struct PhasePoint {
  double t = 0.0;
  double gamma_part = 0.0;    // Im log_factor, continuous
  double core_arg = 0.0;      // principal argument of the core
  std::int64_t winding = 0;   // phase = gamma_part + core_arg + 2 pi winding
  double log_scale = 0.0;     // Re log_factor
  cplx core;

  [[nodiscard]] double phase() const { return gamma_part + core_arg + 2 * kPi * static_cast<double>(winding); }
};

/// Evaluates PhasePoints for fixed (h, target) without any unwrapping state.
class LineEvaluator {
 public:
  LineEvaluator(double h, LFunctionTarget target, EvalConfig cfg);

  /// Point at t with winding 0.
  [[nodiscard]] PhasePoint at(double t) const;
  /// Point at t unwrapped against a neighbouring point; throws UnwrapError if
  /// the core argument moved by pi/2 or more.
  [[nodiscard]] PhasePoint unwrap_near(double t, const PhasePoint& ref) const;

  [[nodiscard]] double h() const { return h_; }
  [[nodiscard]] const LFunctionTarget& target() const { return target_; }
  [[nodiscard]] const EvalConfig& config() const { return cfg_; }

 private:
  double h_;
  LFunctionTarget target_;
  EvalConfig cfg_;
};

/// Sequential unwrapping state for the phase function
///   phi_h(t) = Im log xi(1/2 + h + it),
/// anchored so that phi_h(0) = 0 for the Riemann target. Dirichlet targets
/// are anchored at the first of t = 0, 0.25, ..., 3.75 where the core
/// exceeds a tenth of its maximum over those points. Steps are halved until
/// the phase moves by less than pi/2; a step below 1e-6 raises UnwrapError.
class PhaseTracker {
 public:
  PhaseTracker(const DeformationParams& params, const LFunctionTarget& target, const EvalConfig& cfg = {});
  /// Starts from an already unwrapped point (used for interval-parallel scans).
  PhaseTracker(LineEvaluator evaluator, PhasePoint start);

  double advance_to(double t);
  [[nodiscard]] const PhasePoint& current() const { return current_; }
  [[nodiscard]] double anchor_t() const { return anchor_t_; }
  [[nodiscard]] const LineEvaluator& evaluator() const { return eval_; }

  /// When set, every accepted point (including adaptive substeps) is appended.
  void record_into(std::vector<PhasePoint>* sink) { sink_ = sink; }

  static constexpr double kMinStep = 1e-6;

 private:
  LineEvaluator eval_;
  PhasePoint current_;
  double anchor_t_ = 0.0;
  std::vector<PhasePoint>* sink_ = nullptr;
};

double phase(double t, PhaseTracker& tracker);
/// Convenience: a fresh tracker walked from the anchor to t.
double phase(double t, const DeformationParams& params, const LFunctionTarget& target, const EvalConfig& cfg = {});

/// Argument of pi^{-(1/4 + h/2 + it/2)} Gamma(1/4 + h/2 + it/2), zero at t = 0.
double gamma_phase(double t, double h, const EvalConfig& cfg = {});

struct Rect {
  double re_lo, re_hi, im_lo, im_hi;
  [[nodiscard]] nlohmann::json to_json() const;
};

struct StructureCheckOptions {
  int grid_n = 200;       // grid_n x grid_n lattice; 0 disables
  int random_n = 10000;   // uniform random samples
  std::uint64_t seed = 20240601;
  std::size_t max_listed_failures = 1000;
};

struct StructureSample {
  cplx s;
  double margin = 0.0;  // |E(h + s)| - |E(h + 1 - conj s)|
  double err = 0.0;     // combined absolute error of both moduli
};

struct CheckReport {
  DeformationParams params{0.0, 0.0};
  std::string target;
  Rect region{};
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t n_failures = 0;
  std::vector<StructureSample> failures;  // truncated to max_listed_failures
  double min_margin = 0.0;
  /// max over samples of |margin| / err; <= 1 means every margin is zero to within its error.
  double max_margin_to_err = 0.0;
  bool pass = false;

  [[nodiscard]] bool all_within_err() const { return max_margin_to_err <= 1.0; }
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Samples |xi(h + s)| > |xi(h + 1 - conj s)| over region (inside Re s > 1/2).
CheckReport structure_inequality_check(const DeformationParams& params, const LFunctionTarget& target,
                                       const Rect& region, const StructureCheckOptions& opts = {},
                                       const EvalConfig& cfg = {});

/// e^{-log 2} prod (1 - s/rho)(1 - s/conj rho) over rho = 1/2 + i gamma for the
/// given positive ordinates, each pair folded into ((s-1/2)^2 + g^2)/(1/4 + g^2).
ComplexValue hadamard_partial(cplx s, std::span<const double> ordinates);

}  // namespace xishift
