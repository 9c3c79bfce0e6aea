// Critical-line zeros of A_{h,theta} and B_{h,theta}: the phase-congruence
// method, a sign-change scan for h = 0, an argument-principle oracle and
// interlacing / counting checks.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "xishift/lfunctions.hpp"

namespace xishift {

enum class FunctionTag { A, B };

std::string to_string(FunctionTag tag);
FunctionTag parse_tag(const std::string& s);

/// One located zero 1/2 + i*ordinate. residual and derivative_est are in
/// units of the local envelope |E(1/2 + i*ordinate)|, so they read the same at
/// every height.
struct ZeroRecord {
  std::int64_t index = 0;
  double ordinate = 0.0;
  FunctionTag tag = FunctionTag::A;
  double residual = 0.0;
  double bracket_width = 0.0;
  double phase_value = 0.0;
  double derivative_est = 0.0;
  bool multiplicity_suspect = false;
};

struct CompletenessCertificate {
  std::int64_t phase_increment_count = 0;
  std::int64_t found_count = 0;
  [[nodiscard]] bool complete() const { return phase_increment_count == found_count; }
};

struct ZeroList {
  std::vector<ZeroRecord> records;
  double t_lo = 0.0;
  double t_hi = 0.0;
  DeformationParams params{0.0, 0.0};
  std::string target = "riemann";
  FunctionTag tag = FunctionTag::A;
  std::string method;  // "phase" or "scan"
  double anchor_t = 0.0;
  std::optional<CompletenessCertificate> certificate;

  [[nodiscard]] std::vector<double> ordinates() const;
  /// Zeros with lo < ordinate < hi.
  [[nodiscard]] std::int64_t count_between(double lo, double hi) const;
  [[nodiscard]] nlohmann::json summary_json() const;
};

struct ZeroSearchOptions {
  double residual_tol = 1e-8;
  double deriv_tol = 1e-6;
  double grid_scale = 0.5;     // base phase grid step is grid_scale / log(2 + |t|)
  double bracket_width = 1e-9;
  int jobs = 1;
};

/// Unwrapped phase samples covering [t_lo, t_hi], adaptive substeps included.
/// For h < 0 the samples are those of (|h|, -theta): on the critical line
/// A_{-h,theta} = A_{h,-theta} and B_{-h,theta} = -B_{h,-theta}.
struct PhaseGrid {
  LineEvaluator evaluator;
  DeformationParams params;     // parameters actually sampled (h > 0)
  DeformationParams requested;  // parameters asked for
  std::vector<PhasePoint> points;
  double anchor_t = 0.0;
};

/// Throws NonMonotonePhase if the phase drops by more than 1e-6 between
/// consecutive points.
void require_monotone_phase(const std::vector<PhasePoint>& points);

/// Samples phi_|h| over [t_lo, t_hi] in `jobs` independent intervals and
/// stitches them at shared seam points. Throws NonMonotonePhase through
/// require_monotone_phase; UnwrapError propagates from the tracker.
PhaseGrid scan_phase(const DeformationParams& params, const LFunctionTarget& target, double t_lo, double t_hi,
                     const EvalConfig& cfg = {}, const ZeroSearchOptions& opts = {});

/// Zeros of the tagged function from a phase grid: A solves
/// phi = pi/2 - theta (mod pi), B solves phi = -theta (mod pi).
ZeroList zeros_from_grid(const PhaseGrid& grid, FunctionTag tag, const ZeroSearchOptions& opts = {});

ZeroList locate_zeros_phase(const DeformationParams& params, const LFunctionTarget& target, double t_lo, double t_hi,
                            FunctionTag tag, const EvalConfig& cfg = {}, const ZeroSearchOptions& opts = {});

using LineFunction = std::function<double(double)>;

/// Sign-change scan of a real function on [t_lo, t_hi] with a uniform grid.
/// No completeness certificate is attached.
ZeroList locate_zeros_scan(const LineFunction& f, double t_lo, double t_hi, double grid_step,
                           const ZeroSearchOptions& opts = {});

/// The completed function on the critical line divided by its positive Gamma
/// envelope: same sign as xi(1/2 + it) (or its normalized Dirichlet analogue).
LineFunction critical_line_function(const LFunctionTarget& target, const EvalConfig& cfg = {});

using AnalyticFunction = std::function<cplx(cplx)>;

AnalyticFunction deformed_function(const DeformationParams& params, const LFunctionTarget& target, FunctionTag tag,
                                   const EvalConfig& cfg = {});

struct ArgumentPrincipleOptions {
  int quadrature_n = 64;      // trapezoid nodes per unit of contour length
  double fd_step = 1e-5;      // central-difference step for F'
  double min_distance = 1e-4; // zeros closer than this to the contour force a nudge
  int max_nudges = 5;
  int max_refinements = 4;
};

struct WindingResult {
  std::int64_t count = 0;
  double raw = 0.0;               // real part of (1/2 pi i) \oint F'/F
  double rounding_distance = 0.0;
  Rect contour{};
  int nudges = 0;
};

/// Winding number of F around rect by trapezoid quadrature of F'/F.
/// Throws ContourTooClose after max_nudges failed nudges.
WindingResult argument_principle(const AnalyticFunction& f, const Rect& rect, const ArgumentPrincipleOptions& opts = {});
std::int64_t argument_principle_count(const AnalyticFunction& f, const Rect& rect, int quadrature_n = 64);

struct InterlacingViolation {
  std::size_t position = 0;  // in the merged ordering
  FunctionTag tag = FunctionTag::A;
  std::int64_t index = 0;
  double ordinate = 0.0;
  std::string reason;
};

struct InterlacingReport {
  std::string phasing;  // "A-first" or "B-first"
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::vector<InterlacingViolation> violations;
  std::vector<std::pair<FunctionTag, std::int64_t>> multiplicity_suspects;

  [[nodiscard]] bool strict() const { return violations.empty(); }
  [[nodiscard]] bool simple() const { return multiplicity_suspects.empty(); }
  [[nodiscard]] bool pass() const { return strict() && simple(); }
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Checks strict alternation of the merged ordinates and the simplicity
/// threshold |derivative_est| > deriv_tol. Throws IncompatibleRanges when the
/// lists do not describe the same family on the same range.
InterlacingReport verify_interlacing(const ZeroList& a, const ZeroList& b, double deriv_tol = 1e-6);

struct CountReport {
  DeformationParams params{0.0, 0.0};
  std::string target;
  FunctionTag tag = FunctionTag::A;
  double T = 0.0;
  std::int64_t conductor = 1;
  std::int64_t n_zeros = 0;
  double main_term = 0.0;
  double error = 0.0;         // n_zeros - main_term
  double error_over_log = 0.0;
  double phase_count = 0.0;   // (phi(T) - phi(-T)) / pi
  bool complete = false;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// (1/pi) T log T - (1/pi)(log(2 pi / N) + 1) T.
double zero_count_main_term(double T, std::int64_t conductor = 1);

/// Counts zeros with |Im s| <= T by the phase method and compares with the main term.
CountReport count_zeros_compare(const DeformationParams& params, const LFunctionTarget& target, double T,
                                FunctionTag tag = FunctionTag::A, const EvalConfig& cfg = {},
                                const ZeroSearchOptions& opts = {});

/// CSV with header index,gamma,function_tag,h,theta,target,residual,
/// bracket_width,phase_value,derivative_est; 17 significant digits, LF endings.
void write_zero_csv(std::ostream& os, const ZeroList& zeros);

}  // namespace xishift
