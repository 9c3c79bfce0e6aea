#include "xishift/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "xishift/characters.hpp"
#include "xishift/lfunctions.hpp"
#include "xishift/special_fn.hpp"
#include "xishift/stats.hpp"
#include "xishift/zeros.hpp"

namespace xishift {

namespace {

CriterionResult make_result(int id, std::string title) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  return r;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct ZeroSuite {
  bool pass = true;
  std::ostringstream msg;
  nlohmann::json data;
};

// Certificates, residuals, brackets, simplicity and interlacing for one (h, theta),
// plus an argument-principle cross-check on n_rect random sub-rectangles.
ZeroSuite zero_suite(const DeformationParams& p, const LFunctionTarget& target, double T, int n_rect,
                     std::uint64_t seed, int jobs) {
  ZeroSuite out;
  ZeroSearchOptions so;
  so.jobs = jobs;
  const PhaseGrid grid = scan_phase(p, target, 0.0, T, {}, so);
  const ZeroList a = zeros_from_grid(grid, FunctionTag::A, so);
  const ZeroList b = zeros_from_grid(grid, FunctionTag::B, so);
  bool certs = a.certificate->complete() && b.certificate->complete();
  double max_res = 0.0, max_br = 0.0;
  for (const ZeroList* z : {&a, &b})
    for (const auto& r : z->records) {
      max_res = std::max(max_res, r.residual);
      max_br = std::max(max_br, r.bracket_width);
    }
  const InterlacingReport il = verify_interlacing(a, b, so.deriv_tol);
  const bool residuals = max_res <= so.residual_tol && max_br <= 1e-9;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lo_d(0.5, T - 10.0), len_d(1.0, 10.0);
  int ap_ok = 0;
  nlohmann::json rects = nlohmann::json::array();
  for (int k = 0; k < n_rect; ++k) {
    const double lo = lo_d(rng), hi = lo + len_d(rng);
    const FunctionTag tag = k % 2 == 0 ? FunctionTag::A : FunctionTag::B;
    const WindingResult w = argument_principle(deformed_function(p, target, tag), Rect{0.2, 0.8, lo, hi});
    const std::int64_t phase_n = (tag == FunctionTag::A ? a : b).count_between(w.contour.im_lo, w.contour.im_hi);
    ap_ok += w.count == phase_n ? 1 : 0;
    rects.push_back({{"tag", to_string(tag)}, {"im", {w.contour.im_lo, w.contour.im_hi}}, {"ap", w.count}, {"phase", phase_n}});
  }
  out.pass = certs && residuals && il.pass() && ap_ok == n_rect;
  out.msg << "h=" << p.h() << " theta=" << fmt("%.4f", p.theta()) << " [" << to_string(p.regime()) << "] nA=" << a.records.size()
          << " nB=" << b.records.size() << " cert=" << (certs ? "ok" : "BAD") << " max_res=" << fmt("%.1e", max_res)
          << " interlace=" << (il.strict() ? "strict" : "VIOLATED") << "(" << il.phasing << ")"
          << " simple=" << (il.simple() ? "yes" : "NO") << " ap=" << ap_ok << "/" << n_rect;
  out.data = {{"params", p.to_json()},        {"regime", to_string(p.regime())}, {"n_a", a.records.size()},
              {"n_b", b.records.size()},      {"certificates_complete", certs},  {"max_residual", max_res},
              {"max_bracket", max_br},         {"interlacing", il.to_json()},     {"argument_principle", rects}};
  return out;
}

CriterionResult c1(const AcceptanceOptions& o) {
  CriterionResult r = make_result(1, "exact anchors");
  const ComplexValue x0 = xi(cplx{0.0, 0.0});
  const double d0 = std::abs(x0.value() - 0.5);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> re(0.0, 1.0), im(-40.0, 40.0);
  int ok = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const cplx s{re(rng), im(rng)};
    const ComplexValue a = xi(s), b = xi(1.0 - s);
    const double diff = std::abs(a.value() - b.value()), bound = a.abs_err() + b.abs_err();
    ok += diff <= bound ? 1 : 0;
    worst = std::max(worst, bound > 0 ? diff / bound : 0.0);
  }
  r.pass = d0 <= tol::kXiZero && ok == 100;
  r.detail = "|xi(0)-1/2|=" + fmt("%.1e", d0) + " (tol 1e-12); functional equation " + std::to_string(ok) +
             "/100 within combined abs_err (worst diff/err " + fmt("%.3f", worst) + ")";
  r.data = {{"xi0_error", d0}, {"fe_within_err", ok}, {"fe_worst_ratio", worst}};
  return r;
}

CriterionResult c2(const AcceptanceOptions& o) {
  CriterionResult r = make_result(2, "zero verification");
  r.pass = true;
  std::ostringstream d;
  nlohmann::json data = nlohmann::json::array();
  int k = 0;
  for (const auto& [h, th] : {std::pair{0.5, 0.0}, std::pair{0.5, kPi / 3}, std::pair{1.0, 0.0}}) {
    ZeroSuite s = zero_suite(DeformationParams(h, th), LFunctionTarget::riemann(), 100.0, 10, o.seed + k++, o.jobs);
    r.pass = r.pass && s.pass;
    d << (k > 1 ? "; " : "") << s.msg.str();
    data.push_back(s.data);
  }
  r.detail = d.str();
  r.data = {{"suites", data}};
  return r;
}

CriterionResult c3(const AcceptanceOptions& o) {
  CriterionResult r = make_result(3, "conditional regime");
  const DeformationParams p(0.25, 0.0);
  try {
    ZeroSuite s = zero_suite(p, LFunctionTarget::riemann(), 100.0, 10, o.seed + 7, o.jobs);
    r.pass = s.pass && p.regime() == Regime::conditional_rh;
    r.detail = s.msg.str();
    r.data = s.data;
  } catch (const UnwrapError& e) {
    r.pass = false;
    r.detail = std::string("UnwrapError: ") + e.what();
  }
  return r;
}

CriterionResult c4(const AcceptanceOptions& o) {
  CriterionResult r = make_result(4, "zero counting");
  ZeroSearchOptions so;
  so.jobs = o.jobs;
  double worst = 0.0, worst_phase = 0.0;
  std::ostringstream d;
  nlohmann::json rows = nlohmann::json::array();
  bool ok = true;
  for (double T : {50.0, 100.0, 200.0, 500.0}) {
    const CountReport c = count_zeros_compare(DeformationParams(0.5, 0.0), LFunctionTarget::riemann(), T,
                                              FunctionTag::A, {}, so);
    worst = std::max(worst, c.error_over_log);
    worst_phase = std::max(worst_phase, std::abs(static_cast<double>(c.n_zeros) - c.phase_count));
    ok = ok && c.complete;
    d << "T=" << T << " N=" << c.n_zeros << " main=" << fmt("%.2f", c.main_term) << " |err|/logT="
      << fmt("%.3f", c.error_over_log) << "; ";
    rows.push_back(c.to_json());
  }
  r.pass = ok && worst <= tol::kCountC && tol::kCountC <= tol::kCountCeiling && worst_phase <= tol::kPhaseCountSlack;
  d << "C=" << tol::kCountC << " (max observed " << fmt("%.3f", worst) << "), max |N-phase count|=" << fmt("%.3f", worst_phase);
  r.detail = d.str();
  r.data = {{"rows", rows}, {"C", tol::kCountC}, {"max_ratio", worst}, {"max_phase_gap", worst_phase}};
  return r;
}

ZeroList a_zeros(double h, const LFunctionTarget& target, double T, int jobs) {
  ZeroSearchOptions so;
  so.jobs = jobs;
  return locate_zeros_phase(DeformationParams(h, 0.0), target, 0.0, T, FunctionTag::A, {}, so);
}

// Mean |delta - 1|: the first Wasserstein distance to the point mass at 1.
double w1_trivial(const EmpiricalDistribution& e) {
  double s = 0.0;
  for (double x : e.samples()) s += std::abs(x - 1.0);
  return s / static_cast<double>(e.size());
}

CriterionResult c5(const AcceptanceOptions& o) {
  CriterionResult r = make_result(5, "spacing collapse");
  const auto target = LFunctionTarget::riemann();
  std::vector<double> stds;
  EmpiricalDistribution e500;
  std::vector<double> k3;
  for (double T : {100.0, 300.0, 500.0}) {
    const auto sp = normalized_spacings(a_zeros(0.5, target, T, o.jobs), Normalization::odlyzko, T);
    const auto e = EmpiricalDistribution::from_spacings(sp, T);
    stds.push_back(e.stddev());
    if (T == 500.0) {
      e500 = e;
      k3 = component_means(consecutive_vectors(sp, 3));
    }
  }
  const double ks_t = distribution_distance(e500, Reference::trivial_delta);
  const double ks_g = distribution_distance(e500, Reference::gue_surrogate);
  const bool dir = ks_t < ks_g;
  const bool mean_ok = std::abs(e500.mean() - 1.0) <= tol::kMeanSpacing;
  bool k3_ok = k3.size() == 3;
  for (double m : k3) k3_ok = k3_ok && std::abs(m - 1.0) <= tol::kConsecutiveMean;
  const bool trend = decreasing_with_inversions(stds, 1);
  r.pass = dir && mean_ok && k3_ok && trend;
  r.detail = "T=500 h=1/2 n=" + std::to_string(e500.size()) + ": KS trivial=" + fmt("%.3f", ks_t) +
             " vs KS GUE surrogate=" + fmt("%.3f", ks_g) + (dir ? " (ok)" : " (FAIL: KS to a point mass is >= 1/2 here)") +
             "; mean=" + fmt("%.4f", e500.mean()) + (mean_ok ? " ok" : " FAIL") + "; k=3 means=(" + fmt("%.3f", k3[0]) +
             "," + fmt("%.3f", k3[1]) + "," + fmt("%.3f", k3[2]) + ")" + (k3_ok ? " ok" : " FAIL") +
             "; std T=100,300,500: " + fmt("%.3f", stds[0]) + "," + fmt("%.3f", stds[1]) + "," + fmt("%.3f", stds[2]) +
             (trend ? " ok" : " FAIL") + "; diagnostic W1 trivial=" + fmt("%.3f", w1_trivial(e500));
  r.data = {{"ks_trivial", ks_t}, {"ks_gue_surrogate", ks_g}, {"mean", e500.mean()}, {"k3_means", k3},
            {"std_by_T", stds},   {"w1_trivial", w1_trivial(e500)}, {"normalization", "odlyzko"}};
  return r;
}

CriterionResult c6(const AcceptanceOptions& o) {
  CriterionResult r = make_result(6, "GUE contrast at h=0");
  ZeroSearchOptions so;
  so.jobs = o.jobs;
  const double T = 300.0;
  const ZeroList z = locate_zeros_scan(critical_line_function(LFunctionTarget::riemann()), 0.01, T, 0.05, so);
  const auto e = EmpiricalDistribution::from_spacings(normalized_spacings(z, Normalization::odlyzko, T), T);
  const double ks_t = distribution_distance(e, Reference::trivial_delta);
  const double ks_g = distribution_distance(e, Reference::gue_surrogate);
  r.pass = e.size() >= 100 && ks_g < ks_t;
  r.detail = std::to_string(z.records.size()) + " zeta zeros, " + std::to_string(e.size()) +
             " spacings: KS GUE surrogate=" + fmt("%.3f", ks_g) + " < KS trivial=" + fmt("%.3f", ks_t);
  r.data = {{"n_zeros", z.records.size()}, {"n_spacings", e.size()}, {"ks_gue_surrogate", ks_g}, {"ks_trivial", ks_t}};
  return r;
}

CriterionResult c7(const AcceptanceOptions& o) {
  CriterionResult r = make_result(7, "structure-function inequality");
  StructureCheckOptions so;
  so.seed = o.seed;
  const Rect region{0.501, 3.0, 0.0, 40.0};
  const auto target = LFunctionTarget::riemann();
  const CheckReport half = structure_inequality_check(DeformationParams(0.5, 0.0), target, region, so);
  const CheckReport zero = structure_inequality_check(DeformationParams(0.0, 0.0), target, region, so);
  r.pass = half.pass && half.min_margin > 0 && zero.all_within_err();
  r.detail = "h=1/2: " + std::to_string(half.n - half.n_failures) + "/" + std::to_string(half.n) +
             " samples with margin > err (min margin " + fmt("%.2e", half.min_margin) + "); h=0: max |margin|/err=" +
             fmt("%.3f", zero.max_margin_to_err) + (zero.all_within_err() ? " (equality within error)" : " (FAIL)");
  r.data = {{"h_half", half.to_json()}, {"h_zero_max_margin_to_err", zero.max_margin_to_err}};
  r.data["h_half"].erase("failures");
  return r;
}

CriterionResult c8(const AcceptanceOptions& o) {
  CriterionResult r = make_result(8, "Hadamard product");
  ZeroSearchOptions so;
  so.jobs = o.jobs;
  const double T = 200.0;
  const ZeroList z = locate_zeros_scan(critical_line_function(LFunctionTarget::riemann()), 0.01, T, 0.05, so);
  const auto ord = z.ordinates();
  const std::int64_t ap =
      argument_principle_count([](cplx s) { return xi(s).value(); }, Rect{-0.5, 1.5, 0.5, T});
  const double tail = zero_tail_sum_bound(T);
  bool ok = ap == static_cast<std::int64_t>(ord.size());
  std::ostringstream d;
  d << ord.size() << " zeros below " << T << " (argument principle " << ap << "), tail sum bound " << fmt("%.3e", tail);
  nlohmann::json pts = nlohmann::json::array();
  for (cplx s : {cplx{1.0, 0.0}, cplx{2.0, 0.0}, cplx{0.5, 10.0}}) {
    const ComplexValue x = xi(s);
    const ComplexValue p = hadamard_partial(s, ord);
    const double err = std::abs(x.value() - p.value());
    const double bound = std::abs(p.value()) * std::expm1(std::abs(s * s - s) * tail) + x.abs_err() + p.abs_err();
    ok = ok && err <= bound;
    d << "; s=" << s.real() << (s.imag() != 0 ? "+" + fmt("%g", s.imag()) + "i" : "") << " err=" << fmt("%.3e", err)
      << " bound=" << fmt("%.3e", bound);
    pts.push_back({{"s", {s.real(), s.imag()}}, {"error", err}, {"bound", bound}});
  }
  r.pass = ok;
  r.detail = d.str();
  r.data = {{"n_zeros", ord.size()}, {"ap_count", ap}, {"tail_sum_bound", tail}, {"points", pts}};
  return r;
}

CriterionResult c9(const AcceptanceOptions& o) {
  CriterionResult r = make_result(9, "Dirichlet suite");
  const auto target = LFunctionTarget::parse("dirichlet:4.1");
  double worst_im = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const ComplexValue v = completed(cplx{0.5, 0.25 * k}, target);
    worst_im = std::max(worst_im, std::abs(v.im()) / std::abs(v.value()));
  }
  const bool real_ok = worst_im <= tol::kDirichletReal;
  ZeroSuite s = zero_suite(DeformationParams(0.5, 0.0), target, 100.0, 4, o.seed + 11, o.jobs);
  ZeroSearchOptions so;
  so.jobs = o.jobs;
  double worst = 0.0;
  for (double T : {50.0, 100.0}) {
    const CountReport c = count_zeros_compare(DeformationParams(0.5, 0.0), target, T, FunctionTag::A, {}, so);
    worst = std::max(worst, c.error_over_log);
  }
  const bool count_ok = worst <= tol::kCountC;
  const auto e = EmpiricalDistribution::from_spacings(
      normalized_spacings(a_zeros(0.5, target, 200.0, o.jobs), Normalization::odlyzko, 200.0, target.conductor()), 200.0);
  const double ks_t = distribution_distance(e, Reference::trivial_delta);
  const double ks_g = distribution_distance(e, Reference::gue_surrogate);
  const bool dir = ks_t < ks_g;
  r.pass = real_ok && s.pass && count_ok && dir;
  r.detail = "chi=4.1 (conductor 4, odd): max |Im|/|xi| on line=" + fmt("%.1e", worst_im) + (real_ok ? " ok" : " FAIL") +
             "; zeros T=100: " + s.msg.str() + "; count |err|/logT=" + fmt("%.3f", worst) + " (C=" + fmt("%g", tol::kCountC) +
             ")" + (count_ok ? " ok" : " FAIL") + "; T=200 KS trivial=" + fmt("%.3f", ks_t) + " vs KS GUE surrogate=" +
             fmt("%.3f", ks_g) + (dir ? " ok" : " FAIL");
  r.data = {{"max_rel_imag", worst_im}, {"zeros", s.data}, {"count_max_ratio", worst},
            {"ks_trivial", ks_t},       {"ks_gue_surrogate", ks_g}, {"mean_spacing", e.mean()}, {"std", e.stddev()}};
  return r;
}

CriterionResult c10(const AcceptanceOptions&) {
  CriterionResult r = make_result(10, "R_h diagnostics");
  const std::vector<double> Ts{10.0, 50.0, 100.0, 200.0, 500.0};
  double worst1 = 0.0, worst_c = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (double T : Ts) {
    const double r1 = r_h_sup(1.0, T), rh = r_h_sup(0.5, T);
    const double c = rh / (std::log(T) / std::log(std::log(T)));
    worst1 = std::max(worst1, r1);
    worst_c = std::max(worst_c, c);
    rows.push_back({{"T", T}, {"h1", r1}, {"h_half", rh}, {"h_half_ratio", c}});
  }
  r.pass = worst1 <= tol::kRhBound && worst_c <= tol::kRhHalfC;
  r.detail = "h=1 max " + fmt("%.4f", worst1) + " <= 1.51; h=1/2 max ratio to log T/log log T " + fmt("%.3f", worst_c) +
             " <= c=" + fmt("%g", tol::kRhHalfC) + " (grid maxima, lower bounds for the sup)";
  r.data = {{"rows", rows}, {"c", tol::kRhHalfC}};
  return r;
}

std::int64_t brute_conductor(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  for (std::int64_t d = 1; d <= q; ++d) {
    if (q % d) continue;
    bool induced = true;
    for (std::int64_t a = 1; a < q && induced; ++a)
      if (std::gcd(a, q) == 1 && a % d == 1 % d && chi.value_exponent(a) != 0) induced = false;
    if (induced) return d;
  }
  return q;
}

CriterionResult c11(const AcceptanceOptions&) {
  CriterionResult r = make_result(11, "character algebra");
  int bad_orth = 0, bad_cond = 0, bad_par = 0, bad_gauss = 0, n_chars = 0;
  for (std::int64_t q = 1; q <= 24; ++q) {
    const auto chars = enumerate_characters(q);
    const auto phi = static_cast<double>(euler_phi(q));
    if (static_cast<double>(chars.size()) != phi) ++bad_orth;
    for (std::size_t i = 0; i < chars.size(); ++i) {
      ++n_chars;
      for (std::size_t j = 0; j < chars.size(); ++j) {
        cplx s{0.0, 0.0};
        for (std::int64_t a = 0; a < q; ++a) s += chars[i].value(a) * std::conj(chars[j].value(a));
        if (std::abs(s - (i == j ? phi : 0.0)) > 1e-9) ++bad_orth;
      }
      if (brute_conductor(chars[i]) != chars[i].conductor()) ++bad_cond;
      const cplx m1 = chars[i].value(q - 1);
      if (std::abs(m1 - (chars[i].parity() ? -1.0 : 1.0)) > 1e-12) ++bad_par;
      if (chars[i].is_primitive() && std::abs(std::norm(gauss_sum(chars[i]).value()) - static_cast<double>(q)) > 1e-9)
        ++bad_gauss;
    }
    for (std::int64_t a = 0; a < q; ++a) {  // column orthogonality
      for (std::int64_t b = 0; b < q; ++b) {
        if (std::gcd(a, q) != 1 || std::gcd(b, q) != 1) continue;
        cplx s{0.0, 0.0};
        for (const auto& c : chars) s += c.value(a) * std::conj(c.value(b));
        if (std::abs(s - (a == b ? phi : 0.0)) > 1e-9) ++bad_orth;
      }
    }
  }
  r.pass = bad_orth + bad_cond + bad_par + bad_gauss == 0;
  r.detail = std::to_string(n_chars) + " characters, q<=24: orthogonality failures " + std::to_string(bad_orth) +
             ", conductor " + std::to_string(bad_cond) + ", parity " + std::to_string(bad_par) + ", |tau|^2=q " +
             std::to_string(bad_gauss);
  r.data = {{"n_characters", n_chars}, {"orthogonality", bad_orth}, {"conductor", bad_cond}, {"parity", bad_par},
            {"gauss", bad_gauss}};
  return r;
}

}  // namespace

double zero_tail_sum_bound(double T) {
  if (!(T > std::exp(1.0))) throw DomainError("tail bound needs T > e");
  const double L = std::log(T), LL = std::log(L);
  const double main = (std::log(T / (2 * kPi)) + 1.0) / (2 * kPi * T);
  const double eT = 0.137 * L + 0.443 * LL + 4.350;
  // 2 * integral_T^inf E(t) / t^3 dt, bounding each piece in closed form.
  const double tail = 2.0 * (0.137 * (2 * L + 1) / (4 * T * T) + 0.443 * (LL / (2 * T * T) + 1.0 / (4 * T * T * L)) +
                             4.350 / (2 * T * T));
  return main + eT / (T * T) + tail;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& o) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  static const Fn table[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11};
  if (id < 1 || id > 11) throw DomainError("criterion id must be in 1..11");
  try {
    return table[id - 1](o);
  } catch (const std::exception& e) {
    CriterionResult r = make_result(id, "error");
    r.detail = std::string("exception: ") + e.what();
    return r;
  }
}

std::vector<CriterionResult> run_acceptance(std::ostream& os, const AcceptanceOptions& o) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 11; ++id) {
    out.push_back(run_criterion(id, o));
    const auto& r = out.back();
    os << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << ": " << r.detail << '\n' << std::flush;
  }
  return out;
}

}  // namespace xishift
