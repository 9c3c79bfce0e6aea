#include "xishift/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "xishift/parallel.hpp"

namespace xishift {

std::string to_string(FunctionTag tag) { return tag == FunctionTag::A ? "A" : "B"; }

FunctionTag parse_tag(const std::string& s) {
  if (s == "A" || s == "a") return FunctionTag::A;
  if (s == "B" || s == "b") return FunctionTag::B;
  throw DomainError("function tag must be A or B, got '" + s + "'");
}

std::vector<double> ZeroList::ordinates() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.ordinate);
  return out;
}

std::int64_t ZeroList::count_between(double lo, double hi) const {
  std::int64_t n = 0;
  for (const auto& r : records)
    if (r.ordinate > lo && r.ordinate < hi) ++n;
  return n;
}

nlohmann::json ZeroList::summary_json() const {
  nlohmann::json j{{"method", method},
                   {"function_tag", to_string(tag)},
                   {"params", params.to_json()},
                   {"regime", to_string(params.regime())},
                   {"target", target},
                   {"t_range", {t_lo, t_hi}},
                   {"anchor_t", anchor_t},
                   {"n_zeros", records.size()}};
  if (certificate)
    j["completeness_certificate"] = {{"phase_increment_count", certificate->phase_increment_count},
                                     {"found_count", certificate->found_count},
                                     {"complete", certificate->complete()}};
  std::size_t suspects = 0;
  double worst_res = 0.0, worst_bracket = 0.0;
  for (const auto& r : records) {
    suspects += r.multiplicity_suspect ? 1 : 0;
    worst_res = std::max(worst_res, r.residual);
    worst_bracket = std::max(worst_bracket, r.bracket_width);
  }
  j["multiplicity_suspects"] = suspects;
  j["max_residual"] = worst_res;
  j["max_bracket_width"] = worst_bracket;
  return j;
}

namespace {

std::vector<double> base_grid(double t_lo, double t_hi, double scale) {
  std::vector<double> g{t_lo};
  double t = t_lo;
  while (t < t_hi) {
    const double step = scale / std::log(2.0 + std::abs(t));
    double next = t + step;
    // Do not leave a sliver at the end.
    if (next >= t_hi || t_hi - next < 0.25 * step) next = t_hi;
    g.push_back(next);
    t = next;
  }
  return g;
}

// F = Re or -Im of e^{i theta} exp(log_factor - ref) core, i.e. A or B on the line
// scaled by exp(-ref).
double tagged_value(const PhasePoint& p, FunctionTag tag, double theta, double ref) {
  const cplx e = std::exp(cplx{p.log_scale - ref, p.gamma_part + theta}) * p.core;
  return tag == FunctionTag::A ? e.real() : -e.imag();
}

double congruence_offset(FunctionTag tag, double theta) {
  return tag == FunctionTag::A ? kPi / 2 - theta : -theta;
}

}  // namespace

void require_monotone_phase(const std::vector<PhasePoint>& points) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double d = points[i].phase() - points[i - 1].phase();
    if (d < -1e-6)
      throw NonMonotonePhase("phase decreases by " + std::to_string(-d) + " between t = " +
                             std::to_string(points[i - 1].t) + " and " + std::to_string(points[i].t));
  }
}

PhaseGrid scan_phase(const DeformationParams& requested, const LFunctionTarget& target, double t_lo, double t_hi,
                     const EvalConfig& cfg, const ZeroSearchOptions& opts) {
  if (!(std::isfinite(t_lo) && std::isfinite(t_hi)) || !(t_hi > t_lo))
    throw DomainError("t range must be finite with t_lo < t_hi");
  if (requested.h() == 0.0)
    throw DomainError("phase method needs h != 0 (the phase is not monotone at h = 0); use the sign scan");
  const DeformationParams params =
      requested.h() > 0 ? requested : DeformationParams(-requested.h(), -requested.theta());

  PhaseTracker anchor_walk(params, target, cfg);
  const double anchor = anchor_walk.anchor_t();
  anchor_walk.advance_to(t_lo);
  const PhasePoint first = anchor_walk.current();
  const LineEvaluator& ev = anchor_walk.evaluator();

  const std::vector<double> grid = base_grid(t_lo, t_hi, opts.grid_scale);
  const std::size_t n_cells = grid.size() - 1;
  const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(std::max(opts.jobs, 1), n_cells));

  // Chunk p covers cells [c_p, c_{p+1}); its start point is shared with the
  // previous chunk's end and fixes the winding offset at the seam.
  std::vector<std::size_t> cut(parts + 1);
  for (std::size_t p = 0; p <= parts; ++p) cut[p] = n_cells * p / parts;
  std::vector<std::vector<PhasePoint>> pieces(parts);
  parallel_blocks(parts, static_cast<int>(parts), [&](std::size_t b, std::size_t e) {
    for (std::size_t p = b; p < e; ++p) {
      const PhasePoint start = p == 0 ? first : ev.at(grid[cut[p]]);
      PhaseTracker tr(ev, start);
      pieces[p].push_back(start);
      tr.record_into(&pieces[p]);
      for (std::size_t i = cut[p] + 1; i <= cut[p + 1]; ++i) tr.advance_to(grid[i]);
    }
  });

  PhaseGrid out{ev, params, requested, {}, anchor};
  out.points = std::move(pieces[0]);
  for (std::size_t p = 1; p < parts; ++p) {
    const PhasePoint& seam = out.points.back();
    const PhasePoint& head = pieces[p].front();
    if (seam.t != head.t || seam.core_arg != head.core_arg)
      throw UnwrapError("chunk seam mismatch near t = " + std::to_string(head.t), head.t);
    const std::int64_t offset = seam.winding - head.winding;
    for (std::size_t k = 1; k < pieces[p].size(); ++k) {
      PhasePoint q = pieces[p][k];
      q.winding += offset;
      out.points.push_back(q);
    }
  }

  require_monotone_phase(out.points);
  return out;
}

ZeroList zeros_from_grid(const PhaseGrid& grid, FunctionTag tag, const ZeroSearchOptions& opts) {
  const auto& pts = grid.points;
  const LineEvaluator& ev = grid.evaluator;
  const double theta = grid.params.theta();
  const double c = congruence_offset(tag, theta);
  const bool flip = tag == FunctionTag::B && grid.requested.h() < 0;

  ZeroList out;
  out.t_lo = pts.front().t;
  out.t_hi = pts.back().t;
  out.params = grid.requested;
  out.target = ev.target().spec();
  out.tag = tag;
  out.method = "phase";
  out.anchor_t = grid.anchor_t;

  const auto m_lo = static_cast<std::int64_t>(std::ceil((pts.front().phase() - c) / kPi));
  const auto m_hi = static_cast<std::int64_t>(std::floor((pts.back().phase() - c) / kPi));
  const std::int64_t expected = std::max<std::int64_t>(0, m_hi - m_lo + 1);

  std::vector<double> phases(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) phases[i] = pts[i].phase();

  std::vector<ZeroRecord> recs(static_cast<std::size_t>(expected));
  parallel_blocks(recs.size(), opts.jobs, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const std::int64_t m = m_lo + static_cast<std::int64_t>(k);
      const double v = c + kPi * static_cast<double>(m);
      const auto it = std::lower_bound(phases.begin(), phases.end(), v);
      std::size_t j = static_cast<std::size_t>(it - phases.begin());
      if (j >= pts.size()) j = pts.size() - 1;  // v rounds onto the last point

      ZeroRecord r;
      r.index = m;
      r.tag = tag;
      PhasePoint lo = pts[j == 0 ? 0 : j - 1], hi = pts[j];
      const double ref = lo.log_scale;
      const double f_left = tagged_value(pts[j == 0 ? 0 : j - 1], tag, theta, ref);
      const double f_right = tagged_value(pts[j], tag, theta, ref);
      if (phases[j] == v || j == 0) {
        lo = hi = pts[j];
      } else {
        while (hi.t - lo.t > opts.bracket_width) {
          const double mid_t = 0.5 * (lo.t + hi.t);
          if (mid_t <= lo.t || mid_t >= hi.t) break;
          const PhasePoint mid = ev.unwrap_near(mid_t, lo);
          if (mid.phase() < v)
            lo = mid;
          else
            hi = mid;
        }
      }
      double gamma = lo.t;
      if (hi.t > lo.t) {
        const double fl = tagged_value(lo, tag, theta, ref), fh = tagged_value(hi, tag, theta, ref);
        gamma = (fl != fh && fl * fh <= 0.0) ? lo.t - fl * (hi.t - lo.t) / (fh - fl) : 0.5 * (lo.t + hi.t);
        gamma = std::clamp(gamma, lo.t, hi.t);
      }
      r.ordinate = gamma;
      r.bracket_width = hi.t - lo.t;

      const PhasePoint at = gamma == lo.t ? lo : ev.unwrap_near(gamma, lo);
      r.phase_value = grid.requested.h() < 0 ? -at.phase() : at.phase();  // phi_{-h} = -phi_h on the line
      const double env = std::exp(at.log_scale - ref) * std::abs(at.core);
      const double local = std::max({env, std::abs(f_left), std::abs(f_right)});
      r.residual = local > 0 ? std::abs(tagged_value(at, tag, theta, ref)) / local : 0.0;
      constexpr double kDiff = 1e-5;
      const double fp = tagged_value(ev.at(gamma + kDiff), tag, theta, ref);
      const double fm = tagged_value(ev.at(gamma - kDiff), tag, theta, ref);
      r.derivative_est = local > 0 ? (fp - fm) / (2 * kDiff) / local : 0.0;
      if (flip) r.derivative_est = -r.derivative_est;
      r.multiplicity_suspect = !(std::abs(r.derivative_est) > opts.deriv_tol);
      recs[k] = r;
    }
  });

  out.records = std::move(recs);
  out.certificate = CompletenessCertificate{expected, static_cast<std::int64_t>(out.records.size())};
  return out;
}

ZeroList locate_zeros_phase(const DeformationParams& params, const LFunctionTarget& target, double t_lo, double t_hi,
                            FunctionTag tag, const EvalConfig& cfg, const ZeroSearchOptions& opts) {
  return zeros_from_grid(scan_phase(params, target, t_lo, t_hi, cfg, opts), tag, opts);
}

ZeroList locate_zeros_scan(const LineFunction& f, double t_lo, double t_hi, double grid_step,
                           const ZeroSearchOptions& opts) {
  if (!(t_hi > t_lo) || !(grid_step > 0)) throw DomainError("scan needs t_lo < t_hi and grid_step > 0");
  const auto n = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / grid_step));
  std::vector<double> ts(n + 1), fs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) ts[i] = i == n ? t_hi : t_lo + grid_step * static_cast<double>(i);
  parallel_blocks(ts.size(), opts.jobs, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) fs[i] = f(ts[i]);
  });

  ZeroList out;
  out.t_lo = t_lo;
  out.t_hi = t_hi;
  out.method = "scan";

  std::vector<std::size_t> cells;
  // Cells: exact zeros at grid points are attributed to that point once.
  for (std::size_t i = 0; i <= n; ++i) {
    if (fs[i] == 0.0) {
      cells.push_back(2 * i);  // even code: exact point
    } else if (i < n && fs[i + 1] != 0.0 && (fs[i] < 0) != (fs[i + 1] < 0)) {
      cells.push_back(2 * i + 1);  // odd code: open cell (i, i+1)
    }
  }

  std::vector<ZeroRecord> recs(cells.size());
  parallel_blocks(cells.size(), opts.jobs, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const std::size_t i = cells[k] / 2;
      ZeroRecord r;
      r.index = static_cast<std::int64_t>(k) + 1;
      double local;
      if (cells[k] % 2 == 0) {
        r.ordinate = ts[i];
        local = std::max(i > 0 ? std::abs(fs[i - 1]) : 0.0, i < n ? std::abs(fs[i + 1]) : 0.0);
      } else {
        double lo = ts[i], hi = ts[i + 1], flo = fs[i], fhi = fs[i + 1];
        local = std::max(std::abs(flo), std::abs(fhi));
        while (hi - lo > opts.bracket_width) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          const double fm = f(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            flo = fhi = 0.0;
            break;
          }
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
            fhi = fm;
          }
        }
        double g = lo;
        if (hi > lo) g = std::clamp(fhi != flo ? lo - flo * (hi - lo) / (fhi - flo) : 0.5 * (lo + hi), lo, hi);
        r.ordinate = g;
        r.bracket_width = hi - lo;
      }
      const double fz = f(r.ordinate);
      constexpr double kDiff = 1e-5;
      const double d = (f(r.ordinate + kDiff) - f(r.ordinate - kDiff)) / (2 * kDiff);
      r.residual = local > 0 ? std::abs(fz) / local : std::abs(fz);
      r.derivative_est = local > 0 ? d / local : d;
      r.multiplicity_suspect = !(std::abs(r.derivative_est) > opts.deriv_tol);
      r.phase_value = std::numeric_limits<double>::quiet_NaN();
      recs[k] = r;
    }
  });
  out.records = std::move(recs);
  return out;
}

LineFunction critical_line_function(const LFunctionTarget& target, const EvalConfig& cfg) {
  return [target, cfg](double t) {
    const CompletedParts p = completed_parts(cplx{0.5, t}, target, cfg);
    return (std::exp(cplx{0.0, p.log_factor.imag()}) * p.core.value()).real();
  };
}

AnalyticFunction deformed_function(const DeformationParams& params, const LFunctionTarget& target, FunctionTag tag,
                                   const EvalConfig& cfg) {
  return [params, target, tag, cfg](cplx s) {
    const DeformedValue d = deformed(s, params, target, cfg);
    return tag == FunctionTag::A ? d.A.value() : d.B.value();
  };
}

namespace {

struct ContourEval {
  double winding_re;
  double winding_im;
  double min_newton;
};

ContourEval contour_integral(const AnalyticFunction& f, const Rect& r, int per_unit, double fd) {
  const cplx corners[5] = {{r.re_lo, r.im_lo}, {r.re_hi, r.im_lo}, {r.re_hi, r.im_hi}, {r.re_lo, r.im_hi},
                           {r.re_lo, r.im_lo}};
  cplx total{0.0, 0.0};
  double min_newton = std::numeric_limits<double>::infinity();
  for (int side = 0; side < 4; ++side) {
    const cplx a = corners[side], b = corners[side + 1];
    const double len = std::abs(b - a);
    const int m = std::max(8, static_cast<int>(std::ceil(per_unit * len)));
    const cplx dz = (b - a) / static_cast<double>(m);
    const cplx dir = dz / std::abs(dz);
    cplx acc{0.0, 0.0};
    for (int j = 0; j <= m; ++j) {
      const cplx z = a + dz * static_cast<double>(j);
      const cplx fz = f(z);
      // Difference along the side; divide by the unit direction to get F'(z).
      const cplx der = (f(z + fd * dir) - f(z - fd * dir)) / (2.0 * fd * dir);
      min_newton = std::min(min_newton, std::abs(fz) / std::abs(der));
      const double w = (j == 0 || j == m) ? 0.5 : 1.0;
      acc += w * der / fz;
    }
    total += acc * dz;
  }
  const cplx wnum = total / cplx{0.0, 2 * kPi};
  return {wnum.real(), wnum.imag(), min_newton};
}

}  // namespace

WindingResult argument_principle(const AnalyticFunction& f, const Rect& rect, const ArgumentPrincipleOptions& opts) {
  if (!(rect.re_hi > rect.re_lo && rect.im_hi > rect.im_lo)) throw DomainError("degenerate contour rectangle");
  Rect r = rect;
  for (int nudge = 0; nudge <= opts.max_nudges; ++nudge) {
    if (nudge > 0) {
      // Push every side outward by a fixed irrational-looking amount.
      const double d = 0.0137 * nudge;
      r = Rect{rect.re_lo - d, rect.re_hi + d, rect.im_lo - d, rect.im_hi + d};
    }
    int per_unit = opts.quadrature_n;
    bool too_close = false;
    for (int refine = 0; refine <= opts.max_refinements; ++refine, per_unit *= 2) {
      const ContourEval ce = contour_integral(f, r, per_unit, opts.fd_step);
      if (ce.min_newton < opts.min_distance) {
        too_close = true;
        break;
      }
      const double rounded = std::round(ce.winding_re);
      const double dist = std::abs(ce.winding_re - rounded);
      if (dist < 0.1 && std::abs(ce.winding_im) < 0.1)
        return WindingResult{static_cast<std::int64_t>(rounded), ce.winding_re, dist, r, nudge};
    }
    if (!too_close) break;
  }
  throw ContourTooClose("argument principle did not settle on an integer winding number (contour too close to a zero)");
}

std::int64_t argument_principle_count(const AnalyticFunction& f, const Rect& rect, int quadrature_n) {
  ArgumentPrincipleOptions o;
  o.quadrature_n = quadrature_n;
  return argument_principle(f, rect, o).count;
}

nlohmann::json InterlacingReport::to_json() const {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : violations)
    v.push_back({{"position", x.position},
                 {"function_tag", to_string(x.tag)},
                 {"index", x.index},
                 {"ordinate", x.ordinate},
                 {"reason", x.reason}});
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& [tag, idx] : multiplicity_suspects) ms.push_back({{"function_tag", to_string(tag)}, {"index", idx}});
  return {{"phasing", phasing}, {"n_a", n_a},         {"n_b", n_b},         {"strict", strict()},
          {"simple", simple()}, {"violations", v},    {"multiplicity_suspects", ms}, {"pass", pass()}};
}

InterlacingReport verify_interlacing(const ZeroList& a, const ZeroList& b, double deriv_tol) {
  if (a.t_lo != b.t_lo || a.t_hi != b.t_hi) throw IncompatibleRanges("zero lists cover different t ranges");
  if (a.params.h() != b.params.h() || a.params.theta() != b.params.theta())
    throw IncompatibleRanges("zero lists belong to different (h, theta)");
  if (a.target != b.target) throw IncompatibleRanges("zero lists belong to different targets");

  struct Item {
    double t;
    FunctionTag tag;
    std::int64_t index;
  };
  std::vector<Item> all;
  InterlacingReport rep;
  rep.n_a = a.records.size();
  rep.n_b = b.records.size();
  for (const auto& r : a.records) all.push_back({r.ordinate, FunctionTag::A, r.index});
  for (const auto& r : b.records) all.push_back({r.ordinate, FunctionTag::B, r.index});
  std::stable_sort(all.begin(), all.end(), [](const Item& x, const Item& y) { return x.t < y.t; });
  rep.phasing = all.empty() ? "none" : (all.front().tag == FunctionTag::A ? "A-first" : "B-first");

  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].t == all[i - 1].t)
      rep.violations.push_back({i, all[i].tag, all[i].index, all[i].t, "coincident ordinates"});
    else if (all[i].tag == all[i - 1].tag)
      rep.violations.push_back({i, all[i].tag, all[i].index, all[i].t, "two consecutive zeros of the same function"});
  }
  for (const ZeroList* zl : {&a, &b})
    for (const auto& r : zl->records)
      if (!(std::abs(r.derivative_est) > deriv_tol)) rep.multiplicity_suspects.emplace_back(zl == &a ? FunctionTag::A : FunctionTag::B, r.index);
  return rep;
}

double zero_count_main_term(double T, std::int64_t conductor) {
  return T / kPi * std::log(T) - T / kPi * (std::log(2 * kPi / static_cast<double>(conductor)) + 1.0);
}

nlohmann::json CountReport::to_json() const {
  return {{"params", params.to_json()},
          {"regime", to_string(params.regime())},
          {"target", target},
          {"function_tag", to_string(tag)},
          {"T", T},
          {"conductor", conductor},
          {"N", n_zeros},
          {"main_term", main_term},
          {"error", error},
          {"error_over_log_T", error_over_log},
          {"phase_count", phase_count},
          {"complete", complete}};
}

CountReport count_zeros_compare(const DeformationParams& params, const LFunctionTarget& target, double T,
                                FunctionTag tag, const EvalConfig& cfg, const ZeroSearchOptions& opts) {
  if (!(T >= 2.0)) throw DomainError("count comparison needs T >= 2");
  const PhaseGrid grid = scan_phase(params, target, -T, T, cfg, opts);
  const ZeroList z = zeros_from_grid(grid, tag, opts);
  CountReport rep;
  rep.params = params;
  rep.target = target.spec();
  rep.tag = tag;
  rep.T = T;
  rep.conductor = target.conductor();
  rep.n_zeros = static_cast<std::int64_t>(z.records.size());
  rep.main_term = zero_count_main_term(T, rep.conductor);
  rep.error = static_cast<double>(rep.n_zeros) - rep.main_term;
  rep.error_over_log = std::abs(rep.error) / std::log(T);
  rep.phase_count = (grid.points.back().phase() - grid.points.front().phase()) / kPi;
  rep.complete = z.certificate && z.certificate->complete();
  return rep;
}

void write_zero_csv(std::ostream& os, const ZeroList& zeros) {
  os << "index,gamma,function_tag,h,theta,target,residual,bracket_width,phase_value,derivative_est\n";
  char buf[512];
  const std::string tag = to_string(zeros.tag);
  for (const auto& r : zeros.records) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%s,%.17g,%.17g,%s,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(r.index), r.ordinate, tag.c_str(), zeros.params.h(), zeros.params.theta(),
                  zeros.target.c_str(), r.residual, r.bracket_width, r.phase_value, r.derivative_est);
    os << buf;
  }
}

}  // namespace xishift
