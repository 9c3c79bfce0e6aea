#include "xishift/lfunctions.hpp"

#include <algorithm>
#include <random>

#include "xishift/special_fn.hpp"

namespace xishift {

namespace {

constexpr double kLogPi = 1.14472988584940017414342735135;

// exp(log_factor) * core with the error of both pieces folded in.
ComplexValue assemble(const CompletedParts& p) {
  const cplx f = std::exp(p.log_factor);
  const cplx v = f * p.core.value();
  const double rel_f = p.log_factor_err + 2 * kEps * (std::abs(p.log_factor) + 1.0);
  const double err = std::abs(v) * rel_f + std::abs(f) * p.core.abs_err() + 2 * kEps * std::abs(v);
  return {v, err};
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::undeformed: return "undeformed";
    case Regime::conditional_rh: return "conditional-RH";
    case Regime::unconditional: return "unconditional";
  }
  return "unknown";
}

DeformationParams::DeformationParams(double h, double theta) : h_(h) {
  if (!std::isfinite(h) || !std::isfinite(theta)) throw DomainError("deformation parameters must be finite");
  theta_ = std::fmod(theta, 2 * kPi);
  if (theta_ < 0) theta_ += 2 * kPi;
  if (theta_ >= 2 * kPi) theta_ = 0.0;
}

Regime DeformationParams::regime() const {
  if (h_ == 0.0) return Regime::undeformed;
  return std::abs(h_) >= 0.5 ? Regime::unconditional : Regime::conditional_rh;
}

nlohmann::json DeformationParams::to_json() const {
  return {{"h", h_}, {"theta", theta_}, {"regime", to_string(regime())}};
}

LFunctionTarget LFunctionTarget::riemann() { return {}; }

LFunctionTarget LFunctionTarget::dirichlet(const DirichletCharacter& chi, const EvalConfig& cfg) {
  if (!chi.is_primitive()) throw DomainError("character " + chi.spec() + " is not primitive");
  LFunctionTarget t;
  t.kind_ = Kind::dirichlet;
  t.chi_ = chi;
  const ComplexValue tau = gauss_sum(chi);
  const cplx ik = chi.parity() == 1 ? cplx{0.0, 1.0} : cplx{1.0, 0.0};
  const cplx w = ik * std::sqrt(static_cast<double>(chi.modulus())) / tau.value();
  cplx eps = std::sqrt(w);
  t.phase_ = eps / std::abs(eps);

  for (int j = 0; j < 16; ++j) {
    const ComplexValue v = completed(cplx{0.5, static_cast<double>(j)}, t, cfg);
    if (std::abs(v.im()) > 1e-8 * std::max(v.abs(), 1e-300) + v.abs_err())
      throw AccuracyError("normalized completed L-function for " + chi.spec() + " is not real on the critical line");
  }
  return t;
}

LFunctionTarget LFunctionTarget::parse(const std::string& spec, const EvalConfig& cfg) {
  if (spec == "riemann") return riemann();
  const std::string prefix = "dirichlet:";
  if (spec.rfind(prefix, 0) == 0) return dirichlet(parse_character(spec.substr(prefix.size())), cfg);
  throw DomainError("unknown target '" + spec + "' (expected riemann or dirichlet:q.label)");
}

std::int64_t LFunctionTarget::conductor() const { return chi_ ? chi_->conductor() : 1; }

bool LFunctionTarget::conjugate_symmetric() const { return !chi_ || chi_->is_real(); }

std::string LFunctionTarget::spec() const { return chi_ ? "dirichlet:" + chi_->spec() : "riemann"; }

LFunctionTarget LFunctionTarget::conjugate() const {
  if (!chi_) return *this;
  LFunctionTarget t = *this;
  t.chi_ = chi_->conjugate();
  t.phase_ = std::conj(phase_);
  return t;
}

CompletedParts completed_parts(cplx s, const LFunctionTarget& target, const EvalConfig& cfg) {
  const auto& chi = target.character();
  if (!chi || chi->modulus() == 1) {
    // xi(s) = (s-1) zeta(s) * pi^{-s/2} Gamma(s/2 + 1)
    const ComplexValue lg = log_gamma(s / 2.0 + 1.0, cfg);
    CompletedParts p;
    p.log_factor = -s / 2.0 * kLogPi + lg.value();
    p.log_factor_err = lg.abs_err();
    p.core = zeta_times_sm1(s, cfg);
    return p;
  }
  const double n = static_cast<double>(chi->modulus());
  const cplx sk = (s + static_cast<double>(chi->parity())) / 2.0;
  const ComplexValue lg = log_gamma(sk, cfg);
  CompletedParts p;
  p.log_factor = -sk * std::log(kPi / n) + lg.value();
  p.log_factor_err = lg.abs_err();
  p.core = target.normalization_phase() * dirichlet_l(s, *chi, cfg);
  return p;
}

ComplexValue completed(cplx s, const LFunctionTarget& target, const EvalConfig& cfg) {
  const auto& chi = target.character();
  const bool riemann_like = !chi || chi->modulus() == 1;
  // functional equation: xi(s) = xi(1 - s), xi_norm(s, chi) = xi_norm(1 - s, conj chi)
  if (riemann_like ? s.real() < -1.0 : s.real() < 0.0) return completed(1.0 - s, target.conjugate(), cfg);
  return assemble(completed_parts(s, target, cfg));
}

ComplexValue xi(cplx s, const EvalConfig& cfg) { return completed(s, LFunctionTarget::riemann(), cfg); }

ComplexValue xi_chi(cplx s, const LFunctionTarget& target, const EvalConfig& cfg) {
  if (target.kind() != LFunctionTarget::Kind::dirichlet) throw DomainError("xi_chi needs a dirichlet target");
  if (target.character()->modulus() == 1) {
    if (std::abs(s) < 1e-8 || std::abs(s - 1.0) < 1e-8) throw PoleError("completed zeta has poles at s = 0, 1");
    // pi^{-s/2} Gamma(s/2) zeta(s) = xi(s) / (s(s-1)/2)
    const ComplexValue x = xi(s, cfg);
    const cplx poly = s * (s - 1.0) / 2.0;
    return {x.value() / poly, x.abs_err() / std::abs(poly) + 2 * kEps * std::abs(x.value() / poly)};
  }
  return completed(s, target, cfg);
}

DeformedValue deformed(cplx s, const DeformationParams& params, const LFunctionTarget& target,
                       const EvalConfig& cfg) {
  const cplx rot = std::polar(1.0, params.theta());
  const ComplexValue e = rot * completed(s + params.h(), target, cfg);
  const ComplexValue r = rot * completed(1.0 - std::conj(s) + params.h(), target, cfg);
  const ComplexValue rc = r.conj();
  DeformedValue out;
  out.E = e;
  out.A = cplx{0.5, 0.0} * (e + rc);
  out.B = cplx{0.0, 0.5} * (e - rc);
  return out;
}

LineEvaluator::LineEvaluator(double h, LFunctionTarget target, EvalConfig cfg)
    : h_(h), target_(std::move(target)), cfg_(cfg) {
  const double gamma_re = target_.character() && target_.character()->modulus() > 1
                              ? (0.5 + h + target_.character()->parity()) / 2.0
                              : (0.5 + h) / 2.0 + 1.0;
  if (!(0.5 + h > 0.0) || !(gamma_re > 0.0)) throw DomainError("phase line Re(s) = 1/2 + h must lie in Re(s) > 0");
}

PhasePoint LineEvaluator::at(double t) const {
  const CompletedParts parts = completed_parts(cplx{0.5 + h_, t}, target_, cfg_);
  PhasePoint p;
  p.t = t;
  p.gamma_part = parts.log_factor.imag();
  p.log_scale = parts.log_factor.real();
  p.core = parts.core.value();
  p.core_arg = std::arg(p.core);
  return p;
}

PhasePoint LineEvaluator::unwrap_near(double t, const PhasePoint& ref) const {
  PhasePoint p = at(t);
  const double u_ref = ref.core_arg + 2 * kPi * static_cast<double>(ref.winding);
  const double d = wrap_angle(p.core_arg - u_ref);
  if (std::abs(d) >= kPi / 2) throw UnwrapError("core argument jumps by pi/2 or more near t = " + std::to_string(t), t);
  p.winding = std::llround((u_ref + d - p.core_arg) / (2 * kPi));
  return p;
}

PhaseTracker::PhaseTracker(const DeformationParams& params, const LFunctionTarget& target, const EvalConfig& cfg)
    : eval_(params.h(), target, cfg) {
  if (target.kind() == LFunctionTarget::Kind::riemann) {
    anchor_t_ = 0.0;
  } else {
    std::vector<PhasePoint> pts;
    double best = 0.0;
    for (int j = 0; j < 16; ++j) {
      pts.push_back(eval_.at(0.25 * j));
      best = std::max(best, std::abs(pts.back().core));
    }
    for (const auto& p : pts) {
      if (std::abs(p.core) > 0.1 * best) {
        anchor_t_ = p.t;
        break;
      }
    }
  }
  current_ = eval_.at(anchor_t_);
}

PhaseTracker::PhaseTracker(LineEvaluator evaluator, PhasePoint start)
    : eval_(std::move(evaluator)), current_(start), anchor_t_(start.t) {}

double PhaseTracker::advance_to(double t) {
  double step = t - current_.t;
  while (current_.t != t) {
    const double remaining = t - current_.t;
    if (std::abs(step) >= std::abs(remaining)) step = remaining;
    const double t_try = step == remaining ? t : current_.t + step;
    PhasePoint p = eval_.at(t_try);
    const double u_prev = current_.core_arg + 2 * kPi * static_cast<double>(current_.winding);
    const double d = wrap_angle(p.core_arg - u_prev);
    const double dphi = (p.gamma_part - current_.gamma_part) + d;
    if (std::abs(d) < kPi / 2 && std::abs(dphi) < kPi / 2) {
      p.winding = std::llround((u_prev + d - p.core_arg) / (2 * kPi));
      current_ = p;
      if (sink_) sink_->push_back(p);
      step *= 2;
    } else {
      step /= 2;
      if (std::abs(step) < kMinStep)
        throw UnwrapError("phase step floor reached near t = " + std::to_string(current_.t) +
                              " (possible zero of the completed function on the line)",
                          current_.t);
    }
  }
  return current_.phase();
}

double phase(double t, PhaseTracker& tracker) { return tracker.advance_to(t); }

double phase(double t, const DeformationParams& params, const LFunctionTarget& target, const EvalConfig& cfg) {
  PhaseTracker tracker(params, target, cfg);
  return tracker.advance_to(t);
}

double gamma_phase(double t, double h, const EvalConfig& cfg) {
  const cplx z{0.25 + h / 2.0, t / 2.0};
  if (!(z.real() > 0.0)) throw DomainError("gamma_phase requires 1/4 + h/2 > 0");
  return log_gamma(z, cfg).im() - t / 2.0 * kLogPi;
}

nlohmann::json Rect::to_json() const {
  return {{"re_lo", re_lo}, {"re_hi", re_hi}, {"im_lo", im_lo}, {"im_hi", im_hi}};
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : failures)
    fails.push_back({{"s", {f.s.real(), f.s.imag()}}, {"margin", f.margin}, {"err", f.err}});
  return {{"params", params.to_json()},
          {"target", target},
          {"region", region.to_json()},
          {"sampler_seed", seed},
          {"n", n},
          {"n_failures", n_failures},
          {"failures", fails},
          {"min_margin", min_margin},
          {"max_margin_to_err", max_margin_to_err},
          {"pass", pass}};
}

CheckReport structure_inequality_check(const DeformationParams& params, const LFunctionTarget& target,
                                       const Rect& region, const StructureCheckOptions& opts,
                                       const EvalConfig& cfg) {
  if (region.re_lo < 0.5 + 1e-3 - 1e-12 || region.re_hi <= region.re_lo || region.im_hi <= region.im_lo)
    throw DomainError("structure check region must lie in Re(s) >= 1/2 + 1e-3");

  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(opts.grid_n) * opts.grid_n + opts.random_n);
  const double dre = (region.re_hi - region.re_lo), dim = (region.im_hi - region.im_lo);
  for (int i = 0; i < opts.grid_n; ++i)
    for (int j = 0; j < opts.grid_n; ++j)
      pts.emplace_back(region.re_lo + (i + 0.5) * dre / opts.grid_n, region.im_lo + (j + 0.5) * dim / opts.grid_n);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> ure(region.re_lo, region.re_hi), uim(region.im_lo, region.im_hi);
  for (int k = 0; k < opts.random_n; ++k) {
    const double re = ure(rng);
    pts.emplace_back(re, uim(rng));
  }

  CheckReport rep;
  rep.params = params;
  rep.target = target.spec();
  rep.region = region;
  rep.seed = opts.seed;
  rep.n = pts.size();
  rep.min_margin = std::numeric_limits<double>::infinity();
  const double h = params.h();
  for (const cplx& s : pts) {
    const ComplexValue lhs = completed(h + s, target, cfg);
    const ComplexValue rhs = completed(h + 1.0 - std::conj(s), target, cfg);
    StructureSample smp{s, lhs.abs() - rhs.abs(), lhs.abs_err() + rhs.abs_err()};
    rep.min_margin = std::min(rep.min_margin, smp.margin);
    const double ratio = smp.err > 0 ? std::abs(smp.margin) / smp.err
                                     : (smp.margin == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    rep.max_margin_to_err = std::max(rep.max_margin_to_err, ratio);
    if (!(smp.margin > smp.err)) {
      ++rep.n_failures;
      if (rep.failures.size() < opts.max_listed_failures) rep.failures.push_back(smp);
    }
  }
  rep.pass = rep.n_failures == 0;
  return rep;
}

ComplexValue hadamard_partial(cplx s, std::span<const double> ordinates) {
  const cplx d = (s - 0.5) * (s - 0.5);
  cplx prod{0.5, 0.0};
  for (double g : ordinates) {
    const double g2 = g * g;
    prod *= (d + g2) / (0.25 + g2);
  }
  return {prod, 4 * kEps * (static_cast<double>(ordinates.size()) + 1.0) * std::abs(prod)};
}

}  // namespace xishift
