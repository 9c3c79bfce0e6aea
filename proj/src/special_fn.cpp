#include "xishift/special_fn.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace xishift {

void EvalConfig::validate() const {
  if (!(target_abs_err > 0.0)) throw DomainError("target_abs_err must be positive");
  if (max_terms < 16) throw DomainError("max_terms must be at least 16");
  if (em_order < 2 || em_order > 30) throw DomainError("em_order must lie in [2, 30]");
}

namespace {

// B_{2k} / (2k)!, k = 1..31
constexpr std::array<double, 31> kEulerMaclaurin = {
    8.33333333333333333e-2,  -1.38888888888888889e-3, 3.30687830687830688e-5,  -8.26719576719576720e-7,
    2.08767569878680990e-8,  -5.28419013868749318e-10, 1.33825365306846788e-11, -3.38968029632258287e-13,
    8.58606205627784456e-15, -2.17486869855806187e-16, 5.50900282836022952e-18, -1.39544646858125233e-19,
    3.53470703962946747e-21, -8.95351742703754685e-23, 2.26795245233768306e-24, -5.74479066887220245e-26,
    1.45517247561486490e-27, -3.68599494066531018e-29, 9.33673425709504467e-31, -2.36502241570062993e-32,
    5.99067176248213430e-34, -1.51745488446829026e-35, 3.84375812545418823e-37, -9.73635307264669104e-39,
    2.46624704420068096e-40, -6.24707674182074369e-42, 1.58240302446449143e-43, -4.00827368594893597e-45,
    1.01530758555695563e-46, -2.57180415824187175e-48, 6.51445603523381493e-50};

// B_{2k} / (2k (2k-1)), k = 1..20
constexpr std::array<double, 20> kStirling = {
    8.33333333333333333e-2,  -2.77777777777777778e-3, 7.93650793650793651e-4,  -5.95238095238095238e-4,
    8.41750841750841751e-4,  -1.91752691752691753e-3, 6.41025641025641026e-3,  -2.95506535947712418e-2,
    1.79644372368830573e-1,  -1.39243221690590112e+0, 1.34028640441683920e+1,  -1.56848284626002017e+2,
    2.19310333333333333e+3,  -3.61087712537249894e+4, 6.91472268851313067e+5,  -1.52382215394074162e+7,
    3.82900751391414141e+8,  -1.08822660357843911e+10, 3.47320283765002252e+11, -1.23696021422692745e+13};

constexpr double kHalfLog2Pi = 0.918938533204672741780329736406;
constexpr double kPoleRadius = 1e-8;
constexpr double kStirlingRadius = 15.0;

// (e^w - 1) / w without cancellation near w = 0.
cplx expm1_over(cplx w) {
  if (std::abs(w) < 0.1) {
    cplx term{1.0, 0.0}, sum{1.0, 0.0};
    for (int k = 2; k <= 12; ++k) {
      term *= w / static_cast<double>(k);
      sum += term;
    }
    return sum;
  }
  return (std::exp(w) - 1.0) / w;
}

// Smallest prime factor table for the multiplicative power sum in zeta().
const std::vector<int>& spf_table() {
  static const std::vector<int> table = [] {
    constexpr int n = 1 << 16;
    std::vector<int> spf(n + 1, 0);
    for (int i = 2; i <= n; ++i) {
      if (spf[i] != 0) continue;
      for (int j = i; j <= n; j += i)
        if (spf[j] == 0) spf[j] = i;
    }
    return spf;
  }();
  return table;
}

enum class PoleMode {
  full,     // zeta(s, a)
  regular,  // zeta(s, a) - 1/(s-1)
  times_sm1 // (s-1) zeta(s, a)
};

struct PowerSum {
  cplx sum{0.0, 0.0};
  double sum_abs = 0.0;
  double sum_sq = 0.0;
};

PowerSum direct_power_sum(cplx s, double a, int n_terms) {
  PowerSum p;
  for (int n = 0; n < n_terms; ++n) {
    const cplx term = std::exp(-s * std::log(n + a));
    p.sum += term;
    const double m = std::abs(term);
    p.sum_abs += m;
    p.sum_sq += m * m;
  }
  return p;
}

// sum_{n=1}^{N-1} n^-s, building composite powers from prime powers.
PowerSum multiplicative_power_sum(cplx s, int n_terms) {
  const auto& spf = spf_table();
  if (n_terms >= static_cast<int>(spf.size())) return direct_power_sum(s, 1.0, n_terms - 1);
  std::vector<cplx> pw(static_cast<std::size_t>(std::max(n_terms, 2)));
  PowerSum p;
  for (int n = 1; n < n_terms; ++n) {
    if (n == 1) {
      pw[1] = {1.0, 0.0};
    } else if (spf[n] == n) {
      pw[n] = std::exp(-s * std::log(static_cast<double>(n)));
    } else {
      pw[n] = pw[spf[n]] * pw[n / spf[n]];
    }
    p.sum += pw[n];
    const double m = std::abs(pw[n]);
    p.sum_abs += m;
    p.sum_sq += m * m;
  }
  return p;
}

// Euler-Maclaurin tail at x = N + a: pole part, half term and Bernoulli corrections.
ComplexValue em_evaluate(cplx s, double a, int n_terms, const PowerSum& head, PoleMode mode, const EvalConfig& cfg) {
  const double x = n_terms + a;
  const double logx = std::log(x);
  const cplx xs = std::exp(-s * logx);  // x^-s
  const cplx sm1 = s - 1.0;

  cplx corr{0.0, 0.0};
  cplx term = kEulerMaclaurin[0] * xs * s / x;  // k = 1
  double corr_abs = 0.0;
  const int order = cfg.em_order;
  for (int k = 1; k <= order; ++k) {
    corr += term;
    corr_abs += std::abs(term);
    // advance to k + 1: multiply by (s + 2k - 1)(s + 2k) / x^2
    const cplx f = (s + (2.0 * k - 1.0)) * (s + 2.0 * k) / (x * x);
    term *= f * (kEulerMaclaurin[k] / kEulerMaclaurin[k - 1]);
  }
  // term now holds the first omitted correction
  const double sigma = s.real();
  const double denom = sigma + 2.0 * order + 1.0;
  double trunc = std::abs(term) * std::abs(s + (2.0 * order + 1.0)) / std::max(denom, 1e-300);
  if (denom <= 0.0) trunc = std::numeric_limits<double>::infinity();

  const cplx half = 0.5 * xs;
  cplx value;
  double scale = 1.0;
  switch (mode) {
    case PoleMode::full:
      value = head.sum + std::exp(-sm1 * logx) / sm1 + half + corr;
      break;
    case PoleMode::regular:
      // x^{1-s}/(s-1) - 1/(s-1) = -log x * (e^w - 1)/w with w = (1-s) log x
      value = head.sum - logx * expm1_over(-sm1 * logx) + half + corr;
      break;
    case PoleMode::times_sm1:
      value = sm1 * (head.sum + half + corr) + std::exp(-sm1 * logx);
      scale = std::abs(sm1);
      break;
  }

  const double phase_noise = 2.0 * (std::sqrt(static_cast<double>(n_terms)) + std::abs(s) * logx);
  const double rounding = kEps * (4.0 * (head.sum_abs + corr_abs + std::abs(xs) * x) + phase_noise * std::sqrt(head.sum_sq));
  const double err = scale * (trunc + rounding) + 2.0 * kEps * std::abs(value);
  if (trunc * scale > cfg.target_abs_err)
    throw AccuracyError("Euler-Maclaurin truncation error " + std::to_string(trunc) + " exceeds target");
  return {value, err};
}

ComplexValue hurwitz_impl(cplx s, double a, PoleMode mode, const EvalConfig& cfg) {
  const int n = em_cutoff(s, cfg);
  const PowerSum head = direct_power_sum(s, a, n);
  return em_evaluate(s, a, n, head, mode, cfg);
}

}  // namespace

int em_cutoff(cplx s, const EvalConfig& cfg) {
  const double want = std::max(32.0, std::ceil(std::abs(s.imag())) + std::max(0.0, -s.real()));
  if (want > cfg.max_terms) throw AccuracyError("Euler-Maclaurin cutoff exceeds max_terms");
  return static_cast<int>(want);
}

ComplexValue log_gamma(cplx z, const EvalConfig& cfg) {
  cfg.validate();
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw PoleError("log_gamma pole at non-positive integer");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("log_gamma of non-finite argument");

  cplx shift_sum{0.0, 0.0};
  double shift_mag = 0.0;
  cplx w = z;
  while (std::abs(w) < kStirlingRadius || w.real() < 0.5) {
    const cplx lw = std::log(w);
    shift_sum += lw;
    shift_mag += std::abs(lw) + 1.0;
    w += 1.0;
  }
  const cplx lw = std::log(w);
  cplx value = (w - 0.5) * lw - w + kHalfLog2Pi;
  const cplx inv = 1.0 / w;
  const cplx inv2 = inv * inv;
  cplx pw = inv;
  double trunc = 0.0;
  for (std::size_t k = 0; k < kStirling.size(); ++k) {
    const cplx term = kStirling[k] * pw;
    if (k + 1 == kStirling.size() || std::abs(term) < 1e-3 * kEps) {
      trunc = 2.0 * std::abs(term);
      if (std::abs(term) < 1e-3 * kEps) value += term;
      break;
    }
    value += term;
    pw *= inv2;
  }
  value -= shift_sum;
  const double rounding = 2.0 * kEps * (std::abs(w - 0.5) * std::abs(lw) + std::abs(w) + shift_mag + 4.0);
  const double err = trunc + rounding;
  if (err > cfg.target_abs_err) throw AccuracyError("log_gamma cannot reach the requested accuracy");
  return {value, err};
}

ComplexValue zeta_times_sm1(cplx s, const EvalConfig& cfg) {
  cfg.validate();
  if (s.real() < -10.0) {
    return (s - 1.0) * zeta(s, cfg);
  }
  const int n = em_cutoff(s, cfg);
  const PowerSum head = multiplicative_power_sum(s, n);
  return em_evaluate(s, 0.0, n, head, PoleMode::times_sm1, cfg);
}

ComplexValue zeta(cplx s, const EvalConfig& cfg) {
  cfg.validate();
  if (std::abs(s - 1.0) < kPoleRadius) throw PoleError("zeta pole at s = 1");
  if (s.real() < -10.0) {
    // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    const ComplexValue lg = log_gamma(1.0 - s, cfg);
    const ComplexValue zr = zeta(1.0 - s, cfg);
    const cplx logf = s * std::log(2.0) + (s - 1.0) * std::log(kPi) + lg.value();
    const cplx factor = std::exp(logf) * std::sin(kPi * s / 2.0);
    const cplx v = factor * zr.value();
    const double err = std::abs(v) * (lg.abs_err() + kEps * std::abs(logf) * 4) + std::abs(factor) * zr.abs_err();
    return {v, err};
  }
  const int n = em_cutoff(s, cfg);
  const PowerSum head = multiplicative_power_sum(s, n);
  return em_evaluate(s, 0.0, n, head, PoleMode::full, cfg);
}

ComplexValue hurwitz_zeta(cplx s, double a, const EvalConfig& cfg) {
  cfg.validate();
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta requires 0 < a <= 1");
  if (std::abs(s - 1.0) < kPoleRadius) throw PoleError("hurwitz_zeta pole at s = 1");
  return hurwitz_impl(s, a, PoleMode::full, cfg);
}

ComplexValue dirichlet_l(cplx s, const DirichletCharacter& chi, const EvalConfig& cfg) {
  cfg.validate();
  const std::int64_t q = chi.modulus();
  if (q == 1) return zeta(s, cfg);
  const bool principal = chi.is_principal();
  if (principal && std::abs(s - 1.0) < kPoleRadius) throw PoleError("principal L-function pole at s = 1");
  // non-principal: sum chi(r) = 0, so the 1/(s-1) parts cancel exactly
  const PoleMode mode = principal ? PoleMode::full : PoleMode::regular;
  const double qd = static_cast<double>(q);
  cplx sum{0.0, 0.0};
  double err = 0.0;
  for (std::int64_t r = 1; r <= q; ++r) {
    const cplx c = chi.value(r);
    if (c == cplx{}) continue;
    const ComplexValue h = hurwitz_impl(s, static_cast<double>(r) / qd, mode, cfg);
    sum += c * h.value();
    err += h.abs_err() + kEps * std::abs(h.value());
  }
  const cplx qs = std::exp(-s * std::log(qd));
  const cplx v = qs * sum;
  return {v, std::abs(qs) * err * (1.0 + kEps * std::abs(s) * std::log(qd) * 4) + 2 * kEps * std::abs(v)};
}

}  // namespace xishift
