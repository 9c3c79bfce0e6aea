#include "xishift/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>

#include "xishift/special_fn.hpp"

namespace xishift {

std::string to_string(Normalization n) { return n == Normalization::odlyzko ? "odlyzko" : "count_based"; }

Normalization parse_normalization(const std::string& s) {
  if (s == "odlyzko") return Normalization::odlyzko;
  if (s == "count_based" || s == "count") return Normalization::count_based;
  throw DomainError("unknown normalization '" + s + "'");
}

std::vector<SpacingSample> normalized_spacings(const ZeroList& zeros, Normalization norm, double T,
                                               std::int64_t conductor) {
  std::vector<const ZeroRecord*> in;
  for (const auto& r : zeros.records)
    if (std::abs(r.ordinate) <= T) in.push_back(&r);
  if (in.size() < 2) throw InsufficientZeros("need at least two zeros with |gamma| <= T");

  std::vector<SpacingSample> out;
  const double n_cond = static_cast<double>(conductor);
  if (norm == Normalization::count_based) {
    const double lo = std::max(zeros.t_lo, -T), hi = std::min(zeros.t_hi, T);
    const double density = static_cast<double>(in.size()) / (hi - lo);
    for (std::size_t i = 0; i + 1 < in.size(); ++i) {
      const double gap = in[i + 1]->ordinate - in[i]->ordinate;
      out.push_back({in[i]->index, gap * density, norm, in[i]->ordinate, gap});
    }
  } else {
    const double cutoff = 2 * kPi * std::exp(1.0) / n_cond;
    for (std::size_t i = 0; i + 1 < in.size(); ++i) {
      const double g = in[i]->ordinate;
      if (std::abs(g) <= cutoff) continue;
      const double gap = in[i + 1]->ordinate - g;
      out.push_back({in[i]->index, gap * std::log(n_cond * std::abs(g) / (2 * kPi)) / (2 * kPi), norm, g, gap});
    }
    if (out.empty()) throw InsufficientZeros("no spacings above the odlyzko cutoff 2 pi e / N");
  }
  return out;
}

std::vector<std::vector<double>> consecutive_vectors(const std::vector<SpacingSample>& samples, std::size_t k) {
  if (k == 0) throw DomainError("k must be at least 1");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i + k <= samples.size(); ++i) {
    std::vector<double> v(k);
    for (std::size_t j = 0; j < k; ++j) v[j] = samples[i + j].delta;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<double> component_means(const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) return {};
  std::vector<double> m(vectors.front().size(), 0.0);
  for (const auto& v : vectors)
    for (std::size_t j = 0; j < m.size(); ++j) m[j] += v[j];
  for (double& x : m) x /= static_cast<double>(vectors.size());
  return m;
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples, double T, std::size_t k)
    : x_(std::move(samples)), T_(T), k_(k) {
  std::sort(x_.begin(), x_.end());
}

EmpiricalDistribution EmpiricalDistribution::from_spacings(const std::vector<SpacingSample>& samples, double T) {
  std::vector<double> x;
  x.reserve(samples.size());
  for (const auto& s : samples) x.push_back(s.delta);
  return EmpiricalDistribution(std::move(x), T, 1);
}

double EmpiricalDistribution::cdf(double x) const {
  if (x_.empty()) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) / static_cast<double>(x_.size());
}

double EmpiricalDistribution::cdf_below(double x) const {
  if (x_.empty()) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(std::lower_bound(x_.begin(), x_.end(), x) - x_.begin()) / static_cast<double>(x_.size());
}

double EmpiricalDistribution::mean() const {
  if (x_.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(x_.begin(), x_.end(), 0.0) / static_cast<double>(x_.size());
}

double EmpiricalDistribution::stddev() const {
  if (x_.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = mean();
  double ss = 0.0;
  for (double v : x_) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x_.size() - 1));
}

double EmpiricalDistribution::max_abs_dev(double center) const {
  if (x_.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::max(std::abs(x_.front() - center), std::abs(x_.back() - center));
}

std::string to_string(Reference r) { return r == Reference::trivial_delta ? "trivial_delta" : "gue_surrogate"; }

Reference parse_reference(const std::string& s) {
  if (s == "trivial" || s == "trivial_delta") return Reference::trivial_delta;
  if (s == "gue" || s == "gue_surrogate") return Reference::gue_surrogate;
  throw DomainError("unknown reference distribution '" + s + "' (trivial or gue)");
}

double wigner_pdf(double u) {
  if (u <= 0) return 0.0;
  return 32.0 / (kPi * kPi) * u * u * std::exp(-4.0 * u * u / kPi);
}

double wigner_cdf(double u) {
  if (u <= 0) return 0.0;
  const double a = 4.0 / kPi;
  const double integral =
      std::sqrt(kPi) / (4.0 * std::pow(a, 1.5)) * std::erf(std::sqrt(a) * u) - u * std::exp(-a * u * u) / (2.0 * a);
  return std::min(1.0, 32.0 / (kPi * kPi) * integral);
}

double distribution_distance(const EmpiricalDistribution& emp, Reference ref) {
  if (emp.size() == 0) throw InsufficientZeros("empty empirical distribution");
  if (ref == Reference::trivial_delta) return std::max(emp.cdf_below(1.0), 1.0 - emp.cdf(1.0));
  const auto& x = emp.samples();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = wigner_cdf(x[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
  }
  return d;
}

double distribution_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  if (a.size() == 0 || b.size() == 0) throw InsufficientZeros("empty empirical distribution");
  double d = 0.0;
  for (const auto* e : {&a, &b})
    for (double x : e->samples()) d = std::max(d, std::abs(a.cdf(x) - b.cdf(x)));
  return d;
}

std::vector<HistogramBin> histogram(const EmpiricalDistribution& emp, double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw DomainError("histogram needs bins > 0 and hi > lo");
  std::vector<HistogramBin> out(bins);
  const double w = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) out[b] = {lo + w * b, b + 1 == bins ? hi : lo + w * (b + 1), 0, 0.0};
  for (double x : emp.samples()) {
    if (x < lo || x > hi) continue;
    auto b = static_cast<std::size_t>((x - lo) / w);
    if (b >= bins) b = bins - 1;
    ++out[b].count;
  }
  const double n = static_cast<double>(emp.size());
  for (auto& b : out) b.frequency = n > 0 ? static_cast<double>(b.count) / n : 0.0;
  return out;
}

void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins) {
  os << "bin_lo,bin_hi,count,frequency\n";
  char buf[160];
  for (const auto& b : bins) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu,%.17g\n", b.lo, b.hi, b.count, b.frequency);
    os << buf;
  }
}

nlohmann::json DispersionRow::to_json() const {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  nlohmann::json j{{"h", h},       {"theta", theta},          {"T", T},
                   {"n", n},       {"mean", num(mean)},       {"std", num(std)},
                   {"max_abs_dev", num(max_abs_dev)},         {"ks_trivial", num(ks_trivial)},
                   {"ks_gue_surrogate", num(ks_gue_surrogate)}};
  if (!warning.empty()) j["warning"] = warning;
  return j;
}

bool DispersionReport::monotone_collapse() const {
  std::map<double, std::vector<std::pair<double, double>>> by_T;
  for (const auto& r : rows)
    if (std::isfinite(r.std)) by_T[r.T].emplace_back(std::abs(r.h), r.std);
  for (auto& [T, v] : by_T) {
    std::sort(v.begin(), v.end());
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i].second > v[i - 1].second) return false;
  }
  return true;
}

nlohmann::json DispersionReport::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows) rs.push_back(r.to_json());
  return {{"rows", rs}, {"monotone_collapse", monotone_collapse()}, {"gue_reference", "GUE surrogate (Wigner surmise)"}};
}

DispersionReport spacing_dispersion_report(const std::vector<ZeroList>& lists, double T, Normalization norm,
                                           std::int64_t conductor) {
  DispersionReport rep;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& zl : lists) {
    DispersionRow row;
    row.h = zl.params.h();
    row.theta = zl.params.theta();
    row.T = T;
    try {
      const auto sp = normalized_spacings(zl, norm, T, conductor);
      const auto emp = EmpiricalDistribution::from_spacings(sp, T);
      row.n = emp.size();
      row.mean = emp.mean();
      row.std = emp.stddev();
      row.max_abs_dev = emp.max_abs_dev(1.0);
      row.ks_trivial = distribution_distance(emp, Reference::trivial_delta);
      row.ks_gue_surrogate = distribution_distance(emp, Reference::gue_surrogate);
      if (row.n < 2) row.warning = "fewer than two spacings; dispersion undefined";
    } catch (const InsufficientZeros& e) {
      row.n = 0;
      row.mean = row.std = row.max_abs_dev = row.ks_trivial = row.ks_gue_surrogate = nan;
      row.warning = e.what();
    }
    rep.rows.push_back(row);
  }
  return rep;
}

bool decreasing_with_inversions(const std::vector<double>& xs, int max_inversions) {
  int inv = 0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > xs[i - 1]) ++inv;
  return inv <= max_inversions;
}

double r_h_sup(double h, double T, double grid_step, const EvalConfig& cfg) {
  if (!(h > 0)) throw DomainError("r_h_sup needs h > 0");
  if (!(grid_step > 0)) throw DomainError("grid_step must be positive");
  const auto n = static_cast<std::size_t>(std::llround(1.0 / grid_step));
  constexpr double kDiff = 1e-5;
  double best = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const cplx s{0.5 + h, T + static_cast<double>(i) / static_cast<double>(n)};
    const cplx z = zeta(s, cfg).value();
    const cplx dz = (zeta(s + kDiff, cfg).value() - zeta(s - kDiff, cfg).value()) / (2 * kDiff);
    best = std::max(best, std::abs(dz / z));
  }
  return best;
}

}  // namespace xishift
