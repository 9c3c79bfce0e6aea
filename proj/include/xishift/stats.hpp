// Normalized zero spacings, empirical spacing distributions and their
// distances to the equal-spacing law and to the Wigner surmise.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "xishift/zeros.hpp"

namespace xishift {

enum class Normalization { odlyzko, count_based };

std::string to_string(Normalization n);
Normalization parse_normalization(const std::string& s);

struct SpacingSample {
  std::int64_t index = 0;  // index of the lower zero of the pair
  double delta = 0.0;
  Normalization normalization = Normalization::count_based;
  double gamma = 0.0;      // lower ordinate
  double gap = 0.0;        // raw gap
};

/// One sample per consecutive pair of zeros with |gamma| <= T.
///  count_based: gap * n / L, where n zeros lie in the window of length L.
///  odlyzko:     gap * log(N |gamma| / 2 pi) / 2 pi, dropping N |gamma| <= 2 pi e
///               (N is the conductor, 1 for zeta).
/// Throws InsufficientZeros with fewer than two usable zeros.
std::vector<SpacingSample> normalized_spacings(const ZeroList& zeros, Normalization norm, double T,
                                               std::int64_t conductor = 1);

/// Sliding windows of k consecutive deltas.
std::vector<std::vector<double>> consecutive_vectors(const std::vector<SpacingSample>& samples, std::size_t k);

/// Component-wise mean of k-vectors.
std::vector<double> component_means(const std::vector<std::vector<double>>& vectors);

/// Uniformly weighted sample, kept sorted.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<double> samples, double T = 0.0, std::size_t k = 1);
  static EmpiricalDistribution from_spacings(const std::vector<SpacingSample>& samples, double T);

  [[nodiscard]] const std::vector<double>& samples() const { return x_; }
  [[nodiscard]] std::size_t size() const { return x_.size(); }
  [[nodiscard]] double T() const { return T_; }
  [[nodiscard]] std::size_t k() const { return k_; }
  /// Fraction of samples <= x.
  [[nodiscard]] double cdf(double x) const;
  /// Fraction of samples < x.
  [[nodiscard]] double cdf_below(double x) const;
  [[nodiscard]] double mean() const;
  /// Sample standard deviation (n - 1 denominator); NaN for fewer than 2 samples.
  [[nodiscard]] double stddev() const;
  [[nodiscard]] double max_abs_dev(double center = 1.0) const;

 private:
  std::vector<double> x_;
  double T_ = 0.0;
  std::size_t k_ = 1;
};

enum class Reference { trivial_delta, gue_surrogate };

std::string to_string(Reference r);
Reference parse_reference(const std::string& s);

/// Wigner surmise p(u) = (32/pi^2) u^2 exp(-4u^2/pi); the GUE surrogate.
double wigner_pdf(double u);
double wigner_cdf(double u);

/// Kolmogorov-Smirnov statistic sup |F_emp - F_ref|.
double distribution_distance(const EmpiricalDistribution& emp, Reference ref);
/// Two-sample statistic sup |F_a - F_b|.
double distribution_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

struct HistogramBin {
  double lo, hi;
  std::size_t count;
  double frequency;
};

std::vector<HistogramBin> histogram(const EmpiricalDistribution& emp, double lo, double hi, std::size_t bins);
/// bin_lo,bin_hi,count,frequency
void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins);

struct DispersionRow {
  double h = 0.0;
  double theta = 0.0;
  double T = 0.0;
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;
  double max_abs_dev = 0.0;
  double ks_trivial = 0.0;
  double ks_gue_surrogate = 0.0;
  std::string warning;

  [[nodiscard]] nlohmann::json to_json() const;
};

struct DispersionReport {
  std::vector<DispersionRow> rows;
  /// True when std is non-increasing in |h| at every height shared by
  /// several rows.
  [[nodiscard]] bool monotone_collapse() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// One row per list: spacings on |gamma| <= T with the given normalization.
/// A list with fewer than two zeros gives NaN statistics and a warning.
DispersionReport spacing_dispersion_report(const std::vector<ZeroList>& lists, double T,
                                           Normalization norm = Normalization::count_based,
                                           std::int64_t conductor = 1);

/// True when xs is non-increasing except for at most max_inversions rises.
bool decreasing_with_inversions(const std::vector<double>& xs, int max_inversions = 1);

/// Grid maximum of |zeta'/zeta(1/2 + h + it)| over t in [T, T + 1], zeta' by
/// a central difference of step 1e-5. A lower bound for the supremum.
double r_h_sup(double h, double T, double grid_step = 1e-3, const EvalConfig& cfg = {});

}  // namespace xishift
