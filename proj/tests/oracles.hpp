// Independent reference computations used only by the tests. Nothing here
// calls into the library's evaluation code paths.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// Reference values (50-digit computations, rounded).
inline constexpr double kLogGamma1pI_re = -0.650923199301856338885;
inline constexpr double kLogGamma1pI_im = -0.301640320467533197888;
inline constexpr double kXiHalf = 0.497120778188314109913;
inline constexpr double kFirstZero = 14.1347251417346937905;
inline constexpr double kCatalan = 0.915965594177219015055;
inline constexpr double kMinusZetaLogDeriv32 = 1.50523535578826791942;
inline const std::vector<double> kZetaZeros{14.134725141734695, 21.022039638771556, 25.01085758014569,
                                            30.424876125859512, 32.93506158773919,  37.586178158825675,
                                            40.9187190121475,   43.327073280915,    48.00515088116716,
                                            49.7738324776723,   52.970321477714464};

// log(1 + w) with a short series for small |w| so that 1 + w is never rounded.
inline cplx log1p_c(cplx w) {
  if (std::abs(w) < 1e-3) {
    cplx term = w, sum = 0.0;
    for (int k = 1; k <= 8; ++k) {
      sum += (k % 2 ? 1.0 : -1.0) * term / static_cast<double>(k);
      term *= w;
    }
    return sum;
  }
  return std::log(1.0 + w);
}

// Gauss/Euler limit: log Gamma(z) = lim z log n - log z - sum_{k<=n} log(1 + z/k).
inline cplx log_gamma_limit(cplx z, std::int64_t n) {
  cplx s = 0.0, c = 0.0;  // Kahan
  for (std::int64_t k = n; k >= 1; --k) {
    const cplx y = log1p_c(z / static_cast<double>(k)) - c;
    const cplx t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return z * std::log(static_cast<double>(n)) - std::log(z) - s;
}

// Three-level Richardson extrapolation in 1/n of the limit above.
inline cplx log_gamma_richardson(cplx z, std::int64_t n) {
  const cplx a = log_gamma_limit(z, n), b = log_gamma_limit(z, 2 * n), c = log_gamma_limit(z, 4 * n);
  const cplx ab = 2.0 * b - a, bc = 2.0 * c - b;
  return (4.0 * bc - ab) / 3.0;
}

// sum_{k<N} (k+a)^{-s} plus an integral tail with two end corrections; Re s > 1.
inline cplx hurwitz_direct(cplx s, double a, std::int64_t N) {
  cplx sum = 0.0;
  for (std::int64_t k = N - 1; k >= 0; --k) sum += std::pow(static_cast<double>(k) + a, -s);
  const double x = static_cast<double>(N) + a;
  return sum + std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s) + s / 12.0 * std::pow(x, -s - 1.0);
}

// Catalan's constant from the alternating series, pairwise averaged partial sums.
inline double catalan_alternating(int n) {
  std::vector<double> partial;
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    s += (k % 2 ? -1.0 : 1.0) / ((2.0 * k + 1) * (2.0 * k + 1));
    partial.push_back(s);
  }
  // Repeated averaging of consecutive partial sums (Euler transform).
  for (int level = 0; level < 20 && partial.size() > 1; ++level) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) next.push_back(0.5 * (partial[i] + partial[i + 1]));
    partial.swap(next);
  }
  return partial.back();
}

// Roots of f on [a, b]: coarse sign scan then bisection to full precision.
inline std::vector<double> bisect_roots(const std::function<double(double)>& f, double a, double b, double step) {
  std::vector<double> out;
  double x0 = a, f0 = f(a);
  while (x0 < b) {
    const double x1 = std::min(b, x0 + step), f1 = f(x1);
    if ((f0 < 0) != (f1 < 0)) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
        const double m = 0.5 * (lo + hi), fm = f(m);
        if ((fm < 0) == (flo < 0)) {
          lo = m;
          flo = fm;
        } else {
          hi = m;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

inline std::vector<int> smallest_prime_factor(int n) {
  std::vector<int> spf(n + 1, 0);
  for (int i = 2; i <= n; ++i)
    if (spf[i] == 0)
      for (int j = i; j <= n; j += i)
        if (spf[j] == 0) spf[j] = i;
  return spf;
}

// sum_{n<=N} Lambda(n) n^{-3/2}, plus the tail 2/sqrt(N) from the prime number theorem.
inline double minus_zeta_log_deriv_32(int N) {
  const auto spf = smallest_prime_factor(N);
  double s = 0.0;
  for (int n = N; n >= 2; --n) {
    const int p = spf[n];
    int m = n;
    while (m % p == 0) m /= p;
    if (m == 1) s += std::log(static_cast<double>(p)) * std::pow(static_cast<double>(n), -1.5);
  }
  return s + 2.0 / std::sqrt(static_cast<double>(N));
}

inline int mobius(int n) {
  int m = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  return n > 1 ? -m : m;
}

inline std::int64_t phi(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}

// Number of primitive characters mod q: sum_{d | q} mu(d) phi(q / d).
inline std::int64_t primitive_count(int q) {
  std::int64_t s = 0;
  for (int d = 1; d <= q; ++d)
    if (q % d == 0) s += mobius(d) * phi(q / d);
  return s;
}

// Inverse of the Wigner CDF by bisection on a Simpson-integrated density.
inline double wigner_density(double u) { return 32.0 / (pi * pi) * u * u * std::exp(-4.0 * u * u / pi); }

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
