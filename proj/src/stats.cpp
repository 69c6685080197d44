#include "anderlab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "anderlab/errors.hpp"

namespace anderlab {

double sample_mean(const std::vector<double>& x) {
  long double acc = 0.0L;
  for (double v : x) acc += v;
  return static_cast<double>(acc / static_cast<long double>(x.size()));
}

double sample_variance(const std::vector<double>& x) {
  const double m = sample_mean(x);
  long double acc = 0.0L;
  for (double v : x) acc += (static_cast<long double>(v) - m) * (static_cast<long double>(v) - m);
  return static_cast<double>(acc / static_cast<long double>(x.size() - 1));
}

double sample_covariance(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = sample_mean(x), my = sample_mean(y);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i)
    acc += (static_cast<long double>(x[i]) - mx) * (static_cast<long double>(y[i]) - my);
  return static_cast<double>(acc / static_cast<long double>(x.size() - 1));
}

MomentSummary moments(const std::vector<double>& x) {
  MomentSummary s;
  const std::size_t n = x.size();
  s.mean = sample_mean(x);
  long double m2 = 0.0L, m3 = 0.0L, m4 = 0.0L;
  for (double v : x) {
    const long double d = static_cast<long double>(v) - s.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<long double>(n);
  m3 /= static_cast<long double>(n);
  m4 /= static_cast<long double>(n);
  s.variance = static_cast<double>(m2 * n / static_cast<long double>(n - 1));
  if (m2 > 0.0L) {
    s.skewness = static_cast<double>(m3 / std::pow(static_cast<double>(m2), 1.5));
    s.excess_kurtosis = static_cast<double>(m4 / (m2 * m2)) - 3.0;
  }
  return s;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_distance_normal(std::vector<double> x, double sigma) {
  if (x.empty()) throw InsufficientSamples("KS distance needs samples");
  if (!(sigma > 0.0)) return 1.0;
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = normal_cdf(x[i] / sigma);
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - f,
                             f - static_cast<double>(i) / n));
  }
  return d;
}

double slope_through_origin(const std::vector<double>& z, const std::vector<double>& y) {
  long double num = 0.0L, den = 0.0L;
  for (std::size_t i = 0; i < z.size(); ++i) {
    num += static_cast<long double>(y[i]) * z[i];
    den += static_cast<long double>(z[i]) * z[i];
  }
  if (den == 0.0L) return 0.0;
  return static_cast<double>(num / den);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
  if (m < 1) throw InvalidConfig("quadrature order must be positive");
  std::vector<double> x(static_cast<std::size_t>(m)), w(static_cast<std::size_t>(m));
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double t = std::cos(pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_m(t) and P'_m(t).
      double p0 = 1.0, p1 = t;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -t;
    x[static_cast<std::size_t>(m - 1 - i)] = t;
    const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(m - 1 - i)] = wi;
  }
  return {x, w};
}

}  // namespace anderlab
