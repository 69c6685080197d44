#pragma once

#include <utility>
#include <vector>

namespace anderlab {

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;      // unbiased
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

MomentSummary moments(const std::vector<double>& x);

double sample_mean(const std::vector<double>& x);
double sample_variance(const std::vector<double>& x);  // unbiased
double sample_covariance(const std::vector<double>& x, const std::vector<double>& y);

double normal_cdf(double z);  // standard normal

// Kolmogorov-Smirnov distance between the empirical law of x and a
// centered normal with standard deviation sigma.
double ks_distance_normal(std::vector<double> x, double sigma);

// Least-squares slope of y on z through the origin.
double slope_through_origin(const std::vector<double>& z, const std::vector<double>& y);

// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m);

}  // namespace anderlab
