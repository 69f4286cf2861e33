#ifndef FRACLAN_STATS_HPP
#define FRACLAN_STATS_HPP

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace fraclan {

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int n = 0;
};

// One-sample Kolmogorov-Smirnov test against a cdf callable; asymptotic
// p-value with the standard finite-sample correction.
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);
// Two-sample variant.
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);

double normal_cdf_value(double x, double mean, double sd);

// Least-squares slope of y against x.
double regression_slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

double sample_mean(const std::vector<double>& v);
double sample_sd(const std::vector<double>& v);
// Linear-interpolation quantile, q in [0, 1].
double sample_quantile(std::vector<double> v, double q);
double sample_median(std::vector<double> v);

}  // namespace fraclan

#endif
