#include "fraclan/stats.hpp"

#include "fraclan/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fraclan {

namespace {
// Finite-sample corrected asymptotic p-value for KS statistic d with
// effective sample size r.
double ks_p_value(double d, double r) {
    const double sr = std::sqrt(r);
    return kolmogorov_tail((sr + 0.12 + 0.11 / sr) * d);
}
}  // namespace

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_test: empty sample");
    std::sort(sample.begin(), sample.end());
    const int n = int(sample.size());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - double(i) / n));
        d = std::max(d, std::abs(double(i + 1) / n - f));
    }
    return KsResult{d, ks_p_value(d, double(n)), n};
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_test_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const int na = int(a.size()), nb = int(b.size());
    double d = 0.0;
    int i = 0, j = 0;
    while (i < na && j < nb) {
        const double va = a[i], vb = b[j];
        if (va <= vb) ++i;
        if (vb <= va) ++j;
        d = std::max(d, std::abs(double(i) / na - double(j) / nb));
    }
    const double r = double(na) * nb / double(na + nb);
    return KsResult{d, ks_p_value(d, r), na + nb};
}

double normal_cdf_value(double x, double mean, double sd) {
    return normal_cdf((x - mean) / sd);
}

double regression_slope(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("regression_slope: need matched size >= 2");
    const double mx = x.mean(), my = y.mean();
    const Eigen::ArrayXd dx = x.array() - mx;
    const double denom = dx.square().sum();
    if (denom == 0.0) throw std::invalid_argument("regression_slope: degenerate x");
    return (dx * (y.array() - my)).sum() / denom;
}

double sample_mean(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("sample_mean: empty");
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / double(v.size());
}

double sample_sd(const std::vector<double>& v) {
    if (v.size() < 2) throw std::invalid_argument("sample_sd: need >= 2 points");
    const double m = sample_mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / double(v.size() - 1));
}

double sample_quantile(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("sample_quantile: empty");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("sample_quantile: q in [0,1]");
    std::sort(v.begin(), v.end());
    const double pos = q * double(v.size() - 1);
    const std::size_t lo = std::size_t(pos);
    if (lo + 1 >= v.size()) return v.back();
    const double frac = pos - double(lo);
    return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

double sample_median(std::vector<double> v) { return sample_quantile(std::move(v), 0.5); }

}  // namespace fraclan
