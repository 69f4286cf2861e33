#include "fraclan/spectral_model.hpp"

#include "fraclan/arfima.hpp"
#include "fraclan/fgn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fraclan {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void SpectralModel::check_args(const ThetaVector& theta, double x) const {
    theta.check_ranges();
    if (theta.layout != layout()) throw std::domain_error("theta layout mismatch");
    if (x == 0.0 && alpha(theta) > 0.0)
        throw std::domain_error("density singular at x = 0 for alpha(theta) > 0");
}

double SpectralModel::density(const ThetaVector& theta, double x) const {
    check_args(theta, x);
    return eval(theta, x);
}

double SpectralModel::theta_partial(const ThetaVector& theta, double x,
                                    const std::vector<int>& idx) const {
    check_args(theta, x);
    if (idx.empty() || idx.size() > 3)
        throw std::invalid_argument("theta_partial: multi-index length must be 1..3");
    for (int i : idx)
        if (i < 0 || i >= dim()) throw std::invalid_argument("theta_partial: index out of range");
    if (deriv_scheme == DerivScheme::FiniteDifference) return fd_theta_partial(theta, x, idx);
    return eval_theta_partial(theta, x, idx);
}

double SpectralModel::fd_theta_partial(const ThetaVector& theta, double x,
                                       const std::vector<int>& idx) const {
    // Central differences, nested over the multi-index; the step balances
    // truncation against roundoff amplified by the total order.
    static const double steps[4] = {0.0, 5e-6, 1e-4, 6e-4};
    const double h0 = steps[idx.size()];
    std::vector<int> rest(idx.begin() + 1, idx.end());
    const int i = idx[0];
    const double h = h0 * std::max(1.0, std::abs(theta.values[i]));
    ThetaVector up = theta, dn = theta;
    up.values[i] += h;
    dn.values[i] -= h;
    if (rest.empty()) return (eval(up, x) - eval(dn, x)) / (2.0 * h);
    return (fd_theta_partial(up, x, rest) - fd_theta_partial(dn, x, rest)) / (2.0 * h);
}

bool SpectralModel::has_closed_autocov(const ThetaVector&) const { return false; }

double SpectralModel::autocov(const ThetaVector& theta, long k) const {
    const double a = alpha(theta);
    if (a >= 1.0) throw std::domain_error("autocovariance undefined: alpha(theta) >= 1");
    auto f = [&](double x) { return std::cos(k * x) * eval(theta, x); };
    return integrate_graded(f, quad, int(std::abs(k))) / kPi;
}

double SpectralModel::autocov_partial(const ThetaVector& theta, long k,
                                      const std::vector<int>& idx) const {
    auto f = [&](double x) { return std::cos(k * x) * eval_theta_partial(theta, x, idx); };
    return integrate_graded(f, quad, int(std::abs(k))) / kPi;
}

Eigen::VectorXd SpectralModel::autocov_sequence(const ThetaVector& theta, int n) const {
    Eigen::VectorXd c(n);
    for (int k = 0; k < n; ++k) c[k] = autocov(theta, k);
    return c;
}

Eigen::VectorXd SpectralModel::autocov_partial_sequence(const ThetaVector& theta, int n,
                                                        const std::vector<int>& idx) const {
    Eigen::VectorXd c(n);
    for (int k = 0; k < n; ++k) c[k] = autocov_partial(theta, k, idx);
    return c;
}

// ---- white noise -----------------------------------------------------------

double WhiteNoiseModel::eval(const ThetaVector& theta, double) const {
    return theta.sigma2();
}

double WhiteNoiseModel::eval_theta_partial(const ThetaVector&, double,
                                           const std::vector<int>& idx) const {
    return idx.size() == 1 ? 1.0 : 0.0;
}

double WhiteNoiseModel::autocov(const ThetaVector& theta, long k) const {
    return k == 0 ? theta.sigma2() : 0.0;
}

double WhiteNoiseModel::autocov_partial(const ThetaVector&, long k,
                                        const std::vector<int>& idx) const {
    return (k == 0 && idx.size() == 1) ? 1.0 : 0.0;
}

std::unique_ptr<SpectralModel> make_model(ModelLayout layout, int ar_order, int ma_order) {
    switch (layout) {
        case ModelLayout::WhiteNoise: return std::make_unique<WhiteNoiseModel>();
        case ModelLayout::Fgn: return std::make_unique<FgnModel>();
        case ModelLayout::Arfima: return std::make_unique<ArfimaModel>(ar_order, ma_order);
    }
    throw std::invalid_argument("make_model: bad layout");
}

// ---- bound diagnostics -----------------------------------------------------

std::vector<double> GridSpec::points() const {
    std::vector<double> xs(count);
    if (count == 1) {
        xs[0] = min;
        return xs;
    }
    if (spacing == Spacing::Log) {
        const double lmin = std::log(min), lmax = std::log(max);
        for (int i = 0; i < count; ++i)
            xs[i] = std::exp(lmin + (lmax - lmin) * i / (count - 1));
    } else {
        for (int i = 0; i < count; ++i) xs[i] = min + (max - min) * i / (count - 1);
    }
    return xs;
}

std::vector<std::vector<int>> all_multi_indices(int m, int max_order) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // Nondecreasing index tuples; Schwarz symmetry makes these exhaustive.
    auto rec = [&](auto&& self, int start, int remaining) -> void {
        if (!cur.empty()) out.push_back(cur);
        if (remaining == 0) return;
        for (int i = start; i < m; ++i) {
            cur.push_back(i);
            self(self, i, remaining - 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, max_order);
    return out;
}

BoundCheckReport verify_assumption_bounds(const SpectralModel& model,
                                          const std::vector<ThetaVector>& theta_grid,
                                          double delta, const GridSpec& x_grid) {
    if (theta_grid.empty()) throw std::invalid_argument("empty theta grid");
    const std::vector<double> xs = x_grid.points();
    for (double x : xs)
        if (x == 0.0) throw std::invalid_argument("x grid must avoid 0");

    BoundCheckReport report;
    report.delta = delta;
    report.theta_points = int(theta_grid.size());
    report.x_points = int(xs.size());

    const auto indices = all_multi_indices(model.dim(), 3);
    double c1 = std::numeric_limits<double>::infinity();
    double c2 = 0.0, c2x = 0.0, c2t = 0.0;
    bool ok = true;
    for (const ThetaVector& theta : theta_grid) {
        const double a = model.alpha(theta);
        for (double x : xs) {
            const double ax = std::abs(x);
            const double f = model.density(theta, x);
            if (!(f > 0.0) || !std::isfinite(f)) ok = false;
            c1 = std::min(c1, f / std::pow(ax, -a + delta));
            c2 = std::max(c2, f / std::pow(ax, -a - delta));
            const double fx = model.x_partial(theta, x);
            c2x = std::max(c2x, std::abs(fx) / std::pow(ax, -a - 1.0 - delta));
            for (const auto& idx : indices) {
                const double df = model.theta_partial(theta, x, idx);
                if (!std::isfinite(df)) ok = false;
                c2t = std::max(c2t, std::abs(df) / std::pow(ax, -a - delta));
            }
        }
    }
    report.c1_density = c1;
    report.c2_density = c2;
    report.c2_x_partial = c2x;
    report.c2_theta_partial = c2t;
    report.pass = ok && c1 > 0.0 && std::isfinite(c2) && std::isfinite(c2x) &&
                  std::isfinite(c2t);
    return report;
}

}  // namespace fraclan
