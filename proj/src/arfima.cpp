#include "fraclan/arfima.hpp"

#include "fraclan/special.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace fraclan {

namespace {

using cd = std::complex<double>;

// P(z) = 1 + sum_j c_j z^j.
cd poly_eval(const Eigen::VectorXd& c, cd z) {
    cd acc(0.0, 0.0);
    for (int j = int(c.size()) - 1; j >= 0; --j) acc = (acc + c[j]) * z;
    return acc + 1.0;
}

// P'(z).
cd poly_deriv_eval(const Eigen::VectorXd& c, cd z) {
    cd acc(0.0, 0.0);
    for (int j = int(c.size()); j >= 1; --j) {
        acc *= z;
        acc += double(j) * c[j - 1];
    }
    return acc;
}

double q_value(const Eigen::VectorXd& c, double x) {
    return std::norm(poly_eval(c, std::polar(1.0, x)));
}

// d/dx |P(e^{ix})|^2.
double q_x_deriv(const Eigen::VectorXd& c, double x) {
    const cd z = std::polar(1.0, x);
    return 2.0 * std::real(std::conj(poly_eval(c, z)) * cd(0.0, 1.0) * z *
                           poly_deriv_eval(c, z));
}

// d/dc_a |P|^2 = 2 Re(z^a conj(P)).
double q_partial1(const Eigen::VectorXd& c, double x, int a) {
    const cd z = std::polar(1.0, x);
    return 2.0 * std::real(std::pow(z, a + 1) * std::conj(poly_eval(c, z)));
}

// d^2/dc_a dc_b |P|^2 = 2 cos((a-b)x); third partials vanish.
double q_partial2(double x, int a, int b) { return 2.0 * std::cos((a - b) * x); }

// Group derivative of the reciprocal factor 1/|Phi|^2 over AR indices.
double recip_partial(const Eigen::VectorXd& phi, double x, const std::vector<int>& a) {
    const double D = q_value(phi, x);
    switch (a.size()) {
        case 0:
            return 1.0 / D;
        case 1:
            return -q_partial1(phi, x, a[0]) / (D * D);
        case 2: {
            const double Da = q_partial1(phi, x, a[0]);
            const double Db = q_partial1(phi, x, a[1]);
            const double Dab = q_partial2(x, a[0], a[1]);
            return (2.0 * Da * Db - D * Dab) / (D * D * D);
        }
        case 3: {
            const double Da = q_partial1(phi, x, a[0]);
            const double Db = q_partial1(phi, x, a[1]);
            const double Dc = q_partial1(phi, x, a[2]);
            const double Dab = q_partial2(x, a[0], a[1]);
            const double Dac = q_partial2(x, a[0], a[2]);
            const double Dbc = q_partial2(x, a[1], a[2]);
            const double D2 = D * D;
            return -6.0 * Da * Db * Dc / (D2 * D2) +
                   2.0 * (Dab * Dc + Dac * Db + Dbc * Da) / (D2 * D);
        }
        default:
            throw std::invalid_argument("recip_partial: order > 3");
    }
}

// Group derivative of |Psi|^2 over MA indices.
double ma_partial(const Eigen::VectorXd& psi, double x, const std::vector<int>& a) {
    switch (a.size()) {
        case 0: return q_value(psi, x);
        case 1: return q_partial1(psi, x, a[0]);
        case 2: return q_partial2(x, a[0], a[1]);
        default: return 0.0;
    }
}

double log_two_sin_half(double x) { return std::log(2.0 * std::abs(std::sin(0.5 * x))); }

}  // namespace

double ArfimaModel::eval(const ThetaVector& theta, double x) const {
    if (x == 0.0) throw std::domain_error("ARFIMA density evaluated at x = 0");
    const double u = log_two_sin_half(x);
    double f = theta.sigma2() * std::exp(-2.0 * theta.d() * u);
    if (ma_order_ > 0) f *= q_value(theta.psi(), x);
    if (ar_order_ > 0) f /= q_value(theta.phi(), x);
    return f;
}

double ArfimaModel::eval_theta_partial(const ThetaVector& theta, double x,
                                       const std::vector<int>& idx) const {
    if (x == 0.0) throw std::domain_error("ARFIMA density evaluated at x = 0");
    int n_sigma = 0, n_d = 0;
    std::vector<int> ar_idx, ma_idx;
    for (int i : idx) {
        if (i == 0) ++n_sigma;
        else if (i == 1) ++n_d;
        else if (i < 2 + ar_order_) ar_idx.push_back(i - 2);
        else ma_idx.push_back(i - 2 - ar_order_);
    }
    if (n_sigma >= 2) return 0.0;
    if (ma_idx.size() >= 3) return 0.0;

    const double u = log_two_sin_half(x);
    double out = n_sigma == 1 ? 1.0 : theta.sigma2();
    out *= std::pow(-2.0 * u, n_d) * std::exp(-2.0 * theta.d() * u);
    out *= ma_order_ > 0 ? ma_partial(theta.psi(), x, ma_idx)
                         : (ma_idx.empty() ? 1.0 : 0.0);
    out *= ar_order_ > 0 ? recip_partial(theta.phi(), x, ar_idx)
                         : (ar_idx.empty() ? 1.0 : 0.0);
    return out;
}

double ArfimaModel::x_partial(const ThetaVector& theta, double x) const {
    theta.check_ranges();
    if (x == 0.0) throw std::domain_error("x_partial: x must be nonzero");
    double logderiv = -theta.d() / std::tan(0.5 * x);
    if (ma_order_ > 0)
        logderiv += q_x_deriv(theta.psi(), x) / q_value(theta.psi(), x);
    if (ar_order_ > 0)
        logderiv -= q_x_deriv(theta.phi(), x) / q_value(theta.phi(), x);
    return eval(theta, x) * logderiv;
}

bool ArfimaModel::has_closed_autocov(const ThetaVector& theta) const {
    return ar_order_ == 0 && ma_order_ == 0 && theta.d() < 0.5;
}

namespace {

// gamma(k)/sigma^2 for ARFIMA(0, d, 0) as a jet in d, for lags 0..n-1:
//   gamma(0) = Gamma(1-2d)/Gamma(1-d)^2,
//   gamma(k+1) = gamma(k) (k+d)/(k+1-d).
std::vector<Jet3> fractional_acv_jets(double d, int n) {
    const Jet3 D = Jet3::variable(d);
    std::vector<Jet3> g(n);
    g[0] = exp(lgamma_jet(1.0 - 2.0 * D) - 2.0 * lgamma_jet(1.0 - D));
    for (int k = 1; k < n; ++k)
        g[k] = g[k - 1] * ((double(k - 1) + D) / (double(k) - D));
    return g;
}

}  // namespace

double ArfimaModel::autocov(const ThetaVector& theta, long k) const {
    if (!has_closed_autocov(theta)) {
        if (theta.d() >= 0.5)
            throw std::domain_error("ARFIMA autocovariance undefined for d >= 1/2");
        return SpectralModel::autocov(theta, k);
    }
    return autocov_sequence(theta, int(std::abs(k)) + 1)[int(std::abs(k))];
}

double ArfimaModel::autocov_partial(const ThetaVector& theta, long k,
                                    const std::vector<int>& idx) const {
    if (!has_closed_autocov(theta)) return SpectralModel::autocov_partial(theta, k, idx);
    return autocov_partial_sequence(theta, int(std::abs(k)) + 1, idx)[int(std::abs(k))];
}

Eigen::VectorXd ArfimaModel::autocov_sequence(const ThetaVector& theta, int n) const {
    if (!has_closed_autocov(theta)) return SpectralModel::autocov_sequence(theta, n);
    const auto jets = fractional_acv_jets(theta.d(), n);
    Eigen::VectorXd out(n);
    for (int k = 0; k < n; ++k) out[k] = theta.sigma2() * jets[k].v;
    return out;
}

Eigen::VectorXd ArfimaModel::autocov_partial_sequence(const ThetaVector& theta, int n,
                                                      const std::vector<int>& idx) const {
    if (!has_closed_autocov(theta))
        return SpectralModel::autocov_partial_sequence(theta, n, idx);
    int n_sigma = 0, n_d = 0;
    for (int i : idx) (i == 0 ? n_sigma : n_d)++;
    Eigen::VectorXd out(n);
    if (n_sigma >= 2) {
        out.setZero();
        return out;
    }
    const double scale = n_sigma == 1 ? 1.0 : theta.sigma2();
    const auto jets = fractional_acv_jets(theta.d(), n);
    for (int k = 0; k < n; ++k) out[k] = scale * jets[k].deriv(n_d);
    return out;
}

}  // namespace fraclan
