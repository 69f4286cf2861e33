#include "fraclan/fgn.hpp"

#include "fraclan/special.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclan {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double c2_constant(double hurst) {
    if (hurst <= 0.0 || hurst >= 1.0) throw std::domain_error("c2_constant: 0 < H < 1");
    return kPi / (hurst * std::tgamma(2.0 * hurst) * std::sin(hurst * kPi));
}

double fgn_lattice_sum(double x, double hurst, long k_tail) {
    if (x == 0.0) throw std::domain_error("fgn_lattice_sum: x must be nonzero");
    if (k_tail < 1) throw std::invalid_argument("fgn_lattice_sum: K_tail >= 1");
    const double s = 2.0 * hurst + 1.0;
    double acc = std::pow(std::abs(x), -s);
    for (long k = 1; k <= k_tail; ++k)
        acc += std::pow(std::abs(x + kTwoPi * k), -s) + std::pow(std::abs(x - kTwoPi * k), -s);
    // Midpoint-rule tail: both tails behave like (2 pi u)^{-s} for u > K+1/2.
    acc += 2.0 * std::pow(kTwoPi, -s) * std::pow(k_tail + 0.5, 1.0 - s) / (s - 1.0);
    return acc;
}

double fgn_lattice_sum_em(double x, double hurst) {
    if (x == 0.0) throw std::domain_error("fgn_lattice_sum_em: x must be nonzero");
    const double s = 2.0 * hurst + 1.0;
    const double q = std::abs(x) / kTwoPi;  // in (0, 1/2] for |x| <= pi
    return std::pow(kTwoPi, -s) * (hurwitz_zeta(s, q) + hurwitz_zeta(s, 1.0 - q));
}

double fgn_autocovariance_closed(long k, double sigma2, double hurst) {
    if (sigma2 <= 0.0 || hurst <= 0.0 || hurst >= 1.0)
        throw std::domain_error("fgn_autocovariance_closed: invalid (sigma2, H)");
    const long a = std::abs(k);
    auto p = [&](long t) { return t == 0 ? 0.0 : std::pow(std::abs(double(t)), 2.0 * hurst); };
    return 0.5 * sigma2 * (p(a + 1) - 2.0 * p(a) + p(a - 1));
}

Jet3 FgnModel::shape_jet(double hurst, double x) const {
    // f / sigma^2 = A(H) s(x) S(H, x) with A = Gamma(2H+1) sin(pi H),
    // S the lattice sum; H carried as the jet variable.
    const Jet3 H = Jet3::variable(hurst);
    const Jet3 A = exp(lgamma_jet(2.0 * H + 1.0) + log(sin(kPi * H)));
    const Jet3 s_exp = 2.0 * H + 1.0;
    const double q = std::abs(x) / kTwoPi;
    const Jet3 S = pow(kTwoPi, -s_exp) *
                   (hurwitz_zeta(s_exp, q) + hurwitz_zeta(s_exp, 1.0 - q));
    // |e^{ix} - 1|^2 = 4 sin^2(x/2); the 2 - 2cos(x) form cancels
    // catastrophically for small x.
    const double half_sin = std::sin(0.5 * x);
    const double sx = 4.0 * half_sin * half_sin;
    return A * S * sx;
}

double FgnModel::eval(const ThetaVector& theta, double x) const {
    return theta.sigma2() * shape_jet(theta.hurst(), x).v;
}

double FgnModel::eval_theta_partial(const ThetaVector& theta, double x,
                                    const std::vector<int>& idx) const {
    int n_sigma = 0, n_hurst = 0;
    for (int i : idx) (i == 0 ? n_sigma : n_hurst)++;
    if (n_sigma >= 2) return 0.0;  // f linear in sigma^2
    const double g = shape_jet(theta.hurst(), x).deriv(n_hurst);
    return n_sigma == 1 ? g : theta.sigma2() * g;
}

double FgnModel::x_partial(const ThetaVector& theta, double x) const {
    theta.check_ranges();
    if (x == 0.0) throw std::domain_error("x_partial: x must be nonzero");
    const double H = theta.hurst();
    const double A = std::exp(std::lgamma(2.0 * H + 1.0)) * std::sin(kPi * H);
    const double s = 2.0 * H + 1.0;
    const double ax = std::abs(x);
    const double q = ax / kTwoPi;
    const double S = std::pow(kTwoPi, -s) * (hurwitz_zeta(s, q) + hurwitz_zeta(s, 1.0 - q));
    // dS/d|x| = (2pi)^{-s-1} s [Z(s+1, 1-q) - Z(s+1, q)]
    double Sx = std::pow(kTwoPi, -s - 1.0) * s *
                (hurwitz_zeta(s + 1.0, 1.0 - q) - hurwitz_zeta(s + 1.0, q));
    if (x < 0.0) Sx = -Sx;  // S even in x
    const double half_sin = std::sin(0.5 * x);
    const double sx = 4.0 * half_sin * half_sin;
    const double sxp = 2.0 * std::sin(x);
    return theta.sigma2() * A * (sxp * S + sx * Sx);
}

double FgnModel::autocov(const ThetaVector& theta, long k) const {
    return fgn_autocovariance_closed(k, theta.sigma2(), theta.hurst());
}

double FgnModel::autocov_partial(const ThetaVector& theta, long k,
                                 const std::vector<int>& idx) const {
    int n_sigma = 0, n_hurst = 0;
    for (int i : idx) (i == 0 ? n_sigma : n_hurst)++;
    if (n_sigma >= 2) return 0.0;
    const Jet3 H = Jet3::variable(theta.hurst());
    const long a = std::abs(k);
    auto p = [&](long t) {
        return t == 0 ? Jet3(0.0) : exp(2.0 * H * std::log(std::abs(double(t))));
    };
    const Jet3 g = 0.5 * (p(a + 1) - 2.0 * p(a) + p(a - 1));
    const double gd = g.deriv(n_hurst);
    return n_sigma == 1 ? gd : theta.sigma2() * gd;
}

}  // namespace fraclan
