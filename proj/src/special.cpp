#include "fraclan/special.hpp"

#include <gsl/gsl_sf_psi.h>

#include <cmath>
#include <stdexcept>

namespace fraclan {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double polygamma(int n, double x) {
    if (x > 0.0) {
        switch (n) {
            case 0: return gsl_sf_psi(x);
            case 1: return gsl_sf_psi_1(x);
            case 2: return gsl_sf_psi_n(2, x);
            default: throw std::invalid_argument("polygamma: order must be 0..2");
        }
    }
    if (x == std::floor(x)) throw std::domain_error("polygamma: pole at nonpositive integer");
    // Reflection: psi(x) = psi(1-x) - pi cot(pi x), differentiated n times.
    const double s = std::sin(kPi * x), c = std::cos(kPi * x);
    switch (n) {
        case 0: return polygamma(0, 1.0 - x) - kPi * c / s;
        case 1: return -polygamma(1, 1.0 - x) + kPi * kPi / (s * s);
        case 2: return polygamma(2, 1.0 - x) - 2.0 * kPi * kPi * kPi * c / (s * s * s);
        default: throw std::invalid_argument("polygamma: order must be 0..2");
    }
}

Jet3 lgamma_jet(const Jet3& x) {
    return compose(std::lgamma(x.v), polygamma(0, x.v), polygamma(1, x.v),
                   polygamma(2, x.v), x);
}

namespace {

// Bernoulli numbers B_2, B_4, ..., B_12.
constexpr double kBern[6] = {1.0 / 6.0,  -1.0 / 30.0, 1.0 / 42.0,
                             -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0};
constexpr int kEmTerms = 16;

template <typename S>
S hurwitz_zeta_impl(const S& s, double q) {
    // Direct terms k = 0 .. N-1, then Euler-Maclaurin tail at N+q.
    S acc(0.0);
    for (int k = 0; k < kEmTerms; ++k) acc = acc + pow(double(k) + q, -s);
    const double a = kEmTerms + q;
    acc = acc + pow(a, 1.0 - s) / (s - 1.0);
    acc = acc + 0.5 * pow(a, -s);
    // sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * a^{-s-2j+1}
    S rising = s;          // rising factorial s(s+1)...(s+k-1)
    double fact = 2.0;     // (2j)!
    for (int j = 1; j <= 6; ++j) {
        acc = acc + (kBern[j - 1] / fact) * rising * pow(a, -s - double(2 * j - 1));
        if (j < 6) {
            rising = rising * (s + double(2 * j - 1)) * (s + double(2 * j));
            fact *= (2 * j + 1) * (2 * j + 2);
        }
    }
    return acc;
}

template <>
double hurwitz_zeta_impl<double>(const double& s, double q) {
    double acc = 0.0;
    for (int k = 0; k < kEmTerms; ++k) acc += std::pow(k + q, -s);
    const double a = kEmTerms + q;
    acc += std::pow(a, 1.0 - s) / (s - 1.0);
    acc += 0.5 * std::pow(a, -s);
    double rising = s;
    double fact = 2.0;
    for (int j = 1; j <= 6; ++j) {
        acc += (kBern[j - 1] / fact) * rising * std::pow(a, -s - (2 * j - 1));
        if (j < 6) {
            rising *= (s + 2 * j - 1) * (s + 2 * j);
            fact *= (2 * j + 1) * (2 * j + 2);
        }
    }
    return acc;
}

}  // namespace

double hurwitz_zeta(double s, double q) {
    if (s <= 1.0) throw std::domain_error("hurwitz_zeta: requires s > 1");
    if (q <= 0.0) throw std::domain_error("hurwitz_zeta: requires q > 0");
    return hurwitz_zeta_impl<double>(s, q);
}

Jet3 hurwitz_zeta(const Jet3& s, double q) {
    if (s.v <= 1.0) throw std::domain_error("hurwitz_zeta: requires s > 1");
    if (q <= 0.0) throw std::domain_error("hurwitz_zeta: requires q > 0");
    return hurwitz_zeta_impl<Jet3>(s, q);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double kolmogorov_tail(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-18) break;
        sign = -sign;
    }
    double q = 2.0 * sum;
    if (q < 0.0) q = 0.0;
    if (q > 1.0) q = 1.0;
    return q;
}

}  // namespace fraclan
