#include "fraclan/sampler.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace fraclan {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Iterative radix-2 complex FFT, forward sign -1, no normalization.
void fft_pow2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -kTwoPi / double(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}
}  // namespace

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master ^ (0xa5a5a5a55a5a5a5aull + index * 0x9e3779b97f4a7c15ull);
    splitmix64_next(state);
    return splitmix64_next(state);
}

double GaussianRng::uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

double GaussianRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return r * std::cos(kTwoPi * u2);
}

Eigen::VectorXd GaussianRng::normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
}

Eigen::VectorXd sample_cholesky(const CholeskyFactor& gamma_chol, GaussianRng& rng) {
    const Eigen::VectorXd z = rng.normal_vector(gamma_chol.n());
    return gamma_chol.lower().triangularView<Eigen::Lower>() * z;
}

CirculantSampler::CirculantSampler(const SpectralModel& model, const ThetaVector& theta,
                                   int n, double neg_tol)
    : n_(n) {
    theta.validate();
    int m = 2;
    while (m < 2 * n) m *= 2;
    m_ = m;
    const Eigen::VectorXd gamma = model.autocov_sequence(theta, m / 2 + 1);

    std::vector<std::complex<double>> c(m);
    for (int k = 0; k <= m / 2; ++k) c[k] = gamma[k];
    for (int k = m / 2 + 1; k < m; ++k) c[k] = gamma[m - k];
    fft_pow2(c);

    sqrt_lambda_.resize(m);
    double max_ev = 0.0;
    for (int k = 0; k < m; ++k) max_ev = std::max(max_ev, c[k].real());
    for (int k = 0; k < m; ++k) {
        double ev = c[k].real();
        if (ev < -neg_tol * max_ev)
            throw EmbeddingError("circulant embedding not nonnegative definite (eigenvalue " +
                                 std::to_string(ev) + ")");
        if (ev < 0.0) ev = 0.0;
        sqrt_lambda_[k] = std::sqrt(ev);
    }
}

Eigen::VectorXd CirculantSampler::apply(const Eigen::VectorXd& z) const {
    if (z.size() != m_) throw std::invalid_argument("CirculantSampler::apply: need m normals");
    const int m = m_;
    std::vector<std::complex<double>> v(m);
    const double inv_sqrt2 = std::sqrt(0.5);
    v[0] = sqrt_lambda_[0] * z[0];
    v[m / 2] = sqrt_lambda_[m / 2] * z[m / 2];
    for (int k = 1; k < m / 2; ++k) {
        const std::complex<double> g(z[k], z[m - k]);
        v[k] = sqrt_lambda_[k] * inv_sqrt2 * g;
        v[m - k] = std::conj(v[k]);
    }
    fft_pow2(v);
    Eigen::VectorXd x(n_);
    const double scale = 1.0 / std::sqrt(double(m));
    for (int i = 0; i < n_; ++i) x[i] = scale * v[i].real();
    return x;
}

Eigen::VectorXd CirculantSampler::sample(GaussianRng& rng) const {
    return apply(rng.normal_vector(m_));
}

Eigen::VectorXd fbm_path_from_fgn(const Eigen::VectorXd& increments) {
    Eigen::VectorXd path(increments.size());
    double acc = 0.0;
    for (long i = 0; i < increments.size(); ++i) {
        acc += increments[i];
        path[i] = acc;
    }
    return path;
}

Eigen::VectorXd quadratic_form_spectrum(const Eigen::MatrixXd& a,
                                        const CholeskyFactor& gamma_chol) {
    if (a.rows() != a.cols() || a.rows() != gamma_chol.n())
        throw std::invalid_argument("quadratic_form_spectrum: dimension mismatch");
    const Eigen::MatrixXd& l = gamma_chol.lower();
    const Eigen::MatrixXd m = l.transpose() * a * l;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("quadratic_form_spectrum: eigensolver failed");
    return solver.eigenvalues();
}

}  // namespace fraclan
