#ifndef FRACLAN_SAMPLER_HPP
#define FRACLAN_SAMPLER_HPP

#include "fraclan/spectral_model.hpp"
#include "fraclan/toeplitz.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace fraclan {

// splitmix64 step; used to derive independent per-replication seeds so that
// results do not depend on how replications are distributed over workers.
std::uint64_t splitmix64_next(std::uint64_t& state);
std::uint64_t child_seed(std::uint64_t master, std::uint64_t index);

// mt19937_64 + Box-Muller.  Hand-rolled transform so streams are identical
// across standard library implementations.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

    double uniform();  // [0, 1)
    double normal();
    Eigen::VectorXd normal_vector(int n);

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct SamplePath {
    Eigen::VectorXd values;
    std::uint64_t seed = 0;
    std::string method;  // cholesky | circulant
};

// x = L z with Gamma = L L^T.
Eigen::VectorXd sample_cholesky(const CholeskyFactor& gamma_chol, GaussianRng& rng);

struct EmbeddingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact stationary Gaussian sampling by circulant embedding of the
// autocovariance sequence (power-of-two FFT length M >= 2n).  Throws
// EmbeddingError when the embedding has a significantly negative eigenvalue;
// eigenvalues in [-neg_tol * max, 0) are clamped to zero.
class CirculantSampler {
public:
    CirculantSampler(const SpectralModel& model, const ThetaVector& theta, int n,
                     double neg_tol = 1e-12);

    int n() const { return n_; }
    int noise_dim() const { return m_; }
    // Deterministic linear map from m standard normals to the sample.
    Eigen::VectorXd apply(const Eigen::VectorXd& z) const;
    Eigen::VectorXd sample(GaussianRng& rng) const;

private:
    int n_;
    int m_;
    Eigen::VectorXd sqrt_lambda_;
};

// Cumulative sums: the self-similar path from its stationary increments.
Eigen::VectorXd fbm_path_from_fgn(const Eigen::VectorXd& increments);

// Eigenvalues of L^T A L (the spectrum of Gamma^{1/2} A Gamma^{1/2}), sorted
// ascending; the law of x^T A x for x ~ N(0, Gamma) is the weighted chi^2 with
// these weights.
Eigen::VectorXd quadratic_form_spectrum(const Eigen::MatrixXd& a,
                                        const CholeskyFactor& gamma_chol);

}  // namespace fraclan

#endif
