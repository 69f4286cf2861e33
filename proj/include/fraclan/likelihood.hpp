#ifndef FRACLAN_LIKELIHOOD_HPP
#define FRACLAN_LIKELIHOOD_HPP

#include "fraclan/spectral_model.hpp"
#include "fraclan/toeplitz.hpp"

#include <map>
#include <vector>

namespace fraclan {

// Cached per-(theta, n) state for exact Gaussian likelihood work: the scaled
// Toeplitz matrix T = 2 pi Gamma_n, its Cholesky factor, and lazily built
// derivative Toeplitz rows, the explicit inverse, and inverse-times-derivative
// products needed by the trace functionals.
class LikelihoodContext {
public:
    LikelihoodContext(const SpectralModel& model, const ThetaVector& theta, int n);

    const ThetaVector& theta() const { return theta_; }
    const SpectralModel& model() const { return model_; }
    int n() const { return n_; }
    int dim() const { return theta_.dim(); }

    const Eigen::VectorXd& t_row() const { return t_row_; }
    const CholeskyFactor& chol() const { return chol_; }
    double log_det() const { return chol_.log_det(); }

    // First row of D_idx = T_n(partial_idx f); idx sorted internally.
    const Eigen::VectorXd& deriv_row(const std::vector<int>& idx) const;
    Eigen::VectorXd apply_deriv(const std::vector<int>& idx,
                                const Eigen::VectorXd& v) const;
    // Dense D_idx * V (column-batched).
    Eigen::MatrixXd apply_deriv(const std::vector<int>& idx,
                                const Eigen::MatrixXd& v) const;

    // Explicit inverse B = T^{-1} (built on first use).
    const Eigen::MatrixXd& inverse() const;
    // tr(B D_idx) via diagonal sums of B.
    double trace_inv_deriv(const std::vector<int>& idx) const;
    // M_idx = B D_idx (built and cached on first use).
    const Eigen::MatrixXd& inv_deriv_product(const std::vector<int>& idx) const;
    // tr(B D_a B D_b).
    double trace_pair(const std::vector<int>& a, const std::vector<int>& b) const;
    // tr(B D_j B D_k B D_l), first-order indices.
    double trace_triple(int j, int k, int l) const;

    void drop_products() const;  // free B-product caches, keep rows + factor

private:
    const SpectralModel& model_;
    ThetaVector theta_;
    int n_;
    Eigen::VectorXd t_row_;
    CholeskyFactor chol_;
    mutable std::map<std::vector<int>, Eigen::VectorXd> rows_;
    mutable Eigen::MatrixXd inv_;
    mutable bool has_inv_ = false;
    mutable Eigen::VectorXd inv_diag_sums_;
    mutable std::map<std::vector<int>, Eigen::MatrixXd> products_;
};

// log p_theta(x) for x ~ N(0, Gamma_n); the n/2 log(2 pi) terms cancel against
// the 2 pi scaling of T, leaving -1/2 log det T - pi x^T T^{-1} x.
double log_density(const LikelihoodContext& ctx, const Eigen::VectorXd& x);
Eigen::VectorXd log_density_batch(const LikelihoodContext& ctx,
                                  const Eigen::MatrixXd& x_cols);

// F_n = log dP_theta/dP_theta0 evaluated on a sample drawn under theta0.
double log_likelihood_ratio(const LikelihoodContext& at_theta,
                            const LikelihoodContext& at_theta0,
                            const Eigen::VectorXd& x);
Eigen::VectorXd log_likelihood_ratio_batch(const LikelihoodContext& at_theta,
                                           const LikelihoodContext& at_theta0,
                                           const Eigen::MatrixXd& x_cols);

// Gradient of log p_theta at the context's theta.
Eigen::VectorXd score(const LikelihoodContext& ctx, const Eigen::VectorXd& x);
Eigen::MatrixXd score_batch(const LikelihoodContext& ctx, const Eigen::MatrixXd& x_cols);

// Hessian of log p_theta.
Eigen::MatrixXd log_density_hessian(const LikelihoodContext& ctx, const Eigen::VectorXd& x);
std::vector<Eigen::MatrixXd> log_density_hessian_batch(const LikelihoodContext& ctx,
                                                       const Eigen::MatrixXd& x_cols);

// Mixed third partial d^3 log p / d theta_j d theta_k d theta_l.
double log_density_third_partial(const LikelihoodContext& ctx, const Eigen::VectorXd& x,
                                 int j, int k, int l);
Eigen::VectorXd log_density_third_partial_batch(const LikelihoodContext& ctx,
                                                const Eigen::MatrixXd& x_cols, int j,
                                                int k, int l);

// Asymptotic Fisher information I(theta)_{jk} =
// (1/4pi) int_{-pi}^{pi} (d_j log f)(d_k log f) dx.
Eigen::MatrixXd fisher_information(const SpectralModel& model, const ThetaVector& theta,
                                   const QuadratureSpec& spec = {});

struct LanExpansionRecord {
    double f_n = 0.0;       // log likelihood ratio at theta0 + t/sqrt(n)
    double inner = 0.0;     // <t, Z_n>
    double quad = 0.0;      // 1/2 t^T I t
    double remainder = 0.0; // f_n - inner + quad
};

// One-sample LAN decomposition; fisher may be precomputed (empty => computed
// here).
LanExpansionRecord lan_expansion(const SpectralModel& model, const ThetaVector& theta0,
                                 const Eigen::VectorXd& t, const Eigen::VectorXd& x,
                                 const Eigen::MatrixXd& fisher = Eigen::MatrixXd());

// Batched remainders against prebuilt contexts.
Eigen::VectorXd lan_remainder_batch(const LikelihoodContext& at_shifted,
                                    const LikelihoodContext& at_theta0,
                                    const Eigen::VectorXd& t,
                                    const Eigen::MatrixXd& x_cols,
                                    const Eigen::MatrixXd& fisher);

// theta0 + t / sqrt(n) on the shared layout.
ThetaVector shift_theta(const ThetaVector& theta0, const Eigen::VectorXd& t, int n);

}  // namespace fraclan

#endif
