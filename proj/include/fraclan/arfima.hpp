#ifndef FRACLAN_ARFIMA_HPP
#define FRACLAN_ARFIMA_HPP

#include "fraclan/spectral_model.hpp"

namespace fraclan {

// ARFIMA(p, d, q) spectral density
//   f(x) = sigma^2 |e^{ix} - 1|^{-2d} |Psi(e^{ix})|^2 / |Phi(e^{ix})|^2
// with Phi, Psi monic-constant polynomials (constant term 1).  The density
// factorizes over disjoint parameter groups, so every mixed theta-partial is
// a product of per-factor derivatives; all are analytic.
class ArfimaModel final : public SpectralModel {
public:
    ArfimaModel(int ar_order, int ma_order)
        : ar_order_(ar_order), ma_order_(ma_order) {}

    ModelLayout layout() const override { return ModelLayout::Arfima; }
    int dim() const override { return 2 + ar_order_ + ma_order_; }
    int ar_order() const { return ar_order_; }
    int ma_order() const { return ma_order_; }

    double x_partial(const ThetaVector& theta, double x) const override;
    double alpha(const ThetaVector& theta) const override { return 2.0 * theta.d(); }

    // Closed-form autocovariance (Gamma-ratio recurrence) when p = q = 0 and
    // d < 1/2; otherwise the quadrature fallback of the base class.
    bool has_closed_autocov(const ThetaVector& theta) const override;
    double autocov(const ThetaVector& theta, long k) const override;
    double autocov_partial(const ThetaVector& theta, long k,
                           const std::vector<int>& idx) const override;
    Eigen::VectorXd autocov_sequence(const ThetaVector& theta, int n) const override;
    Eigen::VectorXd autocov_partial_sequence(const ThetaVector& theta, int n,
                                             const std::vector<int>& idx) const override;

protected:
    double eval(const ThetaVector& theta, double x) const override;
    double eval_theta_partial(const ThetaVector& theta, double x,
                              const std::vector<int>& idx) const override;

private:
    int ar_order_;
    int ma_order_;
};

}  // namespace fraclan

#endif
