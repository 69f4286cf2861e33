#ifndef FRACLAN_FGN_HPP
#define FRACLAN_FGN_HPP

#include "fraclan/jet.hpp"
#include "fraclan/spectral_model.hpp"

namespace fraclan {

// C2^2(a) = pi / (a Gamma(2a) sin(a pi)).
double c2_constant(double hurst);

// Truncated lattice sum sum_{|k| <= K} |x + 2 k pi|^{-(2H+1)} plus the
// integral tail correction 2 int_{K+1/2}^inf (2 pi u)^{-(2H+1)} du.
double fgn_lattice_sum(double x, double hurst, long k_tail);

// Same sum evaluated by Euler-Maclaurin acceleration (Hurwitz-zeta form),
// accurate to near machine precision; agrees with fgn_lattice_sum in the
// large-K_tail limit.
double fgn_lattice_sum_em(double x, double hurst);

// Increment autocovariance (sigma^2/2)(|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
double fgn_autocovariance_closed(long k, double sigma2, double hurst);

// Fractional Gaussian noise spectral density under the canonical
// normalization (autocovariances match fgn_autocovariance_closed under the
// 1/2pi Fourier convention):
//   f(x) = sigma^2 Gamma(2H+1) sin(pi H) |e^{ix}-1|^2 sum_k |x+2kpi|^{-2H-1}
// which is 2pi times the density written with the 1/C2^2(H) constant.
class FgnModel final : public SpectralModel {
public:
    ModelLayout layout() const override { return ModelLayout::Fgn; }
    int dim() const override { return 2; }
    double x_partial(const ThetaVector& theta, double x) const override;
    double alpha(const ThetaVector& theta) const override { return 2.0 * theta.hurst() - 1.0; }
    bool has_closed_autocov(const ThetaVector&) const override { return true; }
    double autocov(const ThetaVector& theta, long k) const override;
    double autocov_partial(const ThetaVector& theta, long k,
                           const std::vector<int>& idx) const override;

    // Lattice-sum truncation order used when lattice_tail_sum is requested
    // through the config interface; the density itself uses the accelerated
    // evaluation, which the tests pin against the truncated form.
    long k_tail = 2000;

    // Density divided by sigma^2, with H-derivatives, as a jet in H.
    Jet3 shape_jet(double hurst, double x) const;

protected:
    double eval(const ThetaVector& theta, double x) const override;
    double eval_theta_partial(const ThetaVector& theta, double x,
                              const std::vector<int>& idx) const override;
};

}  // namespace fraclan

#endif
