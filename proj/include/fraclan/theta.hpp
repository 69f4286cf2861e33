#ifndef FRACLAN_THETA_HPP
#define FRACLAN_THETA_HPP

#include <Eigen/Dense>

#include <string>

namespace fraclan {

enum class ModelLayout { WhiteNoise, Fgn, Arfima };

std::string layout_name(ModelLayout layout);
ModelLayout layout_from_name(const std::string& name);

// Ordered real parameter vector with a layout tag fixing component meaning:
//   white noise : (sigma2)
//   fGn         : (sigma2, H)
//   ARFIMA(p,q) : (sigma2, d, Phi_1..Phi_p, Psi_1..Psi_q)
struct ThetaVector {
    ModelLayout layout = ModelLayout::WhiteNoise;
    int ar_order = 0;  // p, ARFIMA only
    int ma_order = 0;  // q, ARFIMA only
    Eigen::VectorXd values;

    static ThetaVector white_noise(double sigma2);
    static ThetaVector fgn(double sigma2, double hurst);
    static ThetaVector arfima(double sigma2, double d,
                              const Eigen::VectorXd& phi = Eigen::VectorXd(),
                              const Eigen::VectorXd& psi = Eigen::VectorXd());

    int dim() const { return int(values.size()); }
    double sigma2() const { return values[0]; }
    double hurst() const { return values[1]; }
    double d() const { return values[1]; }
    // AR / MA coefficient blocks (ARFIMA layout).
    Eigen::VectorXd phi() const { return values.segment(2, ar_order); }
    Eigen::VectorXd psi() const { return values.segment(2 + ar_order, ma_order); }

    // Full invariant check; throws std::domain_error naming the violation.
    // For ARFIMA this includes the numeric root-modulus condition on the AR
    // and MA polynomials (tolerance 1e-8) and the no-common-root condition.
    void validate() const;

    // Range-only checks, cheap enough for per-evaluation use.
    void check_ranges() const;
};

// Roots of 1 + a_1 X + ... + a_p X^p via the companion matrix.
Eigen::VectorXcd polynomial_roots(const Eigen::VectorXd& coeffs);

}  // namespace fraclan

#endif
