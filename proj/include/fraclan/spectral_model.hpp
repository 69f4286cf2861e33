#ifndef FRACLAN_SPECTRAL_MODEL_HPP
#define FRACLAN_SPECTRAL_MODEL_HPP

#include "fraclan/quadrature.hpp"
#include "fraclan/theta.hpp"

#include <memory>
#include <vector>

namespace fraclan {

enum class DerivScheme { Analytic, FiniteDifference };

// Parametric spectral density f_theta on [-pi, pi] \ {0}, even and positive,
// under the canonical normalization c_k = (1/2pi) int e^{ikx} f(x) dx for the
// autocovariance of the process at lag k.  Partial derivatives in theta are
// exposed up to order three.
class SpectralModel {
public:
    virtual ~SpectralModel() = default;

    virtual ModelLayout layout() const = 0;
    virtual int dim() const = 0;

    // f_theta(x).  Throws std::domain_error on invalid theta ranges, and a
    // singularity error when x == 0 with alpha(theta) > 0.
    double density(const ThetaVector& theta, double x) const;

    // Mixed partial of f in theta over a multi-index of length 1..3.
    // Dispatches to the analytic formulas or the finite-difference fallback
    // according to deriv_scheme.
    double theta_partial(const ThetaVector& theta, double x,
                         const std::vector<int>& idx) const;

    // d f / dx; odd in x.
    virtual double x_partial(const ThetaVector& theta, double x) const = 0;

    // Memory exponent of the power law at 0.
    virtual double alpha(const ThetaVector& theta) const = 0;

    // Autocovariance c_k under the 1/2pi convention.  The base implementation
    // integrates the density; models with closed forms override.
    virtual bool has_closed_autocov(const ThetaVector& theta) const;
    virtual double autocov(const ThetaVector& theta, long k) const;
    virtual double autocov_partial(const ThetaVector& theta, long k,
                                   const std::vector<int>& idx) const;
    // Lags 0..n-1 in one call (overridable when a recurrence makes the whole
    // sequence cheaper than per-lag evaluation).
    virtual Eigen::VectorXd autocov_sequence(const ThetaVector& theta, int n) const;
    virtual Eigen::VectorXd autocov_partial_sequence(const ThetaVector& theta, int n,
                                                     const std::vector<int>& idx) const;

    DerivScheme deriv_scheme = DerivScheme::Analytic;
    QuadratureSpec quad;

    // Finite-difference mixed partial of the density (central differences,
    // recursive over the multi-index); always available for cross-validation.
    double fd_theta_partial(const ThetaVector& theta, double x,
                            const std::vector<int>& idx) const;

protected:
    virtual double eval(const ThetaVector& theta, double x) const = 0;
    virtual double eval_theta_partial(const ThetaVector& theta, double x,
                                      const std::vector<int>& idx) const = 0;
    void check_args(const ThetaVector& theta, double x) const;
};

class WhiteNoiseModel final : public SpectralModel {
public:
    ModelLayout layout() const override { return ModelLayout::WhiteNoise; }
    int dim() const override { return 1; }
    double x_partial(const ThetaVector&, double) const override { return 0.0; }
    double alpha(const ThetaVector&) const override { return 0.0; }
    bool has_closed_autocov(const ThetaVector&) const override { return true; }
    double autocov(const ThetaVector& theta, long k) const override;
    double autocov_partial(const ThetaVector& theta, long k,
                           const std::vector<int>& idx) const override;

protected:
    double eval(const ThetaVector& theta, double x) const override;
    double eval_theta_partial(const ThetaVector& theta, double x,
                              const std::vector<int>& idx) const override;
};

std::unique_ptr<SpectralModel> make_model(ModelLayout layout, int ar_order = 0,
                                          int ma_order = 0);

// ---- Assumption bound diagnostics ------------------------------------------

struct GridSpec {
    double min = 1e-4;
    double max = 3.141592653589793;
    int count = 64;
    enum class Spacing { Log, Linear } spacing = Spacing::Log;
    std::vector<double> points() const;
};

// Fitted envelope constants over a finite (theta, x) grid for the power-law
// sandwich on f, the x-derivative bound, and the theta-partial bounds.
struct BoundCheckReport {
    double delta = 0.05;
    int theta_points = 0;
    int x_points = 0;
    double c1_density = 0.0;       // largest lower-envelope constant
    double c2_density = 0.0;       // smallest upper-envelope constant
    double c2_x_partial = 0.0;
    double c2_theta_partial = 0.0; // over all multi-indices of order 1..3
    bool pass = false;
};

BoundCheckReport verify_assumption_bounds(const SpectralModel& model,
                                          const std::vector<ThetaVector>& theta_grid,
                                          double delta, const GridSpec& x_grid);

// All multi-indices of orders 1..max_order over components 0..m-1, in
// nondecreasing component order.
std::vector<std::vector<int>> all_multi_indices(int m, int max_order);

}  // namespace fraclan

#endif
