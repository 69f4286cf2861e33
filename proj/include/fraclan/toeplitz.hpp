#ifndef FRACLAN_TOEPLITZ_HPP
#define FRACLAN_TOEPLITZ_HPP

#include "fraclan/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraclan {

using DensityFn = std::function<double(double)>;

struct NotPositiveDefiniteError : std::runtime_error {
    int pivot;
    explicit NotPositiveDefiniteError(int failing_pivot)
        : std::runtime_error("matrix not positive definite (pivot " +
                             std::to_string(failing_pivot) + ")"),
          pivot(failing_pivot) {}
};

// Covariance lags c_0..c_{n-1} under the 1/2pi Fourier convention.
struct AutocovSequence {
    Eigen::VectorXd lags;
    std::string provenance;  // quadrature | closed-form-fgn | user | ...

    int size() const { return int(lags.size()); }
    void write_csv(const std::string& path) const;
    static AutocovSequence read_csv(const std::string& path);
};

// Symmetric Toeplitz matrix given by its first row.
struct SymmetricToeplitz {
    Eigen::VectorXd first_row;

    int n() const { return int(first_row.size()); }
    double operator()(int i, int j) const { return first_row[std::abs(i - j)]; }
    Eigen::MatrixXd dense() const;
    // y = T v without forming the dense matrix.
    Eigen::VectorXd matvec(const Eigen::VectorXd& v) const;
};

// Lower-triangular Cholesky factor with cached log-determinant of the
// factored matrix.
class CholeskyFactor {
public:
    static CholeskyFactor compute(const Eigen::MatrixXd& m);
    static CholeskyFactor compute(const SymmetricToeplitz& t) { return compute(t.dense()); }

    const Eigen::MatrixXd& lower() const { return lower_; }
    double log_det() const { return log_det_; }
    int n() const { return int(lower_.rows()); }

    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;  // M y = b
    Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;
    Eigen::VectorXd solve_lower(const Eigen::VectorXd& b) const;            // L y = b
    Eigen::VectorXd solve_lower_transpose(const Eigen::VectorXd& b) const;  // L^T y = b

private:
    Eigen::MatrixXd lower_;
    double log_det_ = 0.0;
};

// int_{-pi}^{pi} e^{ikx} f(x) dx = 2 int_0^pi cos(kx) f(x) dx (Eq.-(1)
// scaling, no 1/2pi).
double fourier_coefficient(const DensityFn& f, long k, const QuadratureSpec& spec = {});

AutocovSequence autocov_from_density(const DensityFn& f, int n,
                                     const QuadratureSpec& spec = {});

SymmetricToeplitz build_toeplitz(const AutocovSequence& c, int n);

// Levinson-Durbin solve of T y = b for a symmetric positive-definite Toeplitz
// matrix, O(n^2); reference path is the Cholesky factor.
Eigen::VectorXd levinson_solve(const SymmetricToeplitz& t, const Eigen::VectorXd& b);
// Log-determinant via the Levinson prediction-error recursion.
double levinson_log_det(const SymmetricToeplitz& t);

// (1/n) tr[prod_l T_n(f)^{-1} T_n(g_l)] computed via batched solves.
double trace_product(const DensityFn& f, const std::vector<DensityFn>& g_list, int n,
                     const QuadratureSpec& spec = {});
// Same but with precomputed first rows (Eq.-(1) scaling).
double trace_product_rows(const Eigen::VectorXd& f_row,
                          const std::vector<Eigen::VectorXd>& g_rows);

// (1/2pi) int f^{-p} prod_l g_l dx; warns (returns anyway) when the exponent
// integrability condition is violated upstream.
double spectral_limit_integral(const DensityFn& f, const std::vector<DensityFn>& g_list,
                               const QuadratureSpec& spec = {});

struct NormEstimate {
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Power-iteration estimate of the largest eigenvalue of a symmetric PSD
// operator given by its apply callable; deterministic seeded start vector.
NormEstimate operator_norm_estimate(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply, int n,
    int max_iterations = 1000, double rel_tol = 1e-6, unsigned long long seed = 20240901ull);

}  // namespace fraclan

#endif
