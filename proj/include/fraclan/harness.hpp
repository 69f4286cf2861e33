#ifndef FRACLAN_HARNESS_HPP
#define FRACLAN_HARNESS_HPP

#include "fraclan/likelihood.hpp"
#include "fraclan/sampler.hpp"
#include "fraclan/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fraclan {

inline constexpr const char* kReportSchemaVersion = "fraclan-report-1";

struct ExperimentConfig {
    ThetaVector theta0;
    std::vector<int> n_ladder;
    int replications = 100;
    std::vector<Eigen::VectorXd> t_grid;  // empty => default_t_grid(dim)
    double ball_radius = 0.05;            // theta-grid radius for third-deriv sup
    std::uint64_t seed = 20240901ull;
    int workers = 1;
    bool compute_score = true;
    bool compute_hessian = false;
    bool compute_remainder = false;
    bool compute_third = false;

    void validate() const;  // throws std::invalid_argument
};

// 0, then points on the radius-1 and radius-2 spheres (9 directions each).
std::vector<Eigen::VectorXd> default_t_grid(int dim);
// Tensor grid theta0 + {-r, 0, +r}^m on the parameter coordinates.
std::vector<ThetaVector> theta_ball_grid(const ThetaVector& theta0, double radius);

struct DirectionStat {
    Eigen::VectorXd direction;
    double ks_statistic = 0.0;
    double ks_p_value = 1.0;
};

struct ScoreStats {
    Eigen::VectorXd mean;
    Eigen::VectorXd mean_se;
    Eigen::MatrixXd covariance;
    double cov_distance_fro = 0.0;   // ||Cov - I(theta0)||_F
    double cov_distance_spec = 0.0;  // ||Cov - I(theta0)||_2
    std::vector<DirectionStat> directions;
};

struct QuantileStat {
    double median = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
};

struct RemainderRow {
    int rep = 0;
    int t_index = 0;
    double ratio = 0.0;
    double linear = 0.0;
    double quadratic = 0.0;
    double remainder = 0.0;
};

struct LanCell {
    int n = 0;
    int failures = 0;    // replication-level numerical failures
    int skipped_t = 0;   // t-grid points with theta0 + t/sqrt(n) out of domain
    int skipped_theta = 0;  // out-of-domain theta-grid points
    bool has_score = false;
    ScoreStats score;
    bool has_hessian = false;
    QuantileStat hessian_distance;  // ||hessian/n + I||_2
    bool has_remainder = false;
    QuantileStat remainder_sup;     // sup_t |psi|
    bool has_third = false;
    QuantileStat third_scaled;      // n^{-3/2} max |third partial| over grid
    std::vector<RemainderRow> remainder_rows;
};

struct LanReport {
    std::string schema_version = kReportSchemaVersion;
    ExperimentConfig config;
    Eigen::MatrixXd fisher;
    std::vector<LanCell> cells;

    // Deterministic serialization (independent of worker count).
    std::string to_json() const;
    // Per-replication remainder table: n, rep, t components, ratio, linear,
    // quadratic, remainder.
    std::string remainder_csv() const;
};

LanReport run_lan_experiment(const ExperimentConfig& cfg);

struct TraceLimitRow {
    int p = 0;
    int n = 0;
    double trace_value = 0.0;
    double limit_integral = 0.0;
    double deviation = 0.0;           // |trace - integral|
    double relative_deviation = 0.0;  // deviation / max(1, |integral|)
};

struct TraceLimitReport {
    ThetaVector theta0;
    int deriv_index = 1;
    std::vector<TraceLimitRow> rows;
    bool decreasing = true;        // per p, deviation at largest n < at smallest n
    double max_final_deviation = 0.0;           // over p, at the largest n
    double max_final_relative_deviation = 0.0;  // same rows, relative measure
    std::string to_json() const;
};

// g = the deriv_index-th first-order density partial, products of order
// p = 1..max_p.
TraceLimitReport run_trace_limit_experiment(const SpectralModel& model,
                                            const ThetaVector& theta0, int deriv_index,
                                            int max_p, const std::vector<int>& n_ladder,
                                            const QuadratureSpec& spec = {});

struct NormBoundReport {
    ThetaVector theta_f;
    ThetaVector theta_g;
    std::vector<int> n_ladder;
    std::vector<double> norms;
    std::vector<bool> converged;
    double slope = 0.0;
    double allowed_slope = 0.0;
    bool pass = false;
    std::string to_json() const;
};

// Spectral norm of T_n(g)^{1/2} T_n(f)^{-1/2} along the ladder -- computed as
// the square root of the largest eigenvalue of the similar symmetric product
// L_f^{-1} T_n(g) L_f^{-T} -- and the log-log regression slope against the
// power-law growth bound.
NormBoundReport run_norm_bound_experiment(const SpectralModel& model_f,
                                          const ThetaVector& theta_f,
                                          const SpectralModel& model_g,
                                          const ThetaVector& theta_g,
                                          const std::vector<int>& n_ladder);

}  // namespace fraclan

#endif
