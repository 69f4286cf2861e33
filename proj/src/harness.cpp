#include "fraclan/harness.hpp"

#include "fraclan/parallel.hpp"
#include "fraclan/special.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace fraclan {

namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double spectral_norm_sym(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

QuantileStat quantiles(const std::vector<double>& v) {
    QuantileStat q;
    q.median = sample_quantile(v, 0.5);
    q.q25 = sample_quantile(v, 0.25);
    q.q75 = sample_quantile(v, 0.75);
    return q;
}

json vector_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (long i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

json quantile_json(const QuantileStat& q) {
    return json{{"median", q.median}, {"q25", q.q25}, {"q75", q.q75}};
}

std::unique_ptr<SpectralModel> model_for(const ThetaVector& theta) {
    return make_model(theta.layout, theta.ar_order, theta.ma_order);
}

}  // namespace

void ExperimentConfig::validate() const {
    theta0.validate();
    if (n_ladder.empty()) throw std::invalid_argument("n ladder must be nonempty");
    for (std::size_t i = 1; i < n_ladder.size(); ++i)
        if (n_ladder[i] <= n_ladder[i - 1])
            throw std::invalid_argument("n ladder must be strictly increasing");
    if (n_ladder.front() < 2) throw std::invalid_argument("n must be >= 2");
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (compute_score && replications < 100)
        throw std::invalid_argument("distributional statistics need >= 100 replications");
    for (const auto& t : t_grid)
        if (t.size() != theta0.dim())
            throw std::invalid_argument("t grid dimension mismatch");
    if (ball_radius <= 0.0) throw std::invalid_argument("ball radius must be positive");
}

std::vector<Eigen::VectorXd> default_t_grid(int dim) {
    std::vector<Eigen::VectorXd> grid;
    grid.push_back(Eigen::VectorXd::Zero(dim));
    std::vector<Eigen::VectorXd> dirs;
    const int count = 9;
    if (dim == 1) {
        dirs.push_back(Eigen::VectorXd::Constant(1, 1.0));
        dirs.push_back(Eigen::VectorXd::Constant(1, -1.0));
    } else if (dim == 2) {
        for (int j = 0; j < count; ++j) {
            const double ang = kTwoPi * j / count;
            Eigen::VectorXd u(2);
            u << std::cos(ang), std::sin(ang);
            dirs.push_back(u);
        }
    } else {
        std::uint64_t state = 0x5eedf00dull;
        for (int j = 0; j < count; ++j) {
            Eigen::VectorXd u(dim);
            for (int i = 0; i < dim; ++i) {
                // Two uniforms -> one normal via Box-Muller, deterministic.
                const double u1 =
                    double(splitmix64_next(state) >> 11) * 0x1.0p-53 + 0x1.0p-54;
                const double u2 = double(splitmix64_next(state) >> 11) * 0x1.0p-53;
                u[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
            }
            dirs.push_back(u.normalized());
        }
    }
    for (const auto& u : dirs) grid.push_back(u);
    for (const auto& u : dirs) grid.push_back(2.0 * u);
    return grid;
}

std::vector<ThetaVector> theta_ball_grid(const ThetaVector& theta0, double radius) {
    const int m = theta0.dim();
    std::vector<ThetaVector> grid;
    std::vector<int> digit(m, 0);
    const double offsets[3] = {-radius, 0.0, radius};
    while (true) {
        ThetaVector theta = theta0;
        for (int i = 0; i < m; ++i) theta.values[i] += offsets[digit[i]];
        grid.push_back(theta);
        int i = 0;
        for (; i < m; ++i) {
            if (++digit[i] < 3) break;
            digit[i] = 0;
        }
        if (i == m) break;
    }
    return grid;
}

// ---- LAN experiment --------------------------------------------------------

LanReport run_lan_experiment(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.validate();
    const auto model = model_for(cfg.theta0);
    const int m = cfg.theta0.dim();
    if (cfg.t_grid.empty() && cfg.compute_remainder) cfg.t_grid = default_t_grid(m);
    const int r_count = cfg.replications;

    LanReport report;
    report.config = cfg;
    report.fisher = fisher_information(*model, cfg.theta0);

    for (std::size_t ni = 0; ni < cfg.n_ladder.size(); ++ni) {
        const int n = cfg.n_ladder[ni];
        LanCell cell;
        cell.n = n;

        // Replication samples, one column each; per-replication child seeds
        // keep the set independent of worker scheduling.
        Eigen::MatrixXd x_cols(n, r_count);
        const std::uint64_t level_seed = child_seed(cfg.seed, std::uint64_t(n));
        if (cfg.theta0.layout == ModelLayout::Fgn) {
            const CirculantSampler sampler(*model, cfg.theta0, n);
            parallel_for(r_count, cfg.workers, [&](int r) {
                GaussianRng rng(child_seed(level_seed, std::uint64_t(r)));
                x_cols.col(r) = sampler.sample(rng);
            });
        } else {
            const CholeskyFactor gamma_chol = CholeskyFactor::compute(
                SymmetricToeplitz{model->autocov_sequence(cfg.theta0, n)});
            parallel_for(r_count, cfg.workers, [&](int r) {
                GaussianRng rng(child_seed(level_seed, std::uint64_t(r)));
                x_cols.col(r) = sample_cholesky(gamma_chol, rng);
            });
        }

        const LikelihoodContext ctx0(*model, cfg.theta0, n);
        Eigen::MatrixXd z;  // m x R, Z_n per replication
        if (cfg.compute_score || cfg.compute_remainder)
            z = score_batch(ctx0, x_cols) / std::sqrt(double(n));

        if (cfg.compute_score) {
            ScoreStats s;
            s.mean = z.rowwise().mean();
            const Eigen::MatrixXd centered = z.colwise() - s.mean;
            s.covariance = centered * centered.transpose() / double(r_count - 1);
            s.mean_se =
                (s.covariance.diagonal().array() / double(r_count)).sqrt().matrix();
            const Eigen::MatrixXd diff = s.covariance - report.fisher;
            s.cov_distance_fro = diff.norm();
            s.cov_distance_spec = spectral_norm_sym(diff);
            std::vector<Eigen::VectorXd> dirs;
            for (int k = 0; k < m; ++k) dirs.push_back(Eigen::VectorXd::Unit(m, k));
            dirs.push_back(Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(double(m))));
            for (const auto& u : dirs) {
                const double scale = std::sqrt(u.dot(report.fisher * u));
                const Eigen::VectorXd proj = (u.transpose() * z).transpose() / scale;
                std::vector<double> sample(proj.data(), proj.data() + proj.size());
                const KsResult ks =
                    ks_test(std::move(sample), [](double v) { return normal_cdf(v); });
                cell.has_score = true;
                s.directions.push_back({u, ks.statistic, ks.p_value});
            }
            cell.score = std::move(s);
            cell.has_score = true;
        }

        if (cfg.compute_hessian) {
            const auto hessians = log_density_hessian_batch(ctx0, x_cols);
            std::vector<double> dists;
            dists.reserve(r_count);
            for (const auto& h : hessians)
                dists.push_back(spectral_norm_sym(h / double(n) + report.fisher));
            cell.hessian_distance = quantiles(dists);
            cell.has_hessian = true;
        }

        if (cfg.compute_remainder) {
            std::vector<double> sup_psi(r_count, 0.0);
            for (std::size_t ti = 0; ti < cfg.t_grid.size(); ++ti) {
                const Eigen::VectorXd& t = cfg.t_grid[ti];
                const ThetaVector shifted = shift_theta(cfg.theta0, t, n);
                try {
                    shifted.validate();
                } catch (const std::domain_error&) {
                    ++cell.skipped_t;
                    continue;
                }
                Eigen::VectorXd ratio;
                try {
                    const LikelihoodContext ctx_t(*model, shifted, n);
                    ratio = log_likelihood_ratio_batch(ctx_t, ctx0, x_cols);
                } catch (const NotPositiveDefiniteError&) {
                    ++cell.failures;
                    continue;
                }
                const Eigen::VectorXd linear = (t.transpose() * z).transpose();
                const double quad = 0.5 * t.dot(report.fisher * t);
                for (int r = 0; r < r_count; ++r) {
                    const double psi = ratio[r] - linear[r] + quad;
                    sup_psi[r] = std::max(sup_psi[r], std::abs(psi));
                    cell.remainder_rows.push_back(
                        {r, int(ti), ratio[r], linear[r], quad, psi});
                }
            }
            cell.remainder_sup = quantiles(sup_psi);
            cell.has_remainder = true;
        }

        if (cfg.compute_third) {
            std::vector<double> max_third(r_count, 0.0);
            for (const ThetaVector& theta_g : theta_ball_grid(cfg.theta0, cfg.ball_radius)) {
                try {
                    theta_g.validate();
                } catch (const std::domain_error&) {
                    ++cell.skipped_theta;
                    continue;
                }
                try {
                    const LikelihoodContext ctx(*model, theta_g, n);
                    for (int j = 0; j < m; ++j)
                        for (int k = j; k < m; ++k)
                            for (int l = k; l < m; ++l) {
                                const Eigen::VectorXd v =
                                    log_density_third_partial_batch(ctx, x_cols, j, k, l);
                                for (int r = 0; r < r_count; ++r)
                                    max_third[r] = std::max(max_third[r], std::abs(v[r]));
                            }
                } catch (const NotPositiveDefiniteError&) {
                    ++cell.failures;
                    continue;
                }
            }
            const double scale = std::pow(double(n), -1.5);
            for (double& v : max_third) v *= scale;
            cell.third_scaled = quantiles(max_third);
            cell.has_third = true;
        }

        report.cells.push_back(std::move(cell));
    }
    return report;
}

// ---- serialization ---------------------------------------------------------

std::string LanReport::to_json() const {
    json root;
    root["schema_version"] = schema_version;
    json c;
    c["model"] = layout_name(config.theta0.layout);
    c["ar_order"] = config.theta0.ar_order;
    c["ma_order"] = config.theta0.ma_order;
    c["theta0"] = vector_json(config.theta0.values);
    c["n_ladder"] = config.n_ladder;
    c["replications"] = config.replications;
    json tg = json::array();
    for (const auto& t : config.t_grid) tg.push_back(vector_json(t));
    c["t_grid"] = tg;
    c["ball_radius"] = config.ball_radius;
    c["seed"] = config.seed;
    root["config"] = c;
    root["fisher"] = matrix_json(fisher);

    json cells_json = json::array();
    for (const auto& cell : cells) {
        json cj;
        cj["n"] = cell.n;
        cj["failures"] = cell.failures;
        cj["skipped_t"] = cell.skipped_t;
        cj["skipped_theta"] = cell.skipped_theta;
        if (cell.has_score) {
            json s;
            s["mean"] = vector_json(cell.score.mean);
            s["mean_se"] = vector_json(cell.score.mean_se);
            s["covariance"] = matrix_json(cell.score.covariance);
            s["cov_distance_fro"] = cell.score.cov_distance_fro;
            s["cov_distance_spec"] = cell.score.cov_distance_spec;
            json ds = json::array();
            for (const auto& d : cell.score.directions)
                ds.push_back(json{{"direction", vector_json(d.direction)},
                                  {"ks_statistic", d.ks_statistic},
                                  {"ks_p_value", d.ks_p_value}});
            s["directions"] = ds;
            cj["score"] = s;
        }
        if (cell.has_hessian) cj["hessian_distance"] = quantile_json(cell.hessian_distance);
        if (cell.has_remainder) cj["remainder_sup"] = quantile_json(cell.remainder_sup);
        if (cell.has_third) cj["third_scaled"] = quantile_json(cell.third_scaled);
        cells_json.push_back(cj);
    }
    root["cells"] = cells_json;
    return root.dump(2) + "\n";
}

std::string LanReport::remainder_csv() const {
    const int m = config.theta0.dim();
    std::ostringstream out;
    out.precision(17);
    out << "n,rep";
    for (int i = 0; i < m; ++i) out << ",t" << i;
    out << ",ratio,linear,quadratic,remainder\n";
    for (const auto& cell : cells) {
        for (const auto& row : cell.remainder_rows) {
            out << cell.n << "," << row.rep;
            const Eigen::VectorXd& t = config.t_grid[row.t_index];
            for (int i = 0; i < m; ++i) out << "," << t[i];
            out << "," << row.ratio << "," << row.linear << "," << row.quadratic << ","
                << row.remainder << "\n";
        }
    }
    return out.str();
}

// ---- trace limits ----------------------------------------------------------

TraceLimitReport run_trace_limit_experiment(const SpectralModel& model,
                                            const ThetaVector& theta0, int deriv_index,
                                            int max_p, const std::vector<int>& n_ladder,
                                            const QuadratureSpec& spec) {
    theta0.validate();
    if (max_p < 1 || max_p > 3)
        throw std::invalid_argument("trace limit experiment: p in 1..3");
    if (n_ladder.empty()) throw std::invalid_argument("n ladder must be nonempty");
    TraceLimitReport report;
    report.theta0 = theta0;
    report.deriv_index = deriv_index;

    const int n_max = n_ladder.back();
    const Eigen::VectorXd f_row = kTwoPi * model.autocov_sequence(theta0, n_max);
    const Eigen::VectorXd g_row =
        kTwoPi * model.autocov_partial_sequence(theta0, n_max, {deriv_index});
    const DensityFn f = [&](double x) { return model.density(theta0, x); };
    const DensityFn g = [&](double x) {
        return model.theta_partial(theta0, x, {deriv_index});
    };

    report.decreasing = true;
    report.max_final_deviation = 0.0;
    report.max_final_relative_deviation = 0.0;
    for (int p = 1; p <= max_p; ++p) {
        const double integral =
            spectral_limit_integral(f, std::vector<DensityFn>(p, g), spec);
        const double rel_scale = std::max(1.0, std::abs(integral));
        double first_dev = -1.0;
        double last_dev = 0.0;
        for (int n : n_ladder) {
            const double trace = trace_product_rows(
                f_row.head(n), std::vector<Eigen::VectorXd>(p, g_row.head(n)));
            TraceLimitRow row;
            row.p = p;
            row.n = n;
            row.trace_value = trace;
            row.limit_integral = integral;
            row.deviation = std::abs(trace - integral);
            row.relative_deviation = row.deviation / rel_scale;
            if (first_dev < 0.0) first_dev = row.deviation;
            last_dev = row.deviation;
            report.rows.push_back(row);
        }
        if (last_dev >= first_dev) report.decreasing = false;
        report.max_final_deviation = std::max(report.max_final_deviation, last_dev);
        report.max_final_relative_deviation =
            std::max(report.max_final_relative_deviation, last_dev / rel_scale);
    }
    return report;
}

std::string TraceLimitReport::to_json() const {
    json root;
    root["schema_version"] = kReportSchemaVersion;
    root["model"] = layout_name(theta0.layout);
    root["theta0"] = vector_json(theta0.values);
    root["deriv_index"] = deriv_index;
    json rows_json = json::array();
    for (const auto& row : rows)
        rows_json.push_back(json{{"p", row.p},
                                 {"n", row.n},
                                 {"trace", row.trace_value},
                                 {"integral", row.limit_integral},
                                 {"deviation", row.deviation},
                                 {"relative_deviation", row.relative_deviation}});
    root["rows"] = rows_json;
    root["decreasing"] = decreasing;
    root["max_final_deviation"] = max_final_deviation;
    root["max_final_relative_deviation"] = max_final_relative_deviation;
    return root.dump(2) + "\n";
}

// ---- norm bound ------------------------------------------------------------

NormBoundReport run_norm_bound_experiment(const SpectralModel& model_f,
                                          const ThetaVector& theta_f,
                                          const SpectralModel& model_g,
                                          const ThetaVector& theta_g,
                                          const std::vector<int>& n_ladder) {
    theta_f.validate();
    theta_g.validate();
    if (n_ladder.size() < 2)
        throw std::invalid_argument("norm bound experiment: need >= 2 ladder points");
    NormBoundReport report;
    report.theta_f = theta_f;
    report.theta_g = theta_g;
    report.n_ladder = n_ladder;

    const int n_max = n_ladder.back();
    const Eigen::VectorXd f_row = model_f.autocov_sequence(theta_f, n_max);
    const Eigen::VectorXd g_row = model_g.autocov_sequence(theta_g, n_max);
    for (int n : n_ladder) {
        const CholeskyFactor chol_f =
            CholeskyFactor::compute(SymmetricToeplitz{f_row.head(n)});
        const SymmetricToeplitz t_g{g_row.head(n)};
        const auto apply = [&](const Eigen::VectorXd& v) {
            return chol_f.solve_lower(t_g.matvec(chol_f.solve_lower_transpose(v)));
        };
        const NormEstimate est = operator_norm_estimate(apply, n);
        // est.value is the largest eigenvalue of L_f^{-1} T_g L_f^{-T}; the
        // quantity whose growth exponent is bounded is the spectral norm of
        // T_g^{1/2} T_f^{-1/2}, i.e. its square root.
        report.norms.push_back(std::sqrt(est.value));
        report.converged.push_back(est.converged);
    }

    Eigen::VectorXd log_n(long(n_ladder.size())), log_norm(long(n_ladder.size()));
    for (std::size_t i = 0; i < n_ladder.size(); ++i) {
        log_n[long(i)] = std::log(double(n_ladder[i]));
        log_norm[long(i)] = std::log(report.norms[i]);
    }
    report.slope = regression_slope(log_n, log_norm);
    const double beta_gap =
        model_g.alpha(theta_g) - model_f.alpha(theta_f);
    report.allowed_slope = std::max(0.5 * beta_gap, 0.0) + 0.1;
    report.pass = report.slope <= report.allowed_slope;
    return report;
}

std::string NormBoundReport::to_json() const {
    json root;
    root["schema_version"] = kReportSchemaVersion;
    root["theta_f"] = vector_json(theta_f.values);
    root["theta_g"] = vector_json(theta_g.values);
    root["n_ladder"] = n_ladder;
    root["norms"] = norms;
    json conv = json::array();
    for (bool c : converged) conv.push_back(c);
    root["converged"] = conv;
    root["slope"] = slope;
    root["allowed_slope"] = allowed_slope;
    root["pass"] = pass;
    return root.dump(2) + "\n";
}

}  // namespace fraclan
