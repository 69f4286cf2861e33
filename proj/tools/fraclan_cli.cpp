#include "fraclan/config.hpp"
#include "fraclan/harness.hpp"
#include "fraclan/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using fraclan::ConfigError;
using fraclan::ConfigMap;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitAssertionFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

struct GlobalOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
    int workers = 1;
};

struct GateTally {
    bool all_pass = true;
    void check(bool pass, const std::string& name, const std::string& detail) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
        if (!pass) all_pass = false;
    }
};

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

ConfigMap load_config(const GlobalOptions& opts) {
    if (opts.config_path.empty()) throw ConfigError("--config is required");
    ConfigMap cfg = ConfigMap::parse_file(opts.config_path);
    for (const auto& assignment : opts.overrides) cfg.apply_override(assignment);
    return cfg;
}

// Reject any key in a section this subcommand owns that it never read.
void reject_unknown_keys(const ConfigMap& cfg, const std::vector<std::string>& sections) {
    for (const auto& key : cfg.unused_keys()) {
        const auto dot = key.find('.');
        const std::string section = dot == std::string::npos ? "" : key.substr(0, dot);
        for (const auto& owned : sections)
            if (section == owned) throw ConfigError("unknown config key: " + key);
    }
}

fraclan::ThetaVector theta_from_config(const ConfigMap& cfg) {
    const std::string kind = cfg.get_string("model.kind");
    const fraclan::ModelLayout layout = fraclan::layout_from_name(kind);
    const std::vector<double> values = cfg.get_double_list("model.theta");
    const auto as_vec = [](const std::vector<double>& v, int lo, int count) {
        Eigen::VectorXd out(count);
        for (int i = 0; i < count; ++i) out[i] = v[lo + i];
        return out;
    };
    switch (layout) {
        case fraclan::ModelLayout::WhiteNoise:
            if (values.size() != 1) throw ConfigError("white noise theta needs 1 value");
            return fraclan::ThetaVector::white_noise(values[0]);
        case fraclan::ModelLayout::Fgn:
            if (values.size() != 2) throw ConfigError("fgn theta needs 2 values");
            return fraclan::ThetaVector::fgn(values[0], values[1]);
        case fraclan::ModelLayout::Arfima: {
            const int p = cfg.get_int("model.ar_order", 0);
            const int q = cfg.get_int("model.ma_order", 0);
            if (int(values.size()) != 2 + p + q)
                throw ConfigError("arfima theta needs 2 + p + q values");
            return fraclan::ThetaVector::arfima(values[0], values[1], as_vec(values, 2, p),
                                                as_vec(values, 2 + p, q));
        }
    }
    throw ConfigError("unknown model kind: " + kind);
}

std::unique_ptr<fraclan::SpectralModel> model_from_theta(const fraclan::ThetaVector& theta) {
    return fraclan::make_model(theta.layout, theta.ar_order, theta.ma_order);
}

Eigen::VectorXd read_sample_csv(const std::string& path) {
    const std::string text = fraclan::read_file(path);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed CSV row: " + line);
        vals.push_back(std::stod(line.substr(comma + 1)));
    }
    if (vals.empty()) throw std::runtime_error("empty sample file: " + path);
    return Eigen::Map<Eigen::VectorXd>(vals.data(), long(vals.size()));
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

std::uint64_t effective_seed(const GlobalOptions& opts, const ConfigMap& cfg) {
    if (opts.seed) return *opts.seed;
    return cfg.get_u64("run.seed", 20240901ull);
}

// ---- subcommands -----------------------------------------------------------

int cmd_simulate(const GlobalOptions& opts) {
    ConfigMap cfg = load_config(opts);
    const fraclan::ThetaVector theta = theta_from_config(cfg);
    const auto model = model_from_theta(theta);
    const int n = cfg.get_int("simulate.n");
    std::string method = cfg.get_string("simulate.method",
                                        theta.layout == fraclan::ModelLayout::Fgn
                                            ? "circulant"
                                            : "cholesky");
    const std::uint64_t seed = effective_seed(opts, cfg);
    reject_unknown_keys(cfg, {"model", "simulate", "run"});

    fraclan::GaussianRng rng(seed);
    Eigen::VectorXd x;
    if (method == "circulant") {
        const fraclan::CirculantSampler sampler(*model, theta, n);
        x = sampler.sample(rng);
    } else if (method == "cholesky") {
        const auto gamma_chol = fraclan::CholeskyFactor::compute(
            fraclan::SymmetricToeplitz{model->autocov_sequence(theta, n)});
        x = fraclan::sample_cholesky(gamma_chol, rng);
    } else {
        throw ConfigError("simulate.method must be circulant or cholesky");
    }

    std::ostringstream csv;
    csv.precision(17);
    csv << "index,value\n";
    for (int i = 0; i < n; ++i) csv << i << "," << x[i] << "\n";
    fraclan::atomic_write_file(join_path(opts.out_dir, "sample.csv"), csv.str());

    json sidecar;
    sidecar["model"] = fraclan::layout_name(theta.layout);
    sidecar["theta"] = vector_json(theta.values);
    sidecar["n"] = n;
    sidecar["seed"] = seed;
    sidecar["method"] = method;
    fraclan::atomic_write_file(join_path(opts.out_dir, "sample.json"),
                               sidecar.dump(2) + "\n");
    std::cout << "PASS simulate: wrote " << n << " values (method " << method << ")\n";
    return kExitOk;
}

int cmd_loglik(const GlobalOptions& opts) {
    ConfigMap cfg = load_config(opts);
    const fraclan::ThetaVector theta = theta_from_config(cfg);
    const auto model = model_from_theta(theta);
    const std::string data = cfg.get_string("loglik.data");
    reject_unknown_keys(cfg, {"model", "loglik", "run"});

    const Eigen::VectorXd x = read_sample_csv(data);
    const fraclan::LikelihoodContext ctx(*model, theta, int(x.size()));
    const double value = fraclan::log_density(ctx, x);

    json out;
    out["n"] = int(x.size());
    out["log_density"] = value;
    fraclan::atomic_write_file(join_path(opts.out_dir, "loglik.json"), out.dump(2) + "\n");
    std::cout << "PASS loglik: " << value << "\n";
    return kExitOk;
}

int cmd_score(const GlobalOptions& opts) {
    ConfigMap cfg = load_config(opts);
    const fraclan::ThetaVector theta = theta_from_config(cfg);
    const auto model = model_from_theta(theta);
    const std::string data = cfg.get_string("score.data");
    reject_unknown_keys(cfg, {"model", "score", "run"});

    const Eigen::VectorXd x = read_sample_csv(data);
    const int n = int(x.size());
    const fraclan::LikelihoodContext ctx(*model, theta, n);
    const Eigen::VectorXd z = fraclan::score(ctx, x) / std::sqrt(double(n));

    json out;
    out["n"] = n;
    out["z"] = vector_json(z);
    fraclan::atomic_write_file(join_path(opts.out_dir, "score.json"), out.dump(2) + "\n");
    std::cout << "PASS score: " << z.transpose() << "\n";
    return kExitOk;
}

int cmd_fisher(const GlobalOptions& opts) {
    ConfigMap cfg = load_config(opts);
    const fraclan::ThetaVector theta = theta_from_config(cfg);
    const auto model = model_from_theta(theta);
    reject_unknown_keys(cfg, {"model", "fisher", "run"});

    fraclan::QuadratureSpec spec;
    const Eigen::MatrixXd info = fraclan::fisher_information(*model, theta, spec);

    json out;
    out["theta"] = vector_json(theta.values);
    out["fisher"] = matrix_json(info);
    out["quadrature"] = json{{"levels", spec.levels},
                             {"base_order", spec.base_order},
                             {"rel_tol", spec.rel_tol},
                             {"max_order", spec.max_order}};
    fraclan::atomic_write_file(join_path(opts.out_dir, "fisher.json"), out.dump(2) + "\n");
    std::cout << "PASS fisher: " << info.rows() << "x" << info.cols() << " matrix written\n";
    return kExitOk;
}

int cmd_lan_verify(const GlobalOptions& opts) {
    ConfigMap cfg = load_config(opts);
    fraclan::ExperimentConfig ec;
    ec.theta0 = theta_from_config(cfg);
    ec.n_ladder = cfg.get_int_list("lan.n_ladder", {256, 1024, 4096});
    ec.replications = cfg.get_int("lan.replications", 200);
    ec.ball_radius = cfg.get_double("lan.ball_radius", 0.05);
    ec.seed = effective_seed(opts, cfg);
    ec.workers = opts.workers;
    ec.compute_score = cfg.get_bool("lan.score", true);
    ec.compute_hessian = cfg.get_bool("lan.hessian", false);
    ec.compute_remainder = cfg.get_bool("lan.remainder", true);
    ec.compute_third = cfg.get_bool("lan.third", false);
    const std::string grid_kind = cfg.get_string("lan.t_grid", "default");
    if (grid_kind == "zero")
        ec.t_grid = {Eigen::VectorXd::Zero(ec.theta0.dim())};
    else if (grid_kind != "default")
        throw ConfigError("lan.t_grid must be default or zero");
    reject_unknown_keys(cfg, {"model", "lan", "run"});

    const fraclan::LanReport report = fraclan::run_lan_experiment(ec);
    fraclan::atomic_write_file(join_path(opts.out_dir, "lan_report.json"),
                               report.to_json());
    if (ec.compute_remainder)
        fraclan::atomic_write_file(join_path(opts.out_dir, "lan_remainder.csv"),
                                   report.remainder_csv());

    GateTally gates;
    for (const auto& cell : report.cells) {
        const double rate = double(cell.failures) / double(ec.replications);
        gates.check(rate < 0.01, "error-rate(n=" + std::to_string(cell.n) + ")",
                    std::to_string(cell.failures) + " failures");
        if (cell.has_score) {
            bool centered = true;
            for (long i = 0; i < cell.score.mean.size(); ++i)
                if (std::abs(cell.score.mean[i]) > 4.0 * cell.score.mean_se[i])
                    centered = false;
            gates.check(centered, "score-centering(n=" + std::to_string(cell.n) + ")",
                        "|mean| within 4 SE of 0");
        }
    }
    auto check_decreasing = [&](const std::string& name, auto getter, bool enabled) {
        if (!enabled || report.cells.size() < 2) return;
        bool ok = true;
        for (std::size_t i = 1; i < report.cells.size(); ++i)
            if (getter(report.cells[i]) >= getter(report.cells[i - 1])) ok = false;
        std::ostringstream detail;
        for (const auto& cell : report.cells) detail << getter(cell) << " ";
        gates.check(ok, name, "medians " + detail.str());
    };
    check_decreasing("remainder-decay",
                     [](const fraclan::LanCell& c) { return c.remainder_sup.median; },
                     ec.compute_remainder && ec.t_grid.size() != 1);
    check_decreasing("hessian-concentration",
                     [](const fraclan::LanCell& c) { return c.hessian_distance.median; },
                     ec.compute_hessian);
    check_decreasing("third-derivative-scaling",
                     [](const fraclan::LanCell& c) { return c.third_scaled.median; },
                     ec.compute_third);
    return gates.all_pass ? kExitOk : kExitAssertionFailed;
}

int cmd_trace_limit(const GlobalOptions& opts) {
    ConfigMap cfg = load_config(opts);
    const fraclan::ThetaVector theta = theta_from_config(cfg);
    const auto model = model_from_theta(theta);
    const int deriv_index = cfg.get_int("trace.deriv_index", 1);
    const int max_p = cfg.get_int("trace.max_p", 3);
    const std::vector<int> ladder =
        cfg.get_int_list("trace.n_ladder", {64, 128, 256, 512, 1024});
    const double max_dev = cfg.get_double("trace.max_final_relative_deviation", 5e-2);
    reject_unknown_keys(cfg, {"model", "trace", "run"});

    const fraclan::TraceLimitReport report =
        fraclan::run_trace_limit_experiment(*model, theta, deriv_index, max_p, ladder);
    fraclan::atomic_write_file(join_path(opts.out_dir, "trace_report.json"),
                               report.to_json());

    GateTally gates;
    gates.check(report.decreasing, "trace-deviation-decreasing",
                "deviation shrinks along the ladder for every p");
    gates.check(report.max_final_relative_deviation <= max_dev,
                "trace-final-relative-deviation",
                std::to_string(report.max_final_relative_deviation) + " <= " +
                    std::to_string(max_dev));
    return gates.all_pass ? kExitOk : kExitAssertionFailed;
}

int cmd_norm_bound(const GlobalOptions& opts) {
    ConfigMap cfg = load_config(opts);
    const fraclan::ThetaVector theta_f = theta_from_config(cfg);
    const auto model_f = model_from_theta(theta_f);
    const std::vector<double> g_values = cfg.get_double_list("norm.g_theta");
    fraclan::ThetaVector theta_g = theta_f;
    if (int(g_values.size()) != theta_f.dim())
        throw ConfigError("norm.g_theta must match the model dimension");
    for (int i = 0; i < theta_g.dim(); ++i) theta_g.values[i] = g_values[i];
    const std::vector<int> ladder =
        cfg.get_int_list("norm.n_ladder", {64, 128, 256, 512, 1024});
    reject_unknown_keys(cfg, {"model", "norm", "run"});

    const fraclan::NormBoundReport report = fraclan::run_norm_bound_experiment(
        *model_f, theta_f, *model_f, theta_g, ladder);
    fraclan::atomic_write_file(join_path(opts.out_dir, "norm_report.json"),
                               report.to_json());

    GateTally gates;
    gates.check(report.pass, "norm-exponent",
                "slope " + std::to_string(report.slope) + " <= " +
                    std::to_string(report.allowed_slope));
    return gates.all_pass ? kExitOk : kExitAssertionFailed;
}

int cmd_check_bounds(const GlobalOptions& opts) {
    ConfigMap cfg = load_config(opts);
    const fraclan::ThetaVector theta = theta_from_config(cfg);
    const auto model = model_from_theta(theta);
    const double delta = cfg.get_double("bounds.delta", 0.05);
    const double radius = cfg.get_double("bounds.radius", 0.05);
    fraclan::GridSpec x_grid;
    x_grid.count = cfg.get_int("bounds.x_count", 64);
    reject_unknown_keys(cfg, {"model", "bounds", "run"});

    std::vector<fraclan::ThetaVector> theta_grid;
    for (const auto& candidate : fraclan::theta_ball_grid(theta, radius)) {
        try {
            candidate.validate();
            theta_grid.push_back(candidate);
        } catch (const std::domain_error&) {
        }
    }
    const fraclan::BoundCheckReport report =
        fraclan::verify_assumption_bounds(*model, theta_grid, delta, x_grid);

    json out;
    out["delta"] = report.delta;
    out["theta_points"] = report.theta_points;
    out["x_points"] = report.x_points;
    out["c1_density"] = report.c1_density;
    out["c2_density"] = report.c2_density;
    out["c2_x_partial"] = report.c2_x_partial;
    out["c2_theta_partial"] = report.c2_theta_partial;
    out["pass"] = report.pass;
    fraclan::atomic_write_file(join_path(opts.out_dir, "bounds_report.json"),
                               out.dump(2) + "\n");

    GateTally gates;
    gates.check(report.pass, "assumption-bounds",
                "finite envelope constants over the (theta, x) grid");
    return gates.all_pass ? kExitOk : kExitAssertionFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact likelihood and LAN verification harness for stationary "
                 "Gaussian processes with power-law spectra"};
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_option("--config", opts.config_path, "Path to the key-value config file");
    app.add_option("--out", opts.out_dir, "Output directory (default .)");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Master seed override");
    app.add_option("--set", opts.overrides,
                   "Config override section.key=value (repeatable)");
    app.add_option("--workers", opts.workers, "Worker thread count (default 1)");

    auto* simulate = app.add_subcommand("simulate", "Draw a sample path and write CSV");
    auto* loglik = app.add_subcommand("loglik", "Exact Gaussian log-likelihood of a path");
    auto* score = app.add_subcommand("score", "Normalized score vector of a path");
    auto* fisher = app.add_subcommand("fisher", "Fisher information by quadrature");
    auto* lan_verify =
        app.add_subcommand("lan-verify", "Monte Carlo LAN expansion experiment");
    auto* trace_limit =
        app.add_subcommand("trace-limit", "Toeplitz trace functional vs its limit");
    auto* norm_bound =
        app.add_subcommand("norm-bound", "Operator norm growth exponent check");
    auto* check_bounds =
        app.add_subcommand("check-bounds", "Spectral density envelope constants");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }
    if (seed_opt->count() > 0) opts.seed = seed_value;

    try {
        if (simulate->parsed()) return cmd_simulate(opts);
        if (loglik->parsed()) return cmd_loglik(opts);
        if (score->parsed()) return cmd_score(opts);
        if (fisher->parsed()) return cmd_fisher(opts);
        if (lan_verify->parsed()) return cmd_lan_verify(opts);
        if (trace_limit->parsed()) return cmd_trace_limit(opts);
        if (norm_bound->parsed()) return cmd_norm_bound(opts);
        if (check_bounds->parsed()) return cmd_check_bounds(opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        // Parameter-range violations come from theta validation.
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    }
    return kExitConfigError;
}
