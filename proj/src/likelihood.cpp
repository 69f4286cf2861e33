#include "fraclan/likelihood.hpp"

#include <algorithm>
#include <cmath>

namespace fraclan {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

std::vector<int> sorted(std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    return idx;
}
}  // namespace

LikelihoodContext::LikelihoodContext(const SpectralModel& model, const ThetaVector& theta,
                                     int n)
    : model_(model), theta_(theta), n_(n) {
    theta_.validate();
    t_row_ = kTwoPi * model_.autocov_sequence(theta_, n_);
    chol_ = CholeskyFactor::compute(SymmetricToeplitz{t_row_});
}

const Eigen::VectorXd& LikelihoodContext::deriv_row(const std::vector<int>& idx) const {
    auto key = sorted(idx);
    auto it = rows_.find(key);
    if (it == rows_.end())
        it = rows_.emplace(key, kTwoPi * model_.autocov_partial_sequence(theta_, n_, key))
                 .first;
    return it->second;
}

Eigen::VectorXd LikelihoodContext::apply_deriv(const std::vector<int>& idx,
                                               const Eigen::VectorXd& v) const {
    return SymmetricToeplitz{deriv_row(idx)}.matvec(v);
}

Eigen::MatrixXd LikelihoodContext::apply_deriv(const std::vector<int>& idx,
                                               const Eigen::MatrixXd& v) const {
    return SymmetricToeplitz{deriv_row(idx)}.dense() * v;
}

const Eigen::MatrixXd& LikelihoodContext::inverse() const {
    if (!has_inv_) {
        const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n_, n_);
        inv_ = chol_.solve(identity);
        inv_diag_sums_.resize(n_);
        for (int l = 0; l < n_; ++l) inv_diag_sums_[l] = inv_.diagonal(l).sum();
        has_inv_ = true;
    }
    return inv_;
}

double LikelihoodContext::trace_inv_deriv(const std::vector<int>& idx) const {
    inverse();
    const Eigen::VectorXd& d = deriv_row(idx);
    double acc = inv_diag_sums_[0] * d[0];
    for (int l = 1; l < n_; ++l) acc += 2.0 * inv_diag_sums_[l] * d[l];
    return acc;
}

const Eigen::MatrixXd& LikelihoodContext::inv_deriv_product(
    const std::vector<int>& idx) const {
    auto key = sorted(idx);
    auto it = products_.find(key);
    if (it == products_.end()) {
        const Eigen::MatrixXd d = SymmetricToeplitz{deriv_row(key)}.dense();
        it = products_.emplace(key, inverse() * d).first;
    }
    return it->second;
}

double LikelihoodContext::trace_pair(const std::vector<int>& a,
                                     const std::vector<int>& b) const {
    const Eigen::MatrixXd& ma = inv_deriv_product(a);
    const Eigen::MatrixXd& mb = inv_deriv_product(b);
    return ma.cwiseProduct(mb.transpose()).sum();
}

double LikelihoodContext::trace_triple(int j, int k, int l) const {
    const Eigen::MatrixXd& mj = inv_deriv_product({j});
    const Eigen::MatrixXd& mk = inv_deriv_product({k});
    const Eigen::MatrixXd& ml = inv_deriv_product({l});
    const Eigen::MatrixXd p = mj * mk;
    return p.cwiseProduct(ml.transpose()).sum();
}

void LikelihoodContext::drop_products() const {
    products_.clear();
    inv_.resize(0, 0);
    inv_diag_sums_.resize(0);
    has_inv_ = false;
}

// ---- densities and ratios --------------------------------------------------

double log_density(const LikelihoodContext& ctx, const Eigen::VectorXd& x) {
    const Eigen::VectorXd z = ctx.chol().solve_lower(x);
    return -0.5 * ctx.log_det() - kPi * z.squaredNorm();
}

Eigen::VectorXd log_density_batch(const LikelihoodContext& ctx,
                                  const Eigen::MatrixXd& x_cols) {
    Eigen::MatrixXd z = ctx.chol().lower().triangularView<Eigen::Lower>().solve(x_cols);
    return (-kPi * z.colwise().squaredNorm().array() - 0.5 * ctx.log_det()).transpose();
}

double log_likelihood_ratio(const LikelihoodContext& at_theta,
                            const LikelihoodContext& at_theta0,
                            const Eigen::VectorXd& x) {
    return log_density(at_theta, x) - log_density(at_theta0, x);
}

Eigen::VectorXd log_likelihood_ratio_batch(const LikelihoodContext& at_theta,
                                           const LikelihoodContext& at_theta0,
                                           const Eigen::MatrixXd& x_cols) {
    return log_density_batch(at_theta, x_cols) - log_density_batch(at_theta0, x_cols);
}

// ---- score -----------------------------------------------------------------

Eigen::VectorXd score(const LikelihoodContext& ctx, const Eigen::VectorXd& x) {
    const int m = ctx.dim();
    const Eigen::VectorXd y = ctx.chol().solve(x);
    Eigen::VectorXd g(m);
    for (int k = 0; k < m; ++k)
        g[k] = kPi * y.dot(ctx.apply_deriv({k}, y)) - 0.5 * ctx.trace_inv_deriv({k});
    return g;
}

Eigen::MatrixXd score_batch(const LikelihoodContext& ctx, const Eigen::MatrixXd& x_cols) {
    const int m = ctx.dim();
    const long r = x_cols.cols();
    const Eigen::MatrixXd y = ctx.chol().solve(x_cols);
    Eigen::MatrixXd g(m, r);
    for (int k = 0; k < m; ++k) {
        const Eigen::MatrixXd dy = ctx.apply_deriv({k}, y);
        const double tr = ctx.trace_inv_deriv({k});
        g.row(k) = kPi * (y.cwiseProduct(dy)).colwise().sum().array() - 0.5 * tr;
    }
    return g;
}

// ---- Hessian ---------------------------------------------------------------

Eigen::MatrixXd log_density_hessian(const LikelihoodContext& ctx,
                                    const Eigen::VectorXd& x) {
    const Eigen::MatrixXd xm = x;
    return log_density_hessian_batch(ctx, xm).front();
}

std::vector<Eigen::MatrixXd> log_density_hessian_batch(const LikelihoodContext& ctx,
                                                       const Eigen::MatrixXd& x_cols) {
    const int m = ctx.dim();
    const long r = x_cols.cols();
    const Eigen::MatrixXd y = ctx.chol().solve(x_cols);
    std::vector<Eigen::MatrixXd> dy(m);
    for (int k = 0; k < m; ++k) dy[k] = ctx.apply_deriv({k}, y);
    std::vector<Eigen::MatrixXd> wy(m);
    for (int k = 0; k < m; ++k) wy[k] = ctx.chol().solve(dy[k]);

    std::vector<Eigen::MatrixXd> out(r, Eigen::MatrixXd(m, m));
    for (int j = 0; j < m; ++j) {
        for (int k = j; k < m; ++k) {
            const Eigen::MatrixXd djk_y = ctx.apply_deriv({j, k}, y);
            const double tr_const = -0.5 * ctx.trace_inv_deriv({j, k}) +
                                    0.5 * ctx.trace_pair({j}, {k});
            const Eigen::ArrayXd quad =
                kPi * (y.cwiseProduct(djk_y)).colwise().sum().array() -
                2.0 * kPi * (dy[j].cwiseProduct(wy[k])).colwise().sum().array();
            for (long i = 0; i < r; ++i) {
                out[i](j, k) = quad[i] + tr_const;
                out[i](k, j) = out[i](j, k);
            }
        }
    }
    return out;
}

// ---- third partials --------------------------------------------------------

double log_density_third_partial(const LikelihoodContext& ctx, const Eigen::VectorXd& x,
                                 int j, int k, int l) {
    const Eigen::MatrixXd xm = x;
    return log_density_third_partial_batch(ctx, xm, j, k, l)[0];
}

Eigen::VectorXd log_density_third_partial_batch(const LikelihoodContext& ctx,
                                                const Eigen::MatrixXd& x_cols, int j,
                                                int k, int l) {
    const Eigen::MatrixXd y = ctx.chol().solve(x_cols);

    // Distinct first-order indices and their D_a y, B D_a y columns.
    std::vector<int> firsts = {j, k, l};
    std::sort(firsts.begin(), firsts.end());
    firsts.erase(std::unique(firsts.begin(), firsts.end()), firsts.end());
    std::map<int, Eigen::MatrixXd> v, w;
    for (int a : firsts) {
        v[a] = ctx.apply_deriv({a}, y);
        w[a] = ctx.chol().solve(v[a]);
    }

    auto pair_dot = [&](int a, int b, int c) {
        // y^T D_{ab} B D_c y per column.
        const Eigen::MatrixXd dab_y = ctx.apply_deriv({a, b}, y);
        return (dab_y.cwiseProduct(w[c])).colwise().sum().array().eval();
    };
    auto triple_dot = [&](int a, int b, int c) {
        // w_a^T D_b w_c per column.
        const Eigen::MatrixXd db_wc = ctx.apply_deriv({b}, w[c]);
        return (w[a].cwiseProduct(db_wc)).colwise().sum().array().eval();
    };

    const Eigen::MatrixXd djkl_y = ctx.apply_deriv({j, k, l}, y);
    Eigen::ArrayXd quad = (y.cwiseProduct(djkl_y)).colwise().sum().array();
    quad -= 2.0 * (pair_dot(k, l, j) + pair_dot(j, l, k) + pair_dot(j, k, l));
    quad += 2.0 * (triple_dot(j, k, l) + triple_dot(j, l, k) + triple_dot(k, j, l));

    const double tr_logdet = 2.0 * ctx.trace_triple(j, k, l) -
                             (ctx.trace_pair({k, l}, {j}) + ctx.trace_pair({j, l}, {k}) +
                              ctx.trace_pair({j, k}, {l})) +
                             ctx.trace_inv_deriv({j, k, l});
    return (kPi * quad - 0.5 * tr_logdet).matrix();
}

// ---- Fisher information and the LAN decomposition --------------------------

Eigen::MatrixXd fisher_information(const SpectralModel& model, const ThetaVector& theta,
                                   const QuadratureSpec& spec) {
    theta.validate();
    const int m = model.dim();
    Eigen::MatrixXd info(m, m);
    for (int j = 0; j < m; ++j) {
        for (int k = j; k < m; ++k) {
            auto integrand = [&](double x) {
                const double f = model.density(theta, x);
                return model.theta_partial(theta, x, {j}) *
                       model.theta_partial(theta, x, {k}) / (f * f);
            };
            info(j, k) = integrate_graded(integrand, spec) / kTwoPi;
            info(k, j) = info(j, k);
        }
    }
    return info;
}

ThetaVector shift_theta(const ThetaVector& theta0, const Eigen::VectorXd& t, int n) {
    if (t.size() != theta0.dim())
        throw std::invalid_argument("shift_theta: dimension mismatch");
    ThetaVector shifted = theta0;
    shifted.values += t / std::sqrt(double(n));
    return shifted;
}

Eigen::VectorXd lan_remainder_batch(const LikelihoodContext& at_shifted,
                                    const LikelihoodContext& at_theta0,
                                    const Eigen::VectorXd& t,
                                    const Eigen::MatrixXd& x_cols,
                                    const Eigen::MatrixXd& fisher) {
    const Eigen::VectorXd f_n = log_likelihood_ratio_batch(at_shifted, at_theta0, x_cols);
    const Eigen::MatrixXd z = score_batch(at_theta0, x_cols) /
                              std::sqrt(double(at_theta0.n()));
    const double quad = 0.5 * t.dot(fisher * t);
    return f_n.array() - (t.transpose() * z).transpose().array() + quad;
}

LanExpansionRecord lan_expansion(const SpectralModel& model, const ThetaVector& theta0,
                                 const Eigen::VectorXd& t, const Eigen::VectorXd& x,
                                 const Eigen::MatrixXd& fisher) {
    const int n = int(x.size());
    const LikelihoodContext at0(model, theta0, n);
    const LikelihoodContext at_shifted(model, shift_theta(theta0, t, n), n);
    const Eigen::MatrixXd info =
        fisher.size() > 0 ? fisher : fisher_information(model, theta0);

    LanExpansionRecord rec;
    rec.f_n = log_likelihood_ratio(at_shifted, at0, x);
    rec.inner = t.dot(score(at0, x)) / std::sqrt(double(n));
    rec.quad = 0.5 * t.dot(info * t);
    rec.remainder = rec.f_n - rec.inner + rec.quad;
    return rec;
}

}  // namespace fraclan
