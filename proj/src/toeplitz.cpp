#include "fraclan/toeplitz.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fraclan {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

// ---- AutocovSequence -------------------------------------------------------

void AutocovSequence::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "lag,value\n";
    out.precision(17);
    for (int k = 0; k < size(); ++k) out << k << "," << lags[k] << "\n";
}

AutocovSequence AutocovSequence::read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed CSV row: " + line);
        vals.push_back(std::stod(line.substr(comma + 1)));
    }
    AutocovSequence c;
    c.lags = Eigen::Map<Eigen::VectorXd>(vals.data(), long(vals.size()));
    c.provenance = "user";
    return c;
}

// ---- SymmetricToeplitz -----------------------------------------------------

Eigen::MatrixXd SymmetricToeplitz::dense() const {
    const int m = n();
    Eigen::MatrixXd out(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(i, j) = first_row[std::abs(i - j)];
    return out;
}

Eigen::VectorXd SymmetricToeplitz::matvec(const Eigen::VectorXd& v) const {
    const int m = n();
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
    for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) acc += first_row[std::abs(i - j)] * v[j];
        y[i] = acc;
    }
    return y;
}

// ---- CholeskyFactor --------------------------------------------------------

CholeskyFactor CholeskyFactor::compute(const Eigen::MatrixXd& m) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
        // Locate the failing pivot for the error message.
        const int n = int(m.rows());
        Eigen::MatrixXd a = m;
        for (int j = 0; j < n; ++j) {
            double piv = a(j, j);
            if (j > 0) piv -= a.row(j).head(j).squaredNorm();
            if (!(piv > 0.0)) throw NotPositiveDefiniteError(j);
            const double ljj = std::sqrt(piv);
            a(j, j) = ljj;
            if (j + 1 < n) {
                Eigen::VectorXd col = a.col(j).tail(n - j - 1);
                if (j > 0)
                    col -= a.bottomLeftCorner(n - j - 1, j) * a.row(j).head(j).transpose();
                a.col(j).tail(n - j - 1) = col / ljj;
            }
        }
        throw NotPositiveDefiniteError(n - 1);
    }
    CholeskyFactor f;
    f.lower_ = llt.matrixL();
    f.log_det_ = 2.0 * f.lower_.diagonal().array().log().sum();
    return f;
}

Eigen::VectorXd CholeskyFactor::solve(const Eigen::VectorXd& b) const {
    if (b.size() != lower_.rows()) throw std::invalid_argument("solve: dimension mismatch");
    Eigen::VectorXd y = lower_.triangularView<Eigen::Lower>().solve(b);
    lower_.triangularView<Eigen::Lower>().transpose().solveInPlace(y);
    return y;
}

Eigen::MatrixXd CholeskyFactor::solve(const Eigen::MatrixXd& b) const {
    if (b.rows() != lower_.rows()) throw std::invalid_argument("solve: dimension mismatch");
    Eigen::MatrixXd y = lower_.triangularView<Eigen::Lower>().solve(b);
    lower_.triangularView<Eigen::Lower>().transpose().solveInPlace(y);
    return y;
}

Eigen::VectorXd CholeskyFactor::solve_lower(const Eigen::VectorXd& b) const {
    return lower_.triangularView<Eigen::Lower>().solve(b);
}

Eigen::VectorXd CholeskyFactor::solve_lower_transpose(const Eigen::VectorXd& b) const {
    return lower_.triangularView<Eigen::Lower>().transpose().solve(b);
}

// ---- construction ----------------------------------------------------------

double fourier_coefficient(const DensityFn& f, long k, const QuadratureSpec& spec) {
    auto integrand = [&](double x) { return std::cos(k * x) * f(x); };
    return 2.0 * integrate_graded(integrand, spec, int(std::abs(k)));
}

AutocovSequence autocov_from_density(const DensityFn& f, int n, const QuadratureSpec& spec) {
    AutocovSequence c;
    c.provenance = "quadrature";
    c.lags.resize(n);
    for (int k = 0; k < n; ++k) c.lags[k] = fourier_coefficient(f, k, spec) / (2.0 * kPi);
    return c;
}

SymmetricToeplitz build_toeplitz(const AutocovSequence& c, int n) {
    if (c.size() < n)
        throw std::invalid_argument("build_toeplitz: need at least n lags");
    return SymmetricToeplitz{c.lags.head(n)};
}

// ---- Levinson --------------------------------------------------------------

Eigen::VectorXd levinson_solve(const SymmetricToeplitz& t, const Eigen::VectorXd& b) {
    const int n = t.n();
    if (b.size() != n) throw std::invalid_argument("levinson_solve: dimension mismatch");
    const double r0 = t.first_row[0];
    if (!(r0 > 0.0)) throw NotPositiveDefiniteError(0);
    const Eigen::VectorXd r = t.first_row / r0;
    const Eigen::VectorXd bn = b / r0;

    Eigen::VectorXd y(n), x(n);
    y[0] = bn[0];
    if (n == 1) return y * 1.0;
    double alpha = -r[1];
    double beta = 1.0;
    x[0] = alpha;
    for (int k = 0; k < n - 1; ++k) {
        beta *= (1.0 - alpha * alpha);
        if (!(beta > 0.0)) throw NotPositiveDefiniteError(k + 1);
        double dot = 0.0;
        for (int i = 0; i < k + 1; ++i) dot += r[i + 1] * y[k - i];
        const double mu = (bn[k + 1] - dot) / beta;
        for (int i = 0; i < k + 1; ++i) y[i] += mu * x[k - i];
        y[k + 1] = mu;
        if (k < n - 2) {
            double xd = 0.0;
            for (int i = 0; i < k + 1; ++i) xd += r[i + 1] * x[k - i];
            alpha = -(r[k + 2] + xd) / beta;
            for (int i = 0; i < (k + 1) / 2 + 1 && i <= k - i; ++i) {
                const double xi = x[i], xki = x[k - i];
                x[i] = xi + alpha * xki;
                x[k - i] = xki + alpha * xi;
            }
            x[k + 1] = alpha;
        }
    }
    return y;
}

double levinson_log_det(const SymmetricToeplitz& t) {
    const int n = t.n();
    const double r0 = t.first_row[0];
    if (!(r0 > 0.0)) throw NotPositiveDefiniteError(0);
    if (n == 1) return std::log(r0);
    const Eigen::VectorXd r = t.first_row / r0;
    Eigen::VectorXd x(n);
    double alpha = -r[1];
    double beta = 1.0;
    double log_det = 0.0;
    x[0] = alpha;
    for (int k = 0; k < n - 1; ++k) {
        beta *= (1.0 - alpha * alpha);
        if (!(beta > 0.0)) throw NotPositiveDefiniteError(k + 1);
        log_det += std::log(beta);
        if (k < n - 2) {
            double xd = 0.0;
            for (int i = 0; i < k + 1; ++i) xd += r[i + 1] * x[k - i];
            alpha = -(r[k + 2] + xd) / beta;
            for (int i = 0; i < (k + 1) / 2 + 1 && i <= k - i; ++i) {
                const double xi = x[i], xki = x[k - i];
                x[i] = xi + alpha * xki;
                x[k - i] = xki + alpha * xi;
            }
            x[k + 1] = alpha;
        }
    }
    return n * std::log(r0) + log_det;
}

// ---- trace functionals -----------------------------------------------------

double trace_product_rows(const Eigen::VectorXd& f_row,
                          const std::vector<Eigen::VectorXd>& g_rows) {
    const int n = int(f_row.size());
    if (g_rows.empty() || g_rows.size() > 3)
        throw std::invalid_argument("trace_product: p must be 1..3");
    const CholeskyFactor chol = CholeskyFactor::compute(SymmetricToeplitz{f_row});
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (auto it = g_rows.rbegin(); it != g_rows.rend(); ++it) {
        if (it->size() != n) throw std::invalid_argument("trace_product: row length mismatch");
        m = SymmetricToeplitz{*it}.dense() * m;
        m = chol.solve(m);
    }
    return m.trace() / n;
}

double trace_product(const DensityFn& f, const std::vector<DensityFn>& g_list, int n,
                     const QuadratureSpec& spec) {
    Eigen::VectorXd f_row(n);
    for (int k = 0; k < n; ++k) f_row[k] = fourier_coefficient(f, k, spec);
    std::vector<Eigen::VectorXd> g_rows;
    for (const auto& g : g_list) {
        Eigen::VectorXd row(n);
        for (int k = 0; k < n; ++k) row[k] = fourier_coefficient(g, k, spec);
        g_rows.push_back(std::move(row));
    }
    return trace_product_rows(f_row, g_rows);
}

double spectral_limit_integral(const DensityFn& f, const std::vector<DensityFn>& g_list,
                               const QuadratureSpec& spec) {
    if (g_list.empty() || g_list.size() > 3)
        throw std::invalid_argument("spectral_limit_integral: p must be 1..3");
    auto integrand = [&](double x) {
        double v = std::pow(f(x), -double(g_list.size()));
        for (const auto& g : g_list) v *= g(x);
        return v;
    };
    return integrate_graded(integrand, spec) / kPi;
}

// ---- operator norm ---------------------------------------------------------

namespace {
// splitmix64; fixed start vector for reproducible estimates.
unsigned long long mix64(unsigned long long& state) {
    state += 0x9e3779b97f4a7c15ull;
    unsigned long long z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace

NormEstimate operator_norm_estimate(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply, int n,
    int max_iterations, double rel_tol, unsigned long long seed) {
    Eigen::VectorXd v(n);
    unsigned long long state = seed;
    for (int i = 0; i < n; ++i)
        v[i] = double(mix64(state) >> 11) * 0x1.0p-53 - 0.5;
    v.normalize();

    NormEstimate est;
    double lambda = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        Eigen::VectorXd w = apply(v);
        const double new_lambda = v.dot(w);
        const double wn = w.norm();
        est.iterations = it;
        if (wn == 0.0) {
            est.value = 0.0;
            est.converged = true;
            return est;
        }
        v = w / wn;
        if (it > 1 && std::abs(new_lambda - lambda) <= rel_tol * std::abs(new_lambda)) {
            est.value = new_lambda;
            est.converged = true;
            return est;
        }
        lambda = new_lambda;
    }
    est.value = lambda;
    est.converged = false;
    return est;
}

}  // namespace fraclan
