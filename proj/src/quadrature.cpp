#include "fraclan/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace fraclan {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Rule {
    std::vector<double> nodes, weights;
};

Rule compute_rule(int m) {
    // Newton iteration on Legendre polynomials; symmetric rule.
    Rule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[m - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[m - 1 - i] = w;
    }
    return r;
}

std::mutex g_rule_mutex;
std::map<int, Rule>& rule_cache() {
    static std::map<int, Rule> cache;
    return cache;
}

const Rule& get_rule(int m) {
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto& cache = rule_cache();
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, compute_rule(m)).first;
    return it->second;
}

double panel_integral(const std::function<double(double)>& f, double a, double b,
                      const Rule& rule) {
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + hw * rule.nodes[i]);
    return acc * hw;
}

}  // namespace

const std::vector<double>& gauss_legendre_nodes(int m) { return get_rule(m).nodes; }
const std::vector<double>& gauss_legendre_weights(int m) { return get_rule(m).weights; }

double integrate_graded(const std::function<double(double)>& f,
                        const QuadratureSpec& spec, int oscillation_k) {
    // Panel layout: [pi 2^-(j+1), pi 2^-j] for j = 0..levels-1, plus the
    // innermost stub [0, pi 2^-levels].  Panels wider than pi/(4k) are split
    // uniformly so the oscillating factor is resolved.
    std::vector<std::pair<double, double>> panels;
    double hi = kPi;
    for (int j = 0; j < spec.levels; ++j) {
        const double lo = hi * 0.5;
        panels.emplace_back(lo, hi);
        hi = lo;
    }
    panels.emplace_back(0.0, hi);

    const double max_width =
        oscillation_k > 0 ? kPi / (4.0 * oscillation_k) : 2.0 * kPi;

    double prev = 0.0;
    bool have_prev = false;
    for (int order = spec.base_order; order <= spec.max_order; order *= 2) {
        const Rule& rule = get_rule(order);
        double total = 0.0;
        for (const auto& [a, b] : panels) {
            const double width = b - a;
            int parts = 1;
            if (width > max_width) parts = int(std::ceil(width / max_width));
            const double h = width / parts;
            for (int p = 0; p < parts; ++p)
                total += panel_integral(f, a + p * h, a + (p + 1) * h, rule);
        }
        if (have_prev) {
            const double scale = std::max(std::abs(total), std::abs(prev));
            if (std::abs(total - prev) <=
                std::max(spec.rel_tol * scale, spec.abs_tol))
                return total;
        }
        prev = total;
        have_prev = true;
    }
    throw QuadratureError("integrate_graded: order budget exceeded without convergence");
}

}  // namespace fraclan
