#include "fraclan/theta.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclan {

namespace {
constexpr double kRootTol = 1e-8;
}

std::string layout_name(ModelLayout layout) {
    switch (layout) {
        case ModelLayout::WhiteNoise: return "white";
        case ModelLayout::Fgn: return "fgn";
        case ModelLayout::Arfima: return "arfima";
    }
    return "?";
}

ModelLayout layout_from_name(const std::string& name) {
    if (name == "white") return ModelLayout::WhiteNoise;
    if (name == "fgn") return ModelLayout::Fgn;
    if (name == "arfima") return ModelLayout::Arfima;
    throw std::invalid_argument("unknown model layout: " + name);
}

ThetaVector ThetaVector::white_noise(double sigma2) {
    ThetaVector t;
    t.layout = ModelLayout::WhiteNoise;
    t.values.resize(1);
    t.values[0] = sigma2;
    return t;
}

ThetaVector ThetaVector::fgn(double sigma2, double hurst) {
    ThetaVector t;
    t.layout = ModelLayout::Fgn;
    t.values.resize(2);
    t.values << sigma2, hurst;
    return t;
}

ThetaVector ThetaVector::arfima(double sigma2, double d, const Eigen::VectorXd& phi,
                                const Eigen::VectorXd& psi) {
    ThetaVector t;
    t.layout = ModelLayout::Arfima;
    t.ar_order = int(phi.size());
    t.ma_order = int(psi.size());
    t.values.resize(2 + t.ar_order + t.ma_order);
    t.values[0] = sigma2;
    t.values[1] = d;
    t.values.segment(2, t.ar_order) = phi;
    t.values.segment(2 + t.ar_order, t.ma_order) = psi;
    return t;
}

Eigen::VectorXcd polynomial_roots(const Eigen::VectorXd& coeffs) {
    // Drop trailing (near-)zero leading coefficients.
    int p = int(coeffs.size());
    while (p > 0 && coeffs[p - 1] == 0.0) --p;
    if (p == 0) return Eigen::VectorXcd();
    // Monic form of X^p + (a_{p-1}/a_p) X^{p-1} + ... + (1/a_p).
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (int i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
    companion(0, p - 1) = -1.0 / coeffs[p - 1];
    for (int i = 1; i < p; ++i) companion(i, p - 1) = -coeffs[i - 1] / coeffs[p - 1];
    // Columns convention: roots of a_p X^p + ... + a_1 X + 1.
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    return solver.eigenvalues();
}

void ThetaVector::check_ranges() const {
    switch (layout) {
        case ModelLayout::WhiteNoise:
            if (dim() != 1) throw std::domain_error("white-noise theta must have dimension 1");
            if (sigma2() <= 0.0) throw std::domain_error("sigma2 must be positive");
            break;
        case ModelLayout::Fgn:
            if (dim() != 2) throw std::domain_error("fGn theta must have dimension 2");
            if (sigma2() <= 0.0) throw std::domain_error("sigma2 must be positive");
            if (hurst() <= 0.0 || hurst() >= 1.0)
                throw std::domain_error("fGn requires 0 < H < 1");
            break;
        case ModelLayout::Arfima:
            if (dim() != 2 + ar_order + ma_order)
                throw std::domain_error("ARFIMA theta dimension mismatch");
            if (sigma2() <= 0.0) throw std::domain_error("sigma2 must be positive");
            if (d() >= 1.0) throw std::domain_error("ARFIMA requires d < 1");
            break;
    }
}

void ThetaVector::validate() const {
    check_ranges();
    if (layout != ModelLayout::Arfima) return;

    const Eigen::VectorXcd ar_roots = polynomial_roots(phi());
    const Eigen::VectorXcd ma_roots = polynomial_roots(psi());
    for (int i = 0; i < ar_roots.size(); ++i)
        if (std::abs(ar_roots[i]) <= 1.0 + kRootTol)
            throw std::domain_error("AR polynomial has a root of modulus <= 1");
    for (int i = 0; i < ma_roots.size(); ++i)
        if (std::abs(ma_roots[i]) <= 1.0 + kRootTol)
            throw std::domain_error("MA polynomial has a root of modulus <= 1");
    for (int i = 0; i < ar_roots.size(); ++i)
        for (int j = 0; j < ma_roots.size(); ++j)
            if (std::abs(ar_roots[i] - ma_roots[j]) <= kRootTol)
                throw std::domain_error("AR and MA polynomials share a root");
}

}  // namespace fraclan
