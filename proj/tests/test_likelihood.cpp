#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fraclan/arfima.hpp"
#include "fraclan/fgn.hpp"
#include "fraclan/likelihood.hpp"
#include "fraclan/sampler.hpp"

#include <array>
#include <cmath>
#include <random>

using namespace fraclan;

namespace {
constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd random_vector(int n, unsigned long long seed) {
    GaussianRng rng(seed);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.normal();
    return x;
}
}  // namespace

TEST_CASE("white noise log density closed form") {
    const WhiteNoiseModel model;
    const double s2 = 1.7;
    const ThetaVector theta = ThetaVector::white_noise(s2);
    const int n = 10;
    const LikelihoodContext ctx(model, theta, n);
    const Eigen::VectorXd x = random_vector(n, 5);
    const double expected =
        -0.5 * n * std::log(2.0 * kPi * s2) - x.squaredNorm() / (2.0 * s2);
    CHECK(log_density(ctx, x) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("white noise score, hessian, third partial closed forms") {
    const WhiteNoiseModel model;
    const double s2 = 0.8;
    const ThetaVector theta = ThetaVector::white_noise(s2);
    const int n = 12;
    const LikelihoodContext ctx(model, theta, n);
    const Eigen::VectorXd x = random_vector(n, 9);
    const double q = x.squaredNorm();

    const Eigen::VectorXd sc = score(ctx, x);
    REQUIRE(sc.size() == 1);
    CHECK(sc[0] == doctest::Approx(-n / (2 * s2) + q / (2 * s2 * s2)).epsilon(1e-11));

    const Eigen::MatrixXd h = log_density_hessian(ctx, x);
    CHECK(h(0, 0) ==
          doctest::Approx(n / (2 * s2 * s2) - q / (s2 * s2 * s2)).epsilon(1e-10));

    const double t3 = log_density_third_partial(ctx, x, 0, 0, 0);
    const double expected3 =
        -n / (s2 * s2 * s2) + 3.0 * q / (s2 * s2 * s2 * s2);
    CHECK(t3 == doctest::Approx(expected3).epsilon(1e-9));
}

TEST_CASE("likelihood ratio identity and antisymmetry") {
    const FgnModel model;
    const int n = 24;
    const ThetaVector a = ThetaVector::fgn(1.0, 0.7);
    const ThetaVector b = ThetaVector::fgn(1.2, 0.6);
    const LikelihoodContext ctx_a(model, a, n), ctx_b(model, b, n);
    const Eigen::VectorXd x = random_vector(n, 17);
    const double direct = log_density(ctx_b, x) - log_density(ctx_a, x);
    CHECK(log_likelihood_ratio(ctx_b, ctx_a, x) ==
          doctest::Approx(direct).epsilon(1e-10));
    CHECK(log_likelihood_ratio(ctx_a, ctx_b, x) ==
          doctest::Approx(-log_likelihood_ratio(ctx_b, ctx_a, x)).epsilon(1e-12));
    CHECK(log_likelihood_ratio(ctx_a, ctx_a, x) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("score and hessian match finite differences of the log density: fGn") {
    const FgnModel model;
    const int n = 32;
    const ThetaVector theta = ThetaVector::fgn(1.1, 0.67);
    const Eigen::VectorXd x = random_vector(n, 23);
    const LikelihoodContext ctx(model, theta, n);
    auto ll = [&](double ds, double dh) {
        const ThetaVector t = ThetaVector::fgn(1.1 + ds, 0.67 + dh);
        return log_density(LikelihoodContext(model, t, n), x);
    };
    const double h = 1e-5;
    const Eigen::VectorXd sc = score(ctx, x);
    CHECK(sc[0] == doctest::Approx((ll(h, 0) - ll(-h, 0)) / (2 * h)).epsilon(1e-6));
    CHECK(sc[1] == doctest::Approx((ll(0, h) - ll(0, -h)) / (2 * h)).epsilon(1e-6));

    const Eigen::MatrixXd hess = log_density_hessian(ctx, x);
    const double h2 = 1e-4;
    CHECK(hess(0, 0) ==
          doctest::Approx((ll(h2, 0) - 2 * ll(0, 0) + ll(-h2, 0)) / (h2 * h2))
              .epsilon(1e-4));
    CHECK(hess(1, 1) ==
          doctest::Approx((ll(0, h2) - 2 * ll(0, 0) + ll(0, -h2)) / (h2 * h2))
              .epsilon(1e-4));
    const double mixed = (ll(h2, h2) - ll(h2, -h2) - ll(-h2, h2) + ll(-h2, -h2)) /
                         (4 * h2 * h2);
    CHECK(hess(0, 1) == doctest::Approx(mixed).epsilon(1e-4));
    CHECK(hess(0, 1) == doctest::Approx(hess(1, 0)).epsilon(1e-12));
}

TEST_CASE("third partial matches finite differences of the score: fGn") {
    const FgnModel model;
    const int n = 24;
    const ThetaVector theta = ThetaVector::fgn(1.0, 0.6);
    const Eigen::VectorXd x = random_vector(n, 31);
    const LikelihoodContext ctx(model, theta, n);
    auto hess_at = [&](double ds, double dh) {
        const ThetaVector t = ThetaVector::fgn(1.0 + ds, 0.6 + dh);
        return log_density_hessian(LikelihoodContext(model, t, n), x);
    };
    const double h = 1e-5;
    // d/dH of hess(0,0) = third partial (0,0,1) etc.
    const Eigen::MatrixXd up = hess_at(0, h), dn = hess_at(0, -h);
    CHECK(log_density_third_partial(ctx, x, 0, 0, 1) ==
          doctest::Approx((up(0, 0) - dn(0, 0)) / (2 * h)).epsilon(1e-4));
    CHECK(log_density_third_partial(ctx, x, 1, 1, 1) ==
          doctest::Approx((up(1, 1) - dn(1, 1)) / (2 * h)).epsilon(1e-4));
    const Eigen::MatrixXd up_s = hess_at(h, 0), dn_s = hess_at(-h, 0);
    CHECK(log_density_third_partial(ctx, x, 0, 1, 1) ==
          doctest::Approx((up_s(1, 1) - dn_s(1, 1)) / (2 * h)).epsilon(1e-4));
}

TEST_CASE("third partial is permutation invariant") {
    const ArfimaModel model(1, 0);
    Eigen::VectorXd phi(1);
    phi << -0.4;
    const ThetaVector theta = ThetaVector::arfima(1.0, 0.25, phi);
    const int n = 16;
    const LikelihoodContext ctx(model, theta, n);
    const Eigen::VectorXd x = random_vector(n, 41);
    const double base = log_density_third_partial(ctx, x, 0, 1, 2);
    const std::vector<std::array<int, 3>> perms = {
        {1, 0, 2}, {2, 1, 0}, {1, 2, 0}, {0, 2, 1}, {2, 0, 1}};
    for (const auto& p : perms) {
        CHECK(log_density_third_partial(ctx, x, p[0], p[1], p[2]) ==
              doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("batch paths agree with single-sample paths") {
    const FgnModel model;
    const int n = 20, r = 4;
    const ThetaVector theta0 = ThetaVector::fgn(1.0, 0.7);
    const ThetaVector theta1 = ThetaVector::fgn(1.05, 0.72);
    const LikelihoodContext c0(model, theta0, n), c1(model, theta1, n);
    Eigen::MatrixXd xs(n, r);
    for (int j = 0; j < r; ++j) xs.col(j) = random_vector(n, 100 + j);

    const Eigen::VectorXd ld = log_density_batch(c0, xs);
    const Eigen::VectorXd lr = log_likelihood_ratio_batch(c1, c0, xs);
    const Eigen::MatrixXd sc = score_batch(c0, xs);
    const auto hs = log_density_hessian_batch(c0, xs);
    const Eigen::VectorXd tp = log_density_third_partial_batch(c0, xs, 0, 1, 1);
    for (int j = 0; j < r; ++j) {
        const Eigen::VectorXd x = xs.col(j);
        CHECK(ld[j] == doctest::Approx(log_density(c0, x)).epsilon(1e-12));
        CHECK(lr[j] ==
              doctest::Approx(log_likelihood_ratio(c1, c0, x)).epsilon(1e-11));
        CHECK((sc.col(j) - score(c0, x)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((hs[size_t(j)] - log_density_hessian(c0, x)).cwiseAbs().maxCoeff() <
              1e-9);
        CHECK(tp[j] ==
              doctest::Approx(log_density_third_partial(c0, x, 0, 1, 1))
                  .epsilon(1e-8)
                  .scale(std::max(1.0, std::abs(tp[j]))));
    }
}

TEST_CASE("Fisher information known values") {
    const WhiteNoiseModel wn;
    const Eigen::MatrixXd iw =
        fisher_information(wn, ThetaVector::white_noise(1.3));
    CHECK(iw(0, 0) == doctest::Approx(1.0 / (2.0 * 1.3 * 1.3)).epsilon(1e-10));

    const ArfimaModel ar(0, 0);
    const Eigen::MatrixXd ia =
        fisher_information(ar, ThetaVector::arfima(1.0, 0.3));
    CHECK(ia(1, 1) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-6));
    CHECK(ia(0, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
    CHECK(ia(0, 0) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("Fisher information is symmetric positive definite for fGn") {
    const FgnModel model;
    const Eigen::MatrixXd fi =
        fisher_information(model, ThetaVector::fgn(1.0, 0.7));
    CHECK((fi - fi.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fi);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("lan expansion at t = 0 is identically zero") {
    const FgnModel model;
    const ThetaVector theta0 = ThetaVector::fgn(1.0, 0.7);
    const Eigen::VectorXd x = random_vector(64, 57);
    const LanExpansionRecord rec =
        lan_expansion(model, theta0, Eigen::VectorXd::Zero(2), x);
    CHECK(rec.f_n == 0.0);
    CHECK(rec.inner == 0.0);
    CHECK(rec.quad == 0.0);
    CHECK(rec.remainder == 0.0);
}

TEST_CASE("lan decomposition identity and batch agreement") {
    const FgnModel model;
    const int n = 48;
    const ThetaVector theta0 = ThetaVector::fgn(1.0, 0.7);
    Eigen::VectorXd t(2);
    t << 0.8, -0.5;
    const Eigen::MatrixXd fisher = fisher_information(model, theta0);
    const Eigen::VectorXd x = random_vector(n, 61);

    const LanExpansionRecord rec = lan_expansion(model, theta0, t, x, fisher);
    CHECK(rec.remainder ==
          doctest::Approx(rec.f_n - rec.inner + rec.quad).epsilon(1e-12));
    CHECK(rec.quad ==
          doctest::Approx(0.5 * t.dot(fisher * t)).epsilon(1e-12));

    const ThetaVector shifted = shift_theta(theta0, t, n);
    CHECK(shifted.values[0] == doctest::Approx(1.0 + 0.8 / std::sqrt(double(n))));
    CHECK(shifted.values[1] == doctest::Approx(0.7 - 0.5 / std::sqrt(double(n))));
    const LikelihoodContext c0(model, theta0, n), ct(model, shifted, n);
    Eigen::MatrixXd xs(n, 2);
    xs.col(0) = x;
    xs.col(1) = random_vector(n, 62);
    const Eigen::VectorXd rem = lan_remainder_batch(ct, c0, t, xs, fisher);
    CHECK(rem[0] == doctest::Approx(rec.remainder).epsilon(1e-10).scale(1.0));
}

TEST_CASE("context caches are consistent") {
    const FgnModel model;
    const int n = 14;
    const LikelihoodContext ctx(model, ThetaVector::fgn(1.0, 0.65), n);
    const Eigen::MatrixXd b = ctx.inverse();
    const Eigen::MatrixXd dense_t =
        SymmetricToeplitz{ctx.t_row()}.dense();
    CHECK((b * dense_t - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <
          1e-10);

    // trace identities against dense arithmetic
    const std::vector<int> j = {1}, k = {0};
    const Eigen::MatrixXd dj = SymmetricToeplitz{ctx.deriv_row(j)}.dense();
    const Eigen::MatrixXd dk = SymmetricToeplitz{ctx.deriv_row(k)}.dense();
    CHECK(ctx.trace_inv_deriv(j) == doctest::Approx((b * dj).trace()).epsilon(1e-10));
    CHECK(ctx.trace_pair(j, k) ==
          doctest::Approx((b * dj * b * dk).trace()).epsilon(1e-10));
    CHECK(ctx.trace_triple(1, 0, 1) ==
          doctest::Approx((b * dj * b * dk * b * dj).trace()).epsilon(1e-9));

    const Eigen::VectorXd v = random_vector(n, 71);
    CHECK((ctx.apply_deriv(j, v) - dj * v).cwiseAbs().maxCoeff() < 1e-11);
    ctx.drop_products();
    CHECK(ctx.trace_pair(j, k) ==
          doctest::Approx((b * dj * b * dk).trace()).epsilon(1e-10));
}
