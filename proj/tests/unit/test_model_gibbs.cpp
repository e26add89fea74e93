#include "doctest.h"

#include <cmath>
#include <numbers>

#include "exact/model_gibbs.hpp"
#include "exact/stats.hpp"
#include "exact/factory.hpp"
#include "support/reference_tables.hpp"
#include "support/test_support.hpp"

using namespace exact;

namespace {

GibbsModel model() {
    const GibbsDefaults g;
    return GibbsModel(g.ybar, g.s2, g.m, g.lambda, g.d);
}

double ig_log_pdf(double a, double r, double x) { return a * std::log(r) - std::lgamma(a) - (a + 1) * std::log(x) - r / x; }

double normal_pdf(double x, double mean, double var) {
    return std::exp(-(x - mean) * (x - mean) / (2 * var)) / std::sqrt(2 * std::numbers::pi * var);
}

} // namespace

TEST_SUITE("model_gibbs") {

TEST_CASE("construction constraints") {
    CHECK_THROWS_AS(GibbsModel(1, 4, 4, 0.9, 20), std::invalid_argument);
    CHECK_THROWS_AS(GibbsModel(1, 4, 11, 0.1, 20), std::invalid_argument);
    CHECK_THROWS_AS(GibbsModel(1, 4, 11, 1.0, 20), std::invalid_argument);
    CHECK_THROWS_AS(GibbsModel(1, 4, 11, 0.5, 3.6), std::invalid_argument);
    CHECK_NOTHROW(GibbsModel(1, 4, 11, 0.5, 11.0 / 3.0));
}

TEST_CASE("closed-form constants") {
    const auto g = model();
    CHECK(g.b() == doctest::Approx(11.0 / 8.0));
    const double ts = 11 * (g.d() - 1) / (10 * std::log(1 + (g.d() - 1) / 4));
    CHECK(g.theta_star() == doctest::Approx(ts).epsilon(1e-14));
    CHECK(g.A_sup() == doctest::Approx(11.0 / 24.0 + 11.0 / 8.0));
    CHECK(std::abs(g.epsilon() - 0.5750034) < 1e-6);
    CHECK(std::abs(beta_star(g.drift()) - 1.3958) < 1e-4);
    CHECK(g.theta_shape() == 5.0);
}

TEST_CASE("epsilon: quadrature, limit at d = 1 and monotonicity") {
    double prev = 1.0;
    for (double d : {1.0 + 1e-9, 2.0, 11.0 / 3.0, 6.0, 10.0}) {
        const auto mn = gibbs_minorization(4.0, 11, d);
        const double a = 5.0;
        const double small = 22.0;
        const double big = 5.5 * (4.0 + d - 1);
        auto inf = [&](double t) { return std::exp(std::min(ig_log_pdf(a, small, t), ig_log_pdf(a, big, t))); };
        const double quad = testing::integrate(inf, 1e-9, mn.theta_star) + testing::integrate_to_inf(inf, mn.theta_star);
        CHECK(mn.epsilon == doctest::Approx(quad).epsilon(1e-9));
        CHECK(mn.epsilon < prev);
        prev = mn.epsilon;
    }
    CHECK(gibbs_minorization(4.0, 11, 1.0 + 1e-9).epsilon == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(gibbs_minorization(4.0, 11, 1.0), std::domain_error);
}

TEST_CASE("step moments") {
    const auto g = model();
    Rng rng(1);
    std::vector<double> th(100000);
    for (auto& t : th) t = g.step({3.0, g.ybar()}, rng).next.theta;
    CHECK(g.theta_conditional(g.ybar()).mean() == doctest::Approx(5.5));
    CHECK(testing::within_se(stats::mean(th), 5.5, stats::standard_error(th)));

    std::vector<double> mu(100000);
    for (auto& v : mu) v = g.step({3.0, 2.5}, rng).next.mu;
    CHECK(testing::within_se(stats::mean(mu), g.ybar(), stats::standard_error(mu)));

    std::vector<double> chain(1000000);
    GibbsState x{1.0, 5.0};
    for (auto& v : chain) v = (x = gibbs_step(g, x, rng).next).mu;
    CHECK(testing::within_se(stats::mean(chain), g.ybar(), stats::batch_means_se(chain)));
}

TEST_CASE("drift expectation matches Monte Carlo") {
    const auto g = model();
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        const double mu_prev = g.ybar() + 8 * (uniform01(rng) - 0.5);
        std::vector<double> v(100000);
        for (auto& e : v) e = g.V(g.step({1.0, mu_prev}, rng).next);
        INFO("mu'=" << mu_prev);
        CHECK(testing::within_se(stats::mean(v), g.expected_V(mu_prev), stats::standard_error(v)));
        CHECK(g.expected_V(mu_prev) <= g.lambda() * g.V({1.0, mu_prev}) + (g.mu_in_small_set(mu_prev) ? g.b() : 0.0) + 1e-12);
    }
}

TEST_CASE("regeneration probability") {
    const auto g = model();
    CHECK(gibbs_regen_prob(g, g.ybar(), g.theta_star() * 1.01) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gibbs_regen_prob(g, g.ybar(), 50.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(gibbs_regen_prob(g, g.ybar() + 2.0, 3.0), std::invalid_argument);

    // epsilon q / k from raw densities
    const double a = 5.0;
    const double small = 22.0;
    const double big = 5.5 * (4.0 + g.d() - 1);
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double mu_prev = g.ybar() + (2 * uniform01(rng) - 1) * std::sqrt(g.d() - 1);
        const double theta = 0.3 + 25 * uniform01(rng);
        const double mu = g.ybar() + 6 * (uniform01(rng) - 0.5);
        const double rate = 5.5 * (4.0 + (g.ybar() - mu_prev) * (g.ybar() - mu_prev));
        const double k = std::exp(ig_log_pdf(a, rate, theta)) * normal_pdf(mu, g.ybar(), theta / 11);
        const double eq = std::exp(std::min(ig_log_pdf(a, small, theta), ig_log_pdf(a, big, theta))) *
                          normal_pdf(mu, g.ybar(), theta / 11);
        REQUIRE(gibbs_regen_prob(g, mu_prev, theta) == doctest::Approx(eq / k).epsilon(1e-10));
        REQUIRE(g.epsilon() * g.q_density({theta, mu}) / g.transition_density({7.0, mu_prev}, {theta, mu}) ==
                doctest::Approx(eq / k).epsilon(1e-10));
        REQUIRE(gibbs_regen_prob(g, mu_prev, theta) <= 1.0);
    }
}

TEST_CASE("Q sampler") {
    const auto g = model();
    Rng rng(4);
    const std::size_t n = 100000;
    std::size_t below = 0;
    std::vector<double> mu_q;
    std::vector<double> theta_q;
    for (std::size_t i = 0; i < n; ++i) {
        const auto s = gibbs_q_sample(g, rng);
        below += s.theta < g.theta_star();
        if (i < 10000) {
            mu_q.push_back(s.mu);
            theta_q.push_back(s.theta);
        }
    }
    const double w = g.g().big().cdf(g.theta_star()) / g.epsilon();
    CHECK(g.g().lower_weight() == doctest::Approx(w));
    CHECK(testing::within_se(below / double(n), w, std::sqrt(w * (1 - w) / n)));

    // independent oracle: rejection from IG(a, small rate) onto the infimum density
    std::vector<double> mu_o;
    std::vector<double> theta_o;
    const InverseGamma env{5.0, 22.0};
    while (mu_o.size() < 1000000) {
        const double t = env.sample(rng);
        if (uniform01(rng) * env.pdf(t) <= g.g().density(t)) {
            theta_o.push_back(t);
            mu_o.push_back(g.ybar() + std::sqrt(t / 11) * std::normal_distribution<double>()(rng));
        }
    }
    CHECK(stats::ks_two_sample(mu_q, mu_o).p_value > 0.01);
    CHECK(stats::ks_two_sample(theta_q, theta_o).p_value > 0.01);
}

TEST_CASE("sequential oracle is the posterior") {
    const auto g = model();
    // marginal of theta: integrate mu out of the joint posterior kernel
    auto joint_marginal = [&](double t) {
        return testing::integrate(
            [&](double mu) { return std::pow(t, -6.0) * std::exp(-5.5 * (4.0 + (1 - mu) * (1 - mu)) / t); }, -40.0, 42.0);
    };
    const InverseGamma ig{4.5, 22.0};
    const double r0 = joint_marginal(3.0) / ig.pdf(3.0);
    for (double t : {1.0, 5.0, 12.0, 30.0}) CHECK(joint_marginal(t) / ig.pdf(t) == doctest::Approx(r0).epsilon(1e-8));
    CHECK(ig.mean() == doctest::Approx(6.2857142857));

    Rng rng(5);
    std::vector<double> th(50000);
    std::vector<double> mu(50000);
    for (std::size_t i = 0; i < th.size(); ++i) {
        const auto s = sequential_oracle_draw(g, rng);
        th[i] = s.theta;
        mu[i] = s.mu;
    }
    CHECK(stats::ks_one_sample(th, [&](double x) { return ig.cdf(x); }).p_value > 0.01);
    CHECK(testing::within_se(stats::mean(mu), 1.0, stats::standard_error(mu)));
}

TEST_CASE("mixture weights, scales and factory minima at beta = 1.35") {
    const auto g = model();
    const auto tb = make_tail_bound(g.drift(), 1.35, 1.25, 0.2);
    for (std::uint64_t n = 1; n <= 20; ++n) {
        INFO("n=" << n);
        const double p = std::pow(1 / 1.35, static_cast<double>(n - 1)) * (1 - 1 / 1.35);
        const double a = scale_a(tb, n);
        CHECK(std::abs(p - testing::kGibbsP[n - 1]) <= 5e-4 + 1e-12);
        CHECK(std::abs(a - testing::kGibbsA[n - 1]) <= 5e-3 + 1e-12);
        const std::uint64_t mn = a > 1.0 ? initial_power(FactoryParams{a, 0.2, 1.0 / 6.0, kDefaultFactoryBudget}) : 0;
        CHECK(mn == testing::kGibbsMin[n - 1]);
    }
}

}
