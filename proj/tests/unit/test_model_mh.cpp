#include "doctest.h"

#include <cmath>

#include "exact/model_mh.hpp"
#include "exact/stats.hpp"
#include "exact/tau_kernels.hpp"
#include "support/test_support.hpp"

using namespace exact;

namespace {

// E[V(X1) | x] by quadrature over the proposal window, straight from the
// Metropolis transition: accepted part plus the rejected mass left at x.
double expected_V_quadrature(double c, double gamma, double x) {
    auto accept = [&](double y) { return y < 0.0 ? 0.0 : std::min(1.0, std::exp(x - y)); };
    const double lo = x - gamma;
    const double hi = x + gamma;
    auto moved = [&](double y) { return accept(y) * std::exp(c * y) / (2.0 * gamma); };
    auto stay = [&](double y) { return (1.0 - accept(y)) / (2.0 * gamma); };
    // split at the kinks y = 0 and y = x
    std::vector<double> cuts{lo};
    if (lo < 0.0 && 0.0 < x) cuts.push_back(0.0);
    cuts.push_back(x);
    cuts.push_back(hi);
    double ev = 0.0;
    double rej = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        ev += testing::integrate(moved, cuts[i], cuts[i + 1]);
        rej += testing::integrate(stay, cuts[i], cuts[i + 1]);
    }
    return ev + rej * std::exp(c * x);
}

double lambda_quadrature(double c, double gamma) {
    return testing::integrate([&](double z) { return std::exp(-c * z) + std::exp((c - 1) * z) + 1 - std::exp(-z); },
                              0.0, gamma) /
           (2.0 * gamma);
}

} // namespace

TEST_SUITE("model_mh") {

TEST_CASE("lambda matches quadrature, including near c = 1") {
    for (double c : {0.01, 0.028, 0.1, 0.5, 1.0, 1.0 + 5e-7, 1.0 - 5e-7, 1.3})
        for (double g : {0.5, 2.0, 4.0, 9.0}) CHECK(mh_lambda(c, g) == doctest::Approx(lambda_quadrature(c, g)).epsilon(1e-11));
}

TEST_CASE("E[V | x] matches quadrature of the transition") {
    for (double c : {0.028, 0.2, 1.0})
        for (double g : {1.0, 4.0})
            for (double x : {0.0, 0.3, 1.0, 0.999 * g, g, 1.5 * g, 5.0 * g}) {
                INFO("c=" << c << " gamma=" << g << " x=" << x);
                CHECK(mh_expected_V(c, g, x) == doctest::Approx(expected_V_quadrature(c, g, x)).epsilon(1e-10));
            }
    CHECK_THROWS_AS(mh_expected_V(0.028, 4.0, -1.0), std::domain_error);
}

TEST_CASE("constants at c = 0.028, gamma = 4") {
    const auto k = mh_drift_constants(0.028, 4.0);
    CHECK(std::abs(k.lambda - 0.977) < 0.001);
    CHECK(std::abs(k.A_sup - 1.09197) < 1e-4);
    CHECK(k.epsilon == doctest::Approx(0.122710).epsilon(1e-6));
    CHECK(k.epsilon == doctest::Approx((1 - std::exp(-4.0)) / 8.0).epsilon(1e-15));
    // b = 0.1 is a valid, looser offset
    CHECK(k.b <= 0.1);
    double gap = 0.0;
    double sup = 0.0;
    for (int i = 0; i <= 40000; ++i) {
        const double x = 4.0 * i / 40000.0;
        const double ev = expected_V_quadrature(0.028, 4.0, x);
        gap = std::max(gap, ev - k.lambda * std::exp(0.028 * x));
        sup = std::max(sup, ev);
    }
    CHECK(k.b == doctest::Approx(gap).epsilon(1e-8));
    CHECK(k.A_sup == doctest::Approx(sup).epsilon(1e-8));
    const MhExpModel m(0.028, 4.0);
    CHECK(std::abs(m.drift().J() - 0.99283) < 1e-4);
    CHECK(std::abs(beta_star(m.drift()) - 1.0243) < 1e-4);
}

TEST_CASE("lambda >= 1 is rejected") {
    CHECK(mh_lambda(2.0, 4.0) >= 1.0);
    CHECK_THROWS_AS(mh_drift_constants(2.0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(MhExpModel(2.0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(mh_drift_constants(0.0, 4.0), std::invalid_argument);
}

TEST_CASE("drift inequality at random states") {
    const MhExpModel m(0.028, 4.0);
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double x = i % 2 == 0 ? 4.0 * uniform01(rng) : 4.0 + 36.0 * uniform01(rng);
        const double rhs = m.lambda() * m.V(x) + (m.in_small_set(x) ? m.b() : 0.0);
        REQUIRE(mh_expected_V(0.028, 4.0, x) <= rhs + 1e-9);
    }
}

TEST_CASE("minorization on the small set") {
    const MhExpModel m(0.028, 4.0);
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        const double x = 4.0 * uniform01(rng);
        const double y = 4.0 * uniform01(rng);
        const double k = m.proposal_density(y, x) * std::min(1.0, m.target_density(y) / m.target_density(x));
        REQUIRE(k >= m.s_lower(x) * m.q_density(y) - 1e-12);
    }
    CHECK(testing::integrate([&](double y) { return m.q_density(y); }, 0.0, 4.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Metropolis step") {
    const MhExpModel m(0.028, 4.0);
    Rng rng(3);
    for (int i = 0; i < 20000; ++i) {
        const double x = 6.0 * uniform01(rng);
        const auto t = mh_step(m, x, rng);
        if (t.proposal < 0.0) REQUIRE((!t.accepted && t.next == x));
        if (t.proposal >= 0.0 && t.proposal <= x) REQUIRE((t.accepted && t.next == t.proposal));
        REQUIRE(std::abs(t.proposal - x) <= 4.0);
    }
    CHECK_THROWS_AS(mh_step(m, -0.1, rng), std::domain_error);

    std::vector<double> chain(1000000);
    double x = 1.0;
    for (auto& v : chain) v = x = m.step(x, rng).next;
    CHECK(testing::within_se(stats::mean(chain), 1.0, stats::batch_means_se(chain)));
}

TEST_CASE("regeneration probability") {
    const MhExpModel m(0.028, 4.0);
    CHECK(mh_regen_prob(m, 1.0, 0.5, false) == 0.0);
    CHECK(mh_regen_prob(m, 4.5, 4.0, true) == 0.0);
    Rng rng(4);
    for (int i = 0; i < 1000; ++i) {
        const double x = 4.0 * uniform01(rng);
        const double y = x * uniform01(rng);  // downhill, inside [0, gamma]
        REQUIRE(mh_regen_prob(m, x, y, true) == doctest::Approx(std::exp(-y)).epsilon(1e-12));
    }
    // uphill accepted: s q / (g e^{x - y}) = e^{-x}
    CHECK(mh_regen_prob(m, 1.0, 3.0, true) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    // accepted move out of the small set: q(y) = 0
    CHECK(mh_regen_prob(m, 3.5, 4.5, true) == 0.0);
}

TEST_CASE("q sampler is Exp(1) truncated to [0, gamma]") {
    const MhExpModel m(0.028, 4.0);
    Rng rng(5);
    std::vector<double> xs(20000);
    for (auto& v : xs) {
        v = m.q_sample(rng);
        REQUIRE((v >= 0.0 && v <= 4.0));
    }
    CHECK(stats::ks_one_sample(xs, [](double y) { return std::expm1(-y) / std::expm1(-4.0); }).p_value > 0.01);
}

TEST_CASE("mean regeneration time equals 1 / (epsilon pi(C))") {
    // P(delta = 1 | x) = epsilon on [0, gamma], so the atom has stationary
    // frequency epsilon (1 - e^-gamma): mean tau = 2 gamma / (1 - e^-gamma)^2.
    const double kac = 8.0 / std::pow(1.0 - std::exp(-4.0), 2.0);
    CHECK(kac == doctest::Approx(8.3013).epsilon(1e-4));
    const MhExpModel m(0.028, 4.0);
    std::vector<double> taus;
    for (auto t : sample_taus_serial(m, StreamKey(6), 0, 10000)) taus.push_back(static_cast<double>(t));
    CHECK(testing::within_se(stats::mean(taus), kac, stats::standard_error(taus)));
}

TEST_CASE("beta* grid") {
    const auto grid = beta_star_grid(0.004, 0.3, 0.5, 10.0, 75, 20);
    CHECK(grid.size() == 1500);
    bool found = false;
    for (const auto& cell : grid) {
        if (std::abs(cell.c - 0.028) < 1e-12 && cell.gamma == 4.0) {
            found = true;
            CHECK(std::abs(cell.beta_star - 1.0243) < 1e-4);
        }
        if (cell.beta_star == kInvalidBetaStar) continue;
        REQUIRE(cell.beta_star > 1.0);
        const MhExpModel m(cell.c, cell.gamma);
        if (m.drift().J() < 1.0) REQUIRE(cell.beta_star == 1.0 / m.lambda());
    }
    CHECK(found);
    CHECK(grid.front().c == 0.004);
    CHECK(grid.front().gamma == 0.5);
    CHECK(grid[1].gamma > grid[0].gamma);
    CHECK(grid.back().c == 0.3);
    CHECK(grid.back().gamma == 10.0);
    const auto bad = beta_star_grid(1.5, 2.5, 1.0, 4.0, 3, 3);
    CHECK(std::all_of(bad.begin(), bad.end(), [](const auto& c) { return c.beta_star == kInvalidBetaStar; }));
    CHECK_THROWS_AS(beta_star_grid(0.1, 0.3, 1.0, 2.0, 0, 3), std::invalid_argument);
}

}
