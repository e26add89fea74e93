#include "exact/model_gibbs.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "exact/regen.hpp"

namespace exact {

namespace {

PiecewiseInverseGamma make_g(double s2, int m, double d) {
    if (!(d > 1.0)) throw std::domain_error("gibbs: d must exceed 1");
    if (!(s2 > 0.0)) throw std::invalid_argument("gibbs: s2 must be positive");
    return PiecewiseInverseGamma(0.5 * (m - 1), 0.5 * m * s2, 0.5 * m * (s2 + d - 1.0));
}

double normal_pdf(double x, double mean, double var) {
    const double z = x - mean;
    return std::exp(-0.5 * z * z / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

double draw_normal(Rng& rng, double mean, double var) {
    std::normal_distribution<double> n(mean, std::sqrt(var));
    return n(rng);
}

} // namespace

GibbsMinorization gibbs_minorization(double s2, int m, double d) {
    const PiecewiseInverseGamma g = make_g(s2, m, d);
    return {g.crossing(), g.mass()};
}

GibbsModel::GibbsModel(double ybar, double s2, int m, double lambda, double d)
    : ybar_(ybar), s2_(s2), m_(m), lambda_(lambda), d_(d), b_(0.0), g_(make_g(s2, m, d)) {
    if (m < 5) throw std::invalid_argument("gibbs: m must be >= 5");
    const double floor_lambda = 1.0 / (m - 3);
    if (!(lambda > floor_lambda && lambda < 1.0))
        throw std::invalid_argument("gibbs: lambda must lie in ((m-3)^-1, 1)");
    b_ = (s2 + m - 4) / (m - 3);
    const double d_min = b_ / (lambda - floor_lambda);
    if (d < d_min * (1.0 - 1e-12))
        throw std::invalid_argument("gibbs: d must be >= b / (lambda - (m-3)^-1) = " + std::to_string(d_min));
}

DriftSpec GibbsModel::drift() const {
    DriftSpec s;
    s.lambda = lambda_;
    s.b = b_;
    s.epsilon = epsilon();
    s.A_sup = A_sup();
    s.small_set_descriptor = "1 + (mu - ybar)^2 <= " + std::to_string(d_);
    return s;
}

double GibbsModel::expected_V(double mu_prev) const {
    const double z = mu_prev - ybar_;
    return (1.0 + z * z) / (m_ - 3) + b_;
}

InverseGamma GibbsModel::theta_conditional(double mu) const {
    const double z = ybar_ - mu;
    return {theta_shape(), 0.5 * m_ * (s2_ + z * z)};
}

GibbsTransition GibbsModel::step(const GibbsState& x, Rng& rng) const {
    GibbsTransition t;
    t.next.theta = theta_conditional(x.mu).sample(rng);
    t.next.mu = draw_normal(rng, ybar_, t.next.theta / m_);
    return t;
}

double GibbsModel::regen_prob(const GibbsState& x, const GibbsTransition& t) const {
    if (!in_small_set(x)) return 0.0;
    return gibbs_regen_prob(*this, x.mu, t.next.theta);
}

GibbsState GibbsModel::q_sample(Rng& rng) const {
    GibbsState x;
    x.theta = g_.sample(rng);
    x.mu = draw_normal(rng, ybar_, x.theta / m_);
    return x;
}

double GibbsModel::transition_density(const GibbsState& from, const GibbsState& to) const {
    return theta_conditional(from.mu).pdf(to.theta) * normal_pdf(to.mu, ybar_, to.theta / m_);
}

double GibbsModel::q_density(const GibbsState& x) const {
    return g_.density(x.theta) / epsilon() * normal_pdf(x.mu, ybar_, x.theta / m_);
}

GibbsState GibbsModel::sequential_oracle_draw(Rng& rng) const {
    const InverseGamma marginal{0.5 * m_ - 1.0, 0.5 * m_ * s2_};
    GibbsState x;
    x.theta = marginal.sample(rng);
    x.mu = draw_normal(rng, ybar_, x.theta / m_);
    return x;
}

GibbsTransition gibbs_step(const GibbsModel& model, const GibbsState& x, Rng& rng) {
    if (!(x.theta > 0.0)) throw std::domain_error("gibbs_step: theta must be positive");
    return model.step(x, rng);
}

double gibbs_regen_prob(const GibbsModel& model, double mu_prev, double theta) {
    if (!model.mu_in_small_set(mu_prev))
        throw std::invalid_argument("gibbs_regen_prob: mu' lies outside the small set");
    const double z2 = (model.ybar() - mu_prev) * (model.ybar() - mu_prev);
    const double shift = theta < model.theta_star() ? model.d() - 1.0 : 0.0;
    const double m = model.m();
    const double log_r = model.theta_shape() * std::log((model.s2() + shift) / (model.s2() + z2)) -
                         m * shift / (2.0 * theta) + m * z2 / (2.0 * theta);
    return checked_regen_prob(std::exp(log_r));
}

GibbsState gibbs_q_sample(const GibbsModel& model, Rng& rng) { return model.q_sample(rng); }

GibbsState sequential_oracle_draw(const GibbsModel& model, Rng& rng) { return model.sequential_oracle_draw(rng); }

} // namespace exact
