#include "exact/model_ranef.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "exact/regen.hpp"

namespace exact {

namespace {

double log_normal_pdf(double x, double mean, double var) {
    const double z = x - mean;
    return -0.5 * z * z / var - 0.5 * std::log(2.0 * std::numbers::pi * var);
}

double draw_normal(Rng& rng, double mean, double var) {
    std::normal_distribution<double> n(mean, std::sqrt(var));
    return n(rng);
}

PiecewiseInverseGamma make_g_phi(const RanefConfig& c, double d) {
    return PiecewiseInverseGamma(0.5 * c.data.q + c.alpha1, c.beta1, (d - c.K) / (2.0 * c.delta1) + c.beta1);
}

PiecewiseInverseGamma make_g_e(const RanefConfig& c, double d) {
    const double base = 0.5 * c.data.SSE + c.beta2;
    return PiecewiseInverseGamma(0.5 * c.data.M_tot() + c.alpha2, base, base + (d - c.K) / (2.0 * c.delta2));
}

} // namespace

double StyreneData::mean_of_group_means() const {
    return std::accumulate(ybar_i.begin(), ybar_i.end(), 0.0) / static_cast<double>(ybar_i.size());
}

StyreneData styrene_dataset() {
    StyreneData s;
    s.ybar_i = {3.302, 4.587, 5.052, 5.089, 4.498, 5.186, 4.915, 4.876, 5.262, 5.009, 5.602, 4.336, 4.813};
    s.ybar_reported = 4.089;
    s.SST = 11.430;
    s.SSE = 14.711;
    s.q = 13;
    s.m = 3;
    return s;
}

void RanefConfig::validate() const {
    if (data.q < 2 || data.m < 1) throw std::invalid_argument("ranef: need q >= 2 groups and m >= 1");
    if (static_cast<int>(data.ybar_i.size()) != data.q)
        throw std::invalid_argument("ranef: number of group means must equal q");
    if (!(data.SSE >= 0.0 && data.SST >= 0.0)) throw std::invalid_argument("ranef: SST and SSE must be >= 0");
    if (!(alpha1 > 0.0 && alpha2 > 0.0 && beta1 > 0.0 && beta2 > 0.0))
        throw std::invalid_argument("ranef: prior hyper-parameters must be positive");
    if (!(data.q + 2.0 * alpha1 - 2.0 > 0.0 && data.M_tot() + 2.0 * alpha2 - 2.0 > 0.0))
        throw std::invalid_argument("ranef: q + 2 alpha1 - 2 and M + 2 alpha2 - 2 must be positive");
    if (!(K >= 1.0)) throw std::invalid_argument("ranef: K must be >= 1");
    if (!(delta1 > 0.0 && delta2 > 0.0)) throw std::invalid_argument("ranef: delta1 and delta2 must be positive");
    if (!(lambda < 1.0)) throw std::invalid_argument("ranef: lambda must be < 1");
}

RanefDriftConstants ranef_drift_constants(const RanefConfig& c) {
    c.validate();
    const double q = c.data.q;
    const double m = c.data.m;
    const double M = c.data.M_tot();
    const double den1 = q + 2.0 * c.alpha1 - 2.0;
    const double den2 = M + 2.0 * c.alpha2 - 2.0;

    RanefDriftConstants k;
    k.Delta2 = 1.0 - 1.0 / (q * (m + 1.0)) + std::max(q * (m + 1.0) / (m * m), 1.0 / m);
    const double slope2 = (c.delta1 * k.Delta2 / c.delta2 + q + 1.0) / den2;
    k.lambda_star = std::max(1.0 / den1, slope2);
    if (!(c.lambda > k.lambda_star))
        throw std::invalid_argument("ranef: lambda must exceed lambda* = " + std::to_string(k.lambda_star));

    if (c.between_ss == BetweenSS::sst_over_m) {
        k.between_ss = c.data.SST / m;
    } else {
        const double ybar = c.data.mean_of_group_means();
        k.between_ss = 0.0;
        for (double y : c.data.ybar_i) k.between_ss += (y - ybar) * (y - ybar);
    }

    k.b = c.K * (1.0 - c.lambda) + 2.0 * c.delta1 * c.beta1 / den1 +
          (c.delta1 * k.Delta2 + c.delta2 * (q + 1.0)) * (c.data.SSE + 2.0 * c.beta2) / den2 +
          (c.delta1 + m * c.delta2) * k.between_ss;
    k.d = k.b / (c.lambda - k.lambda_star);
    k.A_sup = (k.d - c.K) / den1 + slope2 * (k.d - c.K) + k.b + k.lambda_star;
    return k;
}

RanefMinorization ranef_minorization(const RanefConfig& c, double d) {
    if (!(d > c.K)) throw std::domain_error("ranef_minorization: d must exceed K");
    const PiecewiseInverseGamma gp = make_g_phi(c, d);
    const PiecewiseInverseGamma ge = make_g_e(c, d);
    RanefMinorization r;
    r.sigma_phi_star = gp.crossing();
    r.sigma_e_star = ge.crossing();
    r.eps_phi = gp.mass();
    r.eps_e = ge.mass();
    r.epsilon = r.eps_phi * r.eps_e;
    return r;
}

RanefModel::RanefModel(const RanefConfig& config)
    : cfg_(config),
      k_(ranef_drift_constants(config)),
      mn_(ranef_minorization(config, k_.d)),
      g_phi_(make_g_phi(config, k_.d)),
      g_e_(make_g_e(config, k_.d)),
      ybar_(config.data.mean_of_group_means()) {}

DriftSpec RanefModel::drift() const {
    DriftSpec s;
    s.lambda = cfg_.lambda;
    s.b = k_.b;
    s.epsilon = mn_.epsilon;
    s.A_sup = k_.A_sup;
    s.small_set_descriptor = "K + delta1 w1 <= d and K + delta2 w2 <= d, d = " + std::to_string(k_.d);
    return s;
}

double RanefModel::w1(const RanefXi& xi) const {
    double s = 0.0;
    for (double p : xi.phi) s += (p - xi.mu) * (p - xi.mu);
    return s;
}

double RanefModel::w2(const RanefXi& xi) const {
    double s = 0.0;
    for (std::size_t i = 0; i < xi.phi.size(); ++i) {
        const double z = xi.phi[i] - cfg_.data.ybar_i[i];
        s += z * z;
    }
    return cfg_.data.m * s;
}

double RanefModel::V(const RanefXi& xi) const { return cfg_.K + cfg_.delta1 * w1(xi) + cfg_.delta2 * w2(xi); }

double RanefModel::expected_V_bound(const RanefXi& xi_prev) const {
    const double q = cfg_.data.q;
    const double m = cfg_.data.m;
    const double den1 = q + 2.0 * cfg_.alpha1 - 2.0;
    const double den2 = cfg_.data.M_tot() + 2.0 * cfg_.alpha2 - 2.0;
    const double slope2 = (cfg_.delta1 * k_.Delta2 / cfg_.delta2 + q + 1.0) / den2;
    return cfg_.K + cfg_.delta1 * w1(xi_prev) / den1 + slope2 * cfg_.delta2 * w2(xi_prev) +
           2.0 * cfg_.delta1 * cfg_.beta1 / den1 +
           (cfg_.delta1 * k_.Delta2 + cfg_.delta2 * (q + 1.0)) * (cfg_.data.SSE + 2.0 * cfg_.beta2) / den2 +
           (cfg_.delta1 + m * cfg_.delta2) * k_.between_ss;
}

double RanefModel::phi_shape() const { return 0.5 * cfg_.data.q + cfg_.alpha1; }
double RanefModel::e_shape() const { return 0.5 * cfg_.data.M_tot() + cfg_.alpha2; }

InverseGamma RanefModel::sigma_phi_conditional(const RanefXi& xi) const {
    return {phi_shape(), 0.5 * w1(xi) + cfg_.beta1};
}

InverseGamma RanefModel::sigma_e_conditional(const RanefXi& xi) const {
    return {e_shape(), 0.5 * (w2(xi) + cfg_.data.SSE) + cfg_.beta2};
}

RanefTheta RanefModel::theta_update(const RanefXi& xi, Rng& rng) const {
    RanefTheta t;
    t.sigma2_phi = sigma_phi_conditional(xi).sample(rng);
    t.sigma2_e = sigma_e_conditional(xi).sample(rng);
    return t;
}

double RanefModel::mu_var(const RanefTheta& t) const {
    return (t.sigma2_phi + t.sigma2_e / cfg_.data.m) / cfg_.data.q;
}

double RanefModel::phi_mean(std::size_t i, double mu, const RanefTheta& t) const {
    const double m = cfg_.data.m;
    return (t.sigma2_e * mu + m * t.sigma2_phi * cfg_.data.ybar_i[i]) / (t.sigma2_e + m * t.sigma2_phi);
}

double RanefModel::phi_var(const RanefTheta& t) const {
    return t.sigma2_phi * t.sigma2_e / (t.sigma2_e + cfg_.data.m * t.sigma2_phi);
}

RanefXi RanefModel::xi_update(const RanefTheta& theta, Rng& rng) const {
    RanefXi xi;
    xi.mu = draw_normal(rng, ybar_, mu_var(theta));
    const double v = phi_var(theta);
    xi.phi.resize(static_cast<std::size_t>(cfg_.data.q));
    for (std::size_t i = 0; i < xi.phi.size(); ++i) xi.phi[i] = draw_normal(rng, phi_mean(i, xi.mu, theta), v);
    return xi;
}

RanefTransition RanefModel::step(const RanefState& x, Rng& rng) const {
    RanefTransition t;
    t.next.theta = theta_update(x.xi, rng);
    t.next.xi = xi_update(t.next.theta, rng);
    return t;
}

bool RanefModel::xi_in_small_set(const RanefXi& xi) const {
    return cfg_.K + cfg_.delta1 * w1(xi) <= k_.d && cfg_.K + cfg_.delta2 * w2(xi) <= k_.d;
}

double RanefModel::regen_prob(const RanefState& x, const RanefTransition& t) const {
    if (!in_small_set(x)) return 0.0;
    return ranef_regen_prob(*this, x.xi, t.next.theta);
}

RanefState RanefModel::q_sample(Rng& rng) const {
    RanefState x;
    x.theta.sigma2_phi = g_phi_.sample(rng);
    x.theta.sigma2_e = g_e_.sample(rng);
    x.xi = xi_update(x.theta, rng);
    return x;
}

double RanefModel::xi_log_density(const RanefXi& xi, const RanefTheta& theta) const {
    double s = log_normal_pdf(xi.mu, ybar_, mu_var(theta));
    const double v = phi_var(theta);
    for (std::size_t i = 0; i < xi.phi.size(); ++i) s += log_normal_pdf(xi.phi[i], phi_mean(i, xi.mu, theta), v);
    return s;
}

double RanefModel::theta_transition_density(const RanefXi& xi_prev, const RanefTheta& theta) const {
    return sigma_phi_conditional(xi_prev).pdf(theta.sigma2_phi) * sigma_e_conditional(xi_prev).pdf(theta.sigma2_e);
}

double RanefModel::theta_q_density(const RanefTheta& theta) const {
    return g_phi_.density(theta.sigma2_phi) * g_e_.density(theta.sigma2_e) / epsilon();
}

RanefTheta ranef_theta_update(const RanefModel& model, const RanefXi& xi, Rng& rng) {
    return model.theta_update(xi, rng);
}

RanefXi ranef_xi_update(const RanefModel& model, const RanefTheta& theta, Rng& rng) {
    if (!(theta.sigma2_phi > 0.0 && theta.sigma2_e > 0.0))
        throw std::domain_error("ranef_xi_update: variances must be positive");
    return model.xi_update(theta, rng);
}

double ranef_regen_prob(const RanefModel& model, const RanefXi& xi_prev, const RanefTheta& theta) {
    if (!model.xi_in_small_set(xi_prev))
        throw std::invalid_argument("ranef_regen_prob: xi' lies outside the small set");
    const RanefConfig& c = model.config();
    const double d = model.drift_constants().d;
    const double w1 = model.w1(xi_prev);
    const double w2 = model.w2(xi_prev);
    const double sp = theta.sigma2_phi;
    const double se = theta.sigma2_e;
    const double shift_phi = sp < model.minorization().sigma_phi_star ? (d - c.K) / c.delta1 : 0.0;
    const double shift_e = se < model.minorization().sigma_e_star ? (d - c.K) / c.delta2 : 0.0;
    const double base_e = c.data.SSE + 2.0 * c.beta2;
    const double log_r = model.phi_shape() * std::log((shift_phi + 2.0 * c.beta1) / (w1 + 2.0 * c.beta1)) -
                         shift_phi / (2.0 * sp) + w1 / (2.0 * sp) +
                         model.e_shape() * std::log((shift_e + base_e) / (w2 + base_e)) - shift_e / (2.0 * se) +
                         w2 / (2.0 * se);
    return checked_regen_prob(std::exp(log_r));
}

RanefState ranef_q_sample(const RanefModel& model, Rng& rng) { return model.q_sample(rng); }

} // namespace exact
