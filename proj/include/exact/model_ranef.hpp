#pragma once

// Balanced one-way random effects model, block Gibbs sampler updating
// theta = (sigma2_phi, sigma2_e) given xi = (mu, phi_1..phi_q), then xi given theta.
// Drift function V = K + delta1 w1(xi) + delta2 w2(xi) with
//   w1 = sum (phi_i - mu)^2,  w2 = sum m (phi_i - ybar_i)^2.

#include <cstddef>
#include <vector>

#include "exact/bounds.hpp"
#include "exact/inverse_gamma.hpp"
#include "exact/rng.hpp"

namespace exact {

struct StyreneData {
    std::vector<double> ybar_i;
    double ybar_reported = 0.0;  // as printed with the summary; not used by the sampler
    double SST = 0.0;
    double SSE = 0.0;
    int q = 0;
    int m = 0;
    int M_tot() const { return q * m; }
    double mean_of_group_means() const;
};

StyreneData styrene_dataset();

/// Source of sum_i (ybar_i - ybar)^2 in the drift offset b.
enum class BetweenSS { sst_over_m, group_means };

struct RanefConfig {
    StyreneData data = styrene_dataset();
    double alpha1 = 0.1;
    double alpha2 = 0.1;
    double beta1 = 10.0;
    double beta2 = 10.0;
    double K = 50.0;
    double delta1 = 1.0;
    double delta2 = 1.0;
    double lambda = 0.97;
    BetweenSS between_ss = BetweenSS::sst_over_m;

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

struct RanefDefaults {
    double beta = 1.000083;
    double kappa = 1.25;
    double delta_smooth = 1.0 / 6.0;
    double omega = 0.2;
};

struct RanefDriftConstants {
    double Delta2 = 0.0;
    double lambda_star = 0.0;
    double between_ss = 0.0;
    double b = 0.0;
    double d = 0.0;
    double A_sup = 0.0;  // the upper bound on the sup, which is what enters beta*
};

/// Throws std::invalid_argument if lambda <= lambda*.
RanefDriftConstants ranef_drift_constants(const RanefConfig& config);

struct RanefMinorization {
    double sigma_phi_star = 0.0;
    double sigma_e_star = 0.0;
    double eps_phi = 0.0;
    double eps_e = 0.0;
    double epsilon = 0.0;
};

/// Domain error unless d > K.
RanefMinorization ranef_minorization(const RanefConfig& config, double d);

struct RanefXi {
    double mu = 0.0;
    std::vector<double> phi;
};

struct RanefTheta {
    double sigma2_phi = 1.0;
    double sigma2_e = 1.0;
};

struct RanefState {
    RanefXi xi;
    RanefTheta theta;
};

struct RanefTransition {
    RanefState next;
};

class RanefModel {
public:
    using State = RanefState;
    using Transition = RanefTransition;

    explicit RanefModel(const RanefConfig& config);

    const RanefConfig& config() const noexcept { return cfg_; }
    const RanefDriftConstants& drift_constants() const noexcept { return k_; }
    const RanefMinorization& minorization() const noexcept { return mn_; }
    const PiecewiseInverseGamma& g_phi() const noexcept { return g_phi_; }
    const PiecewiseInverseGamma& g_e() const noexcept { return g_e_; }
    double epsilon() const noexcept { return mn_.epsilon; }
    DriftSpec drift() const;

    double w1(const RanefXi& xi) const;
    double w2(const RanefXi& xi) const;
    double V(const RanefXi& xi) const;
    /// Right-hand side of the conditional expectation bound used in the drift proof.
    double expected_V_bound(const RanefXi& xi_prev) const;

    InverseGamma sigma_phi_conditional(const RanefXi& xi) const;
    InverseGamma sigma_e_conditional(const RanefXi& xi) const;
    double phi_shape() const;
    double e_shape() const;

    RanefTheta theta_update(const RanefXi& xi, Rng& rng) const;
    RanefXi xi_update(const RanefTheta& theta, Rng& rng) const;

    /// Moments of xi | theta under the two-stage factorization.
    double mu_mean() const { return ybar_; }
    double mu_var(const RanefTheta& theta) const;
    double phi_mean(std::size_t i, double mu, const RanefTheta& theta) const;
    double phi_var(const RanefTheta& theta) const;

    RanefTransition step(const RanefState& x, Rng& rng) const;
    double regen_prob(const RanefState& x, const RanefTransition& t) const;
    RanefState q_sample(Rng& rng) const;
    double s_lower(const RanefState& x) const { return in_small_set(x) ? epsilon() : 0.0; }
    bool in_small_set(const RanefState& x) const { return xi_in_small_set(x.xi); }
    bool xi_in_small_set(const RanefXi& xi) const;

    /// log f(xi | theta), and the theta-part of k and q from raw densities.
    double xi_log_density(const RanefXi& xi, const RanefTheta& theta) const;
    double theta_transition_density(const RanefXi& xi_prev, const RanefTheta& theta) const;
    double theta_q_density(const RanefTheta& theta) const;

private:
    RanefConfig cfg_;
    RanefDriftConstants k_;
    RanefMinorization mn_;
    PiecewiseInverseGamma g_phi_;
    PiecewiseInverseGamma g_e_;
    double ybar_;
};

RanefTheta ranef_theta_update(const RanefModel& model, const RanefXi& xi, Rng& rng);
RanefXi ranef_xi_update(const RanefModel& model, const RanefTheta& theta, Rng& rng);

/// g1(s_phi)/f(s_phi | xi') * g2(s_e)/f(s_e | xi'). Throws
/// std::invalid_argument if xi' lies outside the small set.
double ranef_regen_prob(const RanefModel& model, const RanefXi& xi_prev, const RanefTheta& theta);

RanefState ranef_q_sample(const RanefModel& model, Rng& rng);

} // namespace exact
