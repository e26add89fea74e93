#pragma once

// Two-variable Gibbs sampler for normal data under the prior theta^{-1/2}:
//   theta | mu ~ IG((m-1)/2, m [s2 + (ybar - mu)^2] / 2),  mu | theta ~ N(ybar, theta/m),
// updated theta first. Drift function V = 1 + (mu - ybar)^2.

#include "exact/bounds.hpp"
#include "exact/inverse_gamma.hpp"
#include "exact/rng.hpp"

namespace exact {

struct GibbsState {
    double theta = 1.0;
    double mu = 0.0;
    friend bool operator==(const GibbsState&, const GibbsState&) = default;
};

struct GibbsTransition {
    GibbsState next;
};

struct GibbsMinorization {
    double theta_star = 0.0;
    double epsilon = 0.0;
};

/// theta* and epsilon = F_big(theta*) + 1 - F_small(theta*). Domain error for d <= 1.
GibbsMinorization gibbs_minorization(double s2, int m, double d);

struct GibbsDefaults {
    double ybar = 1.0;
    double s2 = 4.0;
    int m = 11;
    double lambda = 0.5;
    double d = 11.0 / 3.0;
    double beta = 1.35;
    double kappa = 1.25;
    double delta_smooth = 1.0 / 6.0;
    double omega = 0.2;
};

class GibbsModel {
public:
    using State = GibbsState;
    using Transition = GibbsTransition;

    /// Throws std::invalid_argument for m < 5, lambda outside ((m-3)^{-1}, 1)
    /// or d below b / (lambda - (m-3)^{-1}).
    GibbsModel(double ybar, double s2, int m, double lambda, double d);

    double ybar() const noexcept { return ybar_; }
    double s2() const noexcept { return s2_; }
    int m() const noexcept { return m_; }
    double lambda() const noexcept { return lambda_; }
    double d() const noexcept { return d_; }
    double b() const noexcept { return b_; }
    double theta_star() const noexcept { return g_.crossing(); }
    double epsilon() const noexcept { return g_.mass(); }
    double A_sup() const noexcept { return d_ / (m_ - 3) + b_; }
    const PiecewiseInverseGamma& g() const noexcept { return g_; }
    DriftSpec drift() const;

    double V(const GibbsState& x) const { return 1.0 + (x.mu - ybar_) * (x.mu - ybar_); }
    /// Closed-form E[V(X1) | X0 = x'], depending on mu' only.
    double expected_V(double mu_prev) const;

    InverseGamma theta_conditional(double mu) const;
    double theta_shape() const noexcept { return 0.5 * (m_ - 1); }

    GibbsTransition step(const GibbsState& x, Rng& rng) const;
    double regen_prob(const GibbsState& x, const GibbsTransition& t) const;
    GibbsState q_sample(Rng& rng) const;
    double s_lower(const GibbsState& x) const { return in_small_set(x) ? epsilon() : 0.0; }
    bool in_small_set(const GibbsState& x) const { return mu_in_small_set(x.mu); }
    bool mu_in_small_set(double mu) const { return 1.0 + (mu - ybar_) * (mu - ybar_) <= d_; }

    /// k(theta, mu | theta', mu') and q(theta, mu) from raw densities.
    double transition_density(const GibbsState& from, const GibbsState& to) const;
    double q_density(const GibbsState& x) const;

    /// i.i.d. posterior draw: theta ~ IG(m/2 - 1, m s2 / 2), then mu | theta.
    GibbsState sequential_oracle_draw(Rng& rng) const;

private:
    double ybar_;
    double s2_;
    int m_;
    double lambda_;
    double d_;
    double b_;
    PiecewiseInverseGamma g_;
};

GibbsTransition gibbs_step(const GibbsModel& model, const GibbsState& x, Rng& rng);

/// g(theta) / f(theta | mu'); free of epsilon, theta' and mu. Throws
/// std::invalid_argument if mu' lies outside the small set.
double gibbs_regen_prob(const GibbsModel& model, double mu_prev, double theta);

GibbsState gibbs_q_sample(const GibbsModel& model, Rng& rng);
GibbsState sequential_oracle_draw(const GibbsModel& model, Rng& rng);

} // namespace exact
