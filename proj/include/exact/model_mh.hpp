#pragma once

// Metropolis sampler for the Exp(1) target with Uniform(x - gamma, x + gamma)
// proposals. Drift function V(x) = exp(c x), small set [0, gamma].

#include <cstdint>
#include <vector>

#include "exact/bounds.hpp"
#include "exact/rng.hpp"

namespace exact {

struct MhDriftConstants {
    double lambda = 0.0;
    double b = 0.0;
    double A_sup = 0.0;
    double epsilon = 0.0;
};

/// lambda from the closed-form integral, A_sup and b by bounded maximization
/// over [0, gamma]. Throws std::invalid_argument if lambda >= 1.
MhDriftConstants mh_drift_constants(double c, double gamma);

/// lambda only; no validity check (used by the contour grid).
double mh_lambda(double c, double gamma);

/// E[V(X1) | X0 = x] in closed form, any x >= 0.
double mh_expected_V(double c, double gamma, double x);

struct MhTransition {
    double next = 0.0;
    bool accepted = false;
    double proposal = 0.0;
};

class MhExpModel {
public:
    using State = double;
    using Transition = MhTransition;

    MhExpModel(double c, double gamma);

    double c() const noexcept { return c_; }
    double gamma() const noexcept { return gamma_; }
    double lambda() const noexcept { return k_.lambda; }
    double b() const noexcept { return k_.b; }
    double A_sup() const noexcept { return k_.A_sup; }
    double epsilon() const noexcept { return k_.epsilon; }
    const MhDriftConstants& constants() const noexcept { return k_; }
    DriftSpec drift() const;

    double V(double x) const;
    double target_density(double x) const;             // exp(-x) on x >= 0
    double proposal_density(double y, double x) const; // g(y | x)
    double q_density(double y) const;                  // Exp(1) truncated to [0, gamma]

    MhTransition step(double x, Rng& rng) const;
    double regen_prob(double x, const MhTransition& t) const;
    double q_sample(Rng& rng) const;
    double s_lower(double x) const;
    bool in_small_set(double x) const { return x >= 0.0 && x <= gamma_; }

private:
    double c_;
    double gamma_;
    MhDriftConstants k_;
};

/// Metropolis step from x >= 0.
MhTransition mh_step(const MhExpModel& model, double x, Rng& rng);

/// s(x) q(y) / [g(y|x) min{1, f(y)/f(x)}] for an accepted move, else 0.
/// Throws RegenerationError if the ratio exceeds 1 + 1e-12.
double mh_regen_prob(const MhExpModel& model, double x, double x_next, bool accepted);

struct MhDefaults {
    double c = 0.028;
    double gamma = 4.0;
    double kappa = 1.25;
    double delta_smooth = 1.0 / 6.0;
    double omega = 0.2;
    double beta = 1.0243;
};

inline constexpr double kInvalidBetaStar = -1.0;

struct BetaStarCell {
    double c = 0.0;
    double gamma = 0.0;
    double beta_star = kInvalidBetaStar;  // sentinel when lambda >= 1
};

/// Row-major over c (outer) and gamma (inner), resolution points per axis,
/// endpoints included.
std::vector<BetaStarCell> beta_star_grid(double c_lo, double c_hi, double gamma_lo, double gamma_hi,
                                         std::size_t c_resolution, std::size_t gamma_resolution);

} // namespace exact
