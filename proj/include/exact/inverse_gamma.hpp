#pragma once

#include <cmath>
#include <random>

#include "exact/rng.hpp"

namespace exact {

/// IG(shape, rate): density proportional to x^{-(shape+1)} exp(-rate/x) on x > 0.
struct InverseGamma {
    double shape = 1.0;
    double rate = 1.0;

    double log_pdf(double x) const;
    double pdf(double x) const { return std::exp(log_pdf(x)); }
    double cdf(double x) const;  // Q(shape, rate/x)
    double sf(double x) const;   // P(shape, rate/x)
    double quantile(double p) const;
    double mean() const { return rate / (shape - 1.0); }

    template <class G>
    double sample(G& g) const {
        std::gamma_distribution<double> gamma(shape, 1.0);
        return rate / gamma(g);
    }
};

/// Pointwise infimum over rates r in [rate_small, rate_big] of the IG(shape, r)
/// density. Below the crossing point the big-rate density is the smaller one,
/// above it the small-rate density. Its total mass is the minorization
/// constant contributed by this coordinate.
class PiecewiseInverseGamma {
public:
    /// Throws std::domain_error if the two rates coincide or are not positive.
    PiecewiseInverseGamma(double shape, double rate_small, double rate_big);

    double shape() const noexcept { return shape_; }
    const InverseGamma& big() const noexcept { return big_; }
    const InverseGamma& small() const noexcept { return small_; }

    /// (b1 - b2) / (a (log b1 - log b2)).
    double crossing() const noexcept { return crossing_; }
    double lower_mass() const noexcept { return lower_mass_; }
    double upper_mass() const noexcept { return upper_mass_; }
    double mass() const noexcept { return lower_mass_ + upper_mass_; }
    /// Probability that a normalized draw falls below the crossing point.
    double lower_weight() const noexcept { return lower_mass_ / mass(); }

    /// Unnormalized infimum density.
    double density(double x) const;

    /// Draw from density(x) / mass() by composition; each piece is a
    /// truncated inverse gamma sampled by inverse CDF.
    template <class G>
    double sample(G& g) const {
        const double pick = uniform01(g);
        const double u = uniform01(g);
        if (pick * mass() < lower_mass_) return sample_lower(u);
        return sample_upper(u);
    }

    double sample_lower(double u) const;
    double sample_upper(double u) const;

private:
    double shape_;
    InverseGamma small_;
    InverseGamma big_;
    double crossing_;
    double lower_mass_;
    double upper_mass_;
};

} // namespace exact
