#include "exact/inverse_gamma.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <limits>
#include <stdexcept>

namespace exact {

double InverseGamma::log_pdf(double x) const {
    if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
    return shape * std::log(rate) - std::lgamma(shape) - (shape + 1.0) * std::log(x) - rate / x;
}

double InverseGamma::cdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    if (std::isinf(x)) return 1.0;
    return boost::math::gamma_q(shape, rate / x);
}

double InverseGamma::sf(double x) const {
    if (!(x > 0.0)) return 1.0;
    if (std::isinf(x)) return 0.0;
    return boost::math::gamma_p(shape, rate / x);
}

double InverseGamma::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("InverseGamma::quantile: p must lie in (0,1)");
    return rate / boost::math::gamma_q_inv(shape, p);
}

PiecewiseInverseGamma::PiecewiseInverseGamma(double shape, double rate_small, double rate_big)
    : shape_(shape), small_{shape, rate_small}, big_{shape, rate_big} {
    if (!(shape > 0.0 && rate_small > 0.0 && rate_big > 0.0))
        throw std::domain_error("PiecewiseInverseGamma: shape and rates must be positive");
    if (!(rate_big > rate_small))
        throw std::domain_error("PiecewiseInverseGamma: rates coincide or are out of order; no crossing point");
    crossing_ = (rate_big - rate_small) / (shape * std::log1p((rate_big - rate_small) / rate_small));
    lower_mass_ = big_.cdf(crossing_);
    upper_mass_ = small_.sf(crossing_);
}

double PiecewiseInverseGamma::density(double x) const {
    if (!(x > 0.0)) return 0.0;
    return x < crossing_ ? big_.pdf(x) : small_.pdf(x);
}

double PiecewiseInverseGamma::sample_lower(double u) const {
    // cdf_big(x) = u * cdf_big(x*)  <=>  Q(a, r/x) = u Q(a, r/x*)
    return big_.rate / boost::math::gamma_q_inv(shape_, u * lower_mass_);
}

double PiecewiseInverseGamma::sample_upper(double u) const {
    // sf_small(x) = u * sf_small(x*)  <=>  P(a, r/x) = u P(a, r/x*)
    return small_.rate / boost::math::gamma_p_inv(shape_, u * upper_mass_);
}

} // namespace exact
