#include "exact/factory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace exact {

void FactoryParams::validate() const {
    if (!(scale_a > 0.0) || !std::isfinite(scale_a))
        throw std::invalid_argument("factory: scale_a must be positive and finite");
    if (!(delta_smooth > 0.0 && delta_smooth < omega && omega < 1.0))
        throw std::invalid_argument("factory: require 0 < delta_smooth < omega < 1");
    if (max_budget == 0) throw std::invalid_argument("factory: max_budget must be positive");
}

double curvature_bound(const FactoryParams& params) {
    return params.scale_a * params.scale_a * std::numbers::sqrt2 /
           (params.delta_smooth * std::sqrt(std::numbers::e));
}

double smooth_extension(double x, const FactoryParams& params) {
    if (x < 0.0) throw std::domain_error("smooth_extension: x < 0");
    const double delta = params.delta_smooth;
    // integral_0^z exp(-t^2) dt = sqrt(pi)/2 erf(z) = sqrt(pi) (Phi(z sqrt 2) - 1/2)
    return delta * 0.5 * std::sqrt(std::numbers::pi) * std::erf(params.scale_a * x / delta);
}

double target_f(double p, const FactoryParams& params) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("target_f: p outside [0,1]");
    const double knee = (1.0 - params.omega) / params.scale_a;
    if (p < knee) return params.scale_a * p;
    return (1.0 - params.omega) + smooth_extension(p - knee, params);
}

double coeff_lower(std::uint64_t n, std::uint64_t k, const FactoryParams& params) {
    if (n == 0) throw std::domain_error("coeff_lower: n must be >= 1");
    if (k > n) throw std::domain_error("coeff_lower: k > n");
    return target_f(static_cast<double>(k) / static_cast<double>(n), params);
}

double coeff_upper(std::uint64_t n, std::uint64_t k, const FactoryParams& params) {
    return coeff_lower(n, k, params) + curvature_bound(params) / (2.0 * static_cast<double>(n));
}

std::uint64_t initial_power(const FactoryParams& params) {
    params.validate();
    if (params.omega - params.delta_smooth * 0.5 * std::sqrt(std::numbers::pi) <= 0.0)
        throw std::domain_error("initial_power: omega - delta*sqrt(pi)/2 <= 0, the envelope never fits below 1");
    const double top = target_f(1.0, params);
    const double c = curvature_bound(params);
    for (int m = 1; m < 64; ++m) {
        const std::uint64_t n = std::uint64_t{1} << m;
        if (top + c / (2.0 * static_cast<double>(n)) <= 1.0) return n;
    }
    throw std::domain_error("initial_power: required n exceeds 2^63");
}

HypergeometricWeights hypergeometric_weights(std::uint64_t n, std::uint64_t h_n) {
    if (n < 2 || n % 2 != 0) throw std::domain_error("hypergeometric_weights: n must be even and >= 2");
    if (h_n > n) throw std::domain_error("hypergeometric_weights: h_n > n");
    const std::uint64_t half = n / 2;
    const std::uint64_t lo = h_n > half ? h_n - half : 0;
    const std::uint64_t hi = std::min(h_n, half);

    // log w(i+1) - log w(i) = log(h-i) + log(half-i) - log(i+1) - log(half-h+i+1).
    // Anchored at the lower end and normalized with log-sum-exp; lgamma
    // differences at n ~ 2^32 would lose ~5 significant digits.
    HypergeometricWeights out;
    out.first = lo;
    out.weights.resize(hi - lo + 1);
    std::vector<double>& w = out.weights;
    double logw = 0.0;
    double max_log = 0.0;
    w[0] = 0.0;
    for (std::uint64_t i = lo; i < hi; ++i) {
        const double hi_term = std::log(static_cast<double>(h_n - i)) + std::log(static_cast<double>(half - i));
        const double lo_term = std::log(static_cast<double>(i + 1)) + std::log(static_cast<double>(half - h_n + i + 1));
        logw += hi_term - lo_term;
        w[i - lo + 1] = logw;
        max_log = std::max(max_log, logw);
    }
    double total = 0.0;
    for (double& x : w) {
        x = std::exp(x - max_log);
        total += x;
    }
    for (double& x : w) x /= total;
    return out;
}

double hypergeometric_expectation(std::uint64_t n, std::uint64_t h_n,
                                  const std::function<double(std::uint64_t, std::uint64_t)>& coeff) {
    const auto hw = hypergeometric_weights(n, h_n);
    const std::uint64_t half = n / 2;
    double acc = 0.0;
    for (std::size_t j = 0; j < hw.weights.size(); ++j) acc += hw.weights[j] * coeff(half, hw.first + j);
    return acc;
}

ReweightedBounds reweighted_bounds(std::uint64_t n, std::uint64_t h_n, const FactoryParams& params) {
    ReweightedBounds r;
    r.l_star = hypergeometric_expectation(
        n, h_n, [&](std::uint64_t m, std::uint64_t k) { return coeff_lower(m, k, params); });
    // b(n/2, i) - a(n/2, i) = C/n for every i and the weights sum to one.
    r.u_star = r.l_star + curvature_bound(params) / static_cast<double>(n);
    return r;
}

BernoulliFactory::BernoulliFactory(FactoryParams params)
    : params_(params), curvature_(curvature_bound(params)), n0_(initial_power(params)) {}

bool BernoulliFactory::update(DoublingState& s, const ReweightedBounds& prev) const {
    s.l_n = coeff_lower(s.n, s.h_n, params_);
    s.u_n = s.l_n + curvature_ / (2.0 * static_cast<double>(s.n));
    s.l_star = prev.l_star;
    s.u_star = prev.u_star;
    const double spread = s.u_star - s.l_star;
    if (spread < 1e-300) return false;
    const double width = s.u_tilde - s.l_tilde;
    const double l_next = s.l_tilde + (s.l_n - s.l_star) / spread * width;
    const double u_next = s.u_tilde - (s.u_star - s.u_n) / spread * width;
    s.l_tilde = l_next;
    s.u_tilde = u_next;
    return true;
}

} // namespace exact
