#include "exact/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace exact {

void DriftSpec::validate() const {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("drift: lambda must lie in (0,1)");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("drift: epsilon must lie in (0,1]");
    if (!(b >= 0.0) || !std::isfinite(b)) throw std::invalid_argument("drift: b must be finite and >= 0");
    if (!(A_sup >= 1.0) || !std::isfinite(A_sup)) throw std::invalid_argument("drift: A_sup must be finite and >= 1");
}

double TailBound::d(std::uint64_t n) const { return d_n(beta, n); }

double beta_star(const DriftSpec& drift) {
    drift.validate();
    const double j = drift.J();
    if (j < 1.0) return 1.0 / drift.lambda;
    if (drift.epsilon >= 1.0) return 1.0 / drift.lambda;  // log(1-eps) = -inf: the exponent tends to log(1/lambda)
    const double log1me = std::log1p(-drift.epsilon);
    return std::exp(std::log(drift.lambda) * log1me / (std::log(j) - log1me));
}

double phi(const DriftSpec& drift, double beta) { return std::log(beta) / -std::log(drift.lambda); }

double big_M(const DriftSpec& drift, double beta) {
    const double bs = beta_star(drift);
    if (!(beta > 1.0 && beta < bs))
        throw std::range_error("big_M: beta must lie in the open interval (1, beta*)");
    const double eps = drift.epsilon;
    const double ph = phi(drift, beta);
    const double lead = beta * std::pow(drift.b / (eps * (1.0 - drift.lambda)), ph);
    const double num = 1.0 - beta * (1.0 - eps);
    // (1-eps) (J/(1-eps))^phi = (1-eps)^{1-phi} J^phi, which tends to 0 as eps -> 1
    const double den = 1.0 - std::exp((1.0 - ph) * std::log1p(-eps) + ph * std::log(drift.J()));
    const double m = lead * num / den;
    if (!(m > 0.0) || !std::isfinite(m)) throw std::range_error("big_M: bound is not finite and positive");
    return m;
}

double d_n(double beta, std::uint64_t n) {
    if (!(beta > 1.0)) throw std::range_error("d_n: beta must exceed 1");
    return std::pow(beta, -static_cast<double>(n));
}

double D_total(double beta) {
    if (!(beta > 1.0)) throw std::range_error("D_total: beta must exceed 1");
    return 1.0 / (beta - 1.0);
}

TailBound make_tail_bound(const DriftSpec& drift, double beta, double kappa, double omega) {
    TailBound t;
    t.J = drift.J();
    t.beta_star = beta_star(drift);
    t.beta = beta;
    t.M = big_M(drift, beta);
    t.phi_beta = phi(drift, beta);
    t.D = D_total(beta);
    if (!(kappa > 1.0)) throw std::invalid_argument("tail bound: kappa must exceed 1");
    // equality is allowed: the factory only needs a p <= 1 - omega
    if (1.0 / kappa > 1.0 - omega + 1e-12) throw std::invalid_argument("tail bound: require 1/kappa <= 1 - omega");
    t.kappa = kappa;
    return t;
}

double scale_a(const TailBound& bound, std::uint64_t n) {
    // beta^n / (M kappa), in log space so large n does not overflow early
    return std::exp(static_cast<double>(n) * std::log(bound.beta) - std::log(bound.M * bound.kappa));
}

} // namespace exact
