#pragma once

// Geometric tail bound P(tau >= n) <= M * beta^{-n} from drift and
// minorization constants, and the acceptance scale used by the rejection
// sampler for the mixture index.

#include <cstdint>
#include <string>

namespace exact {

struct DriftSpec {
    double lambda = 0.5;  // drift rate, in (0,1)
    double b = 0.0;       // drift offset on the small set
    double epsilon = 1.0; // minorization constant on the small set, in (0,1]
    double A_sup = 1.0;   // sup over the small set of E[V(X1) | X0 = x]
    std::string small_set_descriptor;

    /// J = (A_sup - epsilon) / lambda.
    double J() const noexcept { return (A_sup - epsilon) / lambda; }

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

struct TailBound {
    double J = 0.0;
    double beta_star = 0.0;
    double beta = 0.0;
    double phi_beta = 0.0;
    double M = 0.0;
    double D = 0.0;
    double kappa = 0.0;

    /// d(n) = beta^{-n}.
    double d(std::uint64_t n) const;
};

double beta_star(const DriftSpec& drift);

/// phi(beta) = log(beta) / log(1/lambda).
double phi(const DriftSpec& drift, double beta);

/// Throws std::range_error unless 1 < beta < beta_star(drift).
double big_M(const DriftSpec& drift, double beta);

double d_n(double beta, std::uint64_t n);
double D_total(double beta);

/// Validates beta in (1, beta*) and 1/kappa <= 1 - omega, then assembles all
/// constants.
TailBound make_tail_bound(const DriftSpec& drift, double beta, double kappa, double omega);

/// a(n) = beta^n / (M kappa), so that a(n) P(tau >= n) <= 1/kappa.
double scale_a(const TailBound& bound, std::uint64_t n);

} // namespace exact
