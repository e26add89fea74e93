#pragma once

// Smoothed Bernoulli factory: turns i.i.d. Bernoulli(p) bits into a single
// Bernoulli(a*p) bit for a known scale a, provided a*p <= 1 - omega.
//
// The target a*p is extended past (1-omega)/a by a Gaussian-integral cap so
// that it is concave and twice differentiable with |f''| <= C. Bernstein-type
// envelopes a(n,k) = f(k/n), b(n,k) = a(n,k) + C/(2n) are refined by doubling
// n and mapped onto a single uniform G0 (reverse-time martingale scheme).

#include <concepts>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace exact {

inline constexpr std::uint64_t kDefaultFactoryBudget = std::uint64_t{1} << 32;

struct FactoryParams {
    double scale_a = 1.0;
    double omega = 0.2;
    double delta_smooth = 1.0 / 6.0;
    std::uint64_t max_budget = kDefaultFactoryBudget;

    /// Throws std::invalid_argument unless 0 < delta_smooth < omega < 1 and scale_a > 0.
    void validate() const;
};

/// C = a^2 sqrt(2) / (delta sqrt(e)), the uniform bound on |f''|.
double curvature_bound(const FactoryParams& params);

/// F(x) = delta * integral_0^{a x / delta} exp(-t^2) dt.
double smooth_extension(double x, const FactoryParams& params);

/// a*p below (1-omega)/a, smoothly capped above it. Domain [0,1].
double target_f(double p, const FactoryParams& params);

double coeff_lower(std::uint64_t n, std::uint64_t k, const FactoryParams& params);
double coeff_upper(std::uint64_t n, std::uint64_t k, const FactoryParams& params);

/// Smallest power of two n with b(n,n) <= 1. Throws std::domain_error when
/// omega - delta*sqrt(pi)/2 <= 0 (no such n exists).
std::uint64_t initial_power(const FactoryParams& params);

/// Hypergeometric weights P(X = i), X ~ Hypergeometric(n, n/2 successes drawn
/// from h_n), i.e. choose(n/2, h_n - i) choose(n/2, i) / choose(n, h_n).
/// Index of the first weight is `first`; weights are built in log space.
struct HypergeometricWeights {
    std::uint64_t first = 0;
    std::vector<double> weights;
};
HypergeometricWeights hypergeometric_weights(std::uint64_t n, std::uint64_t h_n);

/// Sum_i w(i) coeff(n/2, i) with the weights above.
double hypergeometric_expectation(std::uint64_t n, std::uint64_t h_n,
                                  const std::function<double(std::uint64_t, std::uint64_t)>& coeff);

struct ReweightedBounds {
    double l_star = 0.0;
    double u_star = 1.0;
};

/// L*_n and U*_n: the half-resolution envelope averaged over how the h_n
/// successes could have split between the two halves of the stream.
ReweightedBounds reweighted_bounds(std::uint64_t n, std::uint64_t h_n, const FactoryParams& params);

struct DoublingState {
    std::uint64_t n = 0;
    std::uint64_t h_n = 0;
    double l_n = 0.0;
    double u_n = 1.0;
    double l_star = 0.0;
    double u_star = 1.0;
    double l_tilde = 0.0;
    double u_tilde = 1.0;
    double g0 = 0.0;
    std::uint64_t consumed = 0;
};

struct FactoryResult {
    int bit = 0;
    std::uint64_t consumed = 0;
    std::uint64_t final_n = 0;
    bool exhausted = false;

    bool valid() const noexcept { return !exhausted; }
};

/// Source of input bits in blocks: returns the number of successes among
/// bits [first, first + count) of the stream. Bits are requested strictly in
/// order and each index exactly once.
template <class F>
concept BitBlockSource = requires(F f, std::uint64_t first, std::uint64_t count) {
    { f(first, count) } -> std::convertible_to<std::uint64_t>;
};

class BernoulliFactory {
public:
    explicit BernoulliFactory(FactoryParams params);

    const FactoryParams& params() const noexcept { return params_; }
    double curvature() const noexcept { return curvature_; }
    std::uint64_t initial_n() const noexcept { return n0_; }

    /// Runs the doubling scheme against `source` with the auxiliary uniform g0.
    /// When `trace` is non-null every visited level is appended to it.
    template <BitBlockSource Source>
    FactoryResult run(Source&& source, double g0, std::vector<DoublingState>* trace = nullptr) const;

private:
    // Applies one envelope update; returns false if the guard fired.
    bool update(DoublingState& s, const ReweightedBounds& prev) const;

    FactoryParams params_;
    double curvature_;
    std::uint64_t n0_;
};

template <BitBlockSource Source>
FactoryResult BernoulliFactory::run(Source&& source, double g0, std::vector<DoublingState>* trace) const {
    FactoryResult result;
    if (n0_ > params_.max_budget) {
        result.exhausted = true;
        return result;
    }

    DoublingState s;
    s.g0 = g0;
    s.n = n0_;
    s.h_n = static_cast<std::uint64_t>(source(std::uint64_t{0}, n0_));
    s.consumed = n0_;

    // First level: the previous envelope is the trivial [0, 1].
    ReweightedBounds prev{0.0, 1.0};
    for (;;) {
        const bool ok = update(s, prev);
        if (trace) trace->push_back(s);
        result.consumed = s.consumed;
        result.final_n = s.n;
        if (!ok) {
            result.bit = g0 < 0.5 * (s.l_tilde + s.u_tilde) ? 1 : 0;
            return result;
        }
        if (g0 <= s.l_tilde) {
            result.bit = 1;
            return result;
        }
        if (g0 >= s.u_tilde) {
            result.bit = 0;
            return result;
        }
        if (2 * s.n > params_.max_budget) {
            result.exhausted = true;
            return result;
        }
        s.h_n += static_cast<std::uint64_t>(source(s.n, s.n));
        s.n *= 2;
        s.consumed = s.n;
        prev = reweighted_bounds(s.n, s.h_n, params_);
    }
}

} // namespace exact
