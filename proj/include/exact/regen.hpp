#pragma once

// Split-chain machinery over any kernel that exposes a one-step minorization
// P(x, .) >= s(x) Q(.). Regeneration flags are generated retrospectively from
// (X_n, X_{n+1}) so the residual kernel is never sampled.

#include <concepts>
#include <cstdint>
#include <stdexcept>

#include "exact/rng.hpp"

namespace exact {

/// A Markov kernel with minorization data. `step` returns a transition record
/// whose `next` member is the new state; any auxiliary data needed by
/// `regen_prob` (e.g. whether a Metropolis proposal was accepted) rides along
/// in the same record.
template <class K>
concept RegenerativeKernel = requires(const K& k, const typename K::State& x,
                                      const typename K::Transition& t, Rng& rng) {
    typename K::State;
    typename K::Transition;
    { k.q_sample(rng) } -> std::same_as<typename K::State>;
    { k.step(x, rng) } -> std::same_as<typename K::Transition>;
    { k.regen_prob(x, t) } -> std::convertible_to<double>;
    { k.s_lower(x) } -> std::convertible_to<double>;
    { k.in_small_set(x) } -> std::convertible_to<bool>;
    { t.next } -> std::convertible_to<const typename K::State&>;
};

class RegenerationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr double kRegenTolerance = 1e-12;

/// Clamps a regeneration probability to [0,1]; anything further than 1e-12
/// outside is a kernel bug.
inline double checked_regen_prob(double p) {
    if (!(p >= -kRegenTolerance && p <= 1.0 + kRegenTolerance))
        throw RegenerationError("regeneration probability outside [0,1]");
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

template <class State>
struct TourResult {
    std::uint64_t tau = 0;
    std::uint64_t steps_taken = 0;  // states generated: one Q draw plus tau transitions
    State terminal_state{};         // X_tau
};

/// One regeneration time: X_1 ~ Q, then X_{n+1} ~ P(X_n, .) and
/// delta_n ~ Bernoulli(regen_prob) until the first delta_n = 1.
template <RegenerativeKernel K>
TourResult<typename K::State> draw_tau(const K& kernel, Rng& rng) {
    TourResult<typename K::State> out;
    auto x = kernel.q_sample(rng);
    out.steps_taken = 1;
    for (std::uint64_t n = 1;; ++n) {
        auto t = kernel.step(x, rng);
        ++out.steps_taken;
        const double r = checked_regen_prob(kernel.regen_prob(x, t));
        if (r > 0.0 && uniform01(rng) < r) {
            out.tau = n;
            out.terminal_state = x;
            return out;
        }
        x = t.next;
    }
}

/// I(tau >= n) without simulating past step n-1.
template <RegenerativeKernel K>
bool tau_at_least(const K& kernel, Rng& rng, std::uint64_t n) {
    if (n <= 1) return true;
    auto x = kernel.q_sample(rng);
    for (std::uint64_t i = 1; i < n; ++i) {
        auto t = kernel.step(x, rng);
        const double r = checked_regen_prob(kernel.regen_prob(x, t));
        if (r > 0.0 && uniform01(rng) < r) return false;
        x = t.next;
    }
    return true;
}

template <class State>
struct QnDraw {
    State value{};
    std::uint64_t attempts = 0;
    bool complete = true;
};

/// A draw from Q_n = law(X_n | tau >= n): rerun n-1 transitions of the split
/// chain until none of delta_1..delta_{n-1} fires. `max_attempts` = 0 means
/// unlimited; exact-draw runs never set it.
template <RegenerativeKernel K>
QnDraw<typename K::State> draw_from_Qn(const K& kernel, std::uint64_t n, Rng& rng,
                                      std::uint64_t max_attempts = 0) {
    if (n == 0) throw std::domain_error("draw_from_Qn: n must be >= 1");
    QnDraw<typename K::State> out;
    for (;;) {
        if (max_attempts != 0 && out.attempts >= max_attempts) {
            out.complete = false;
            return out;
        }
        ++out.attempts;
        auto x = kernel.q_sample(rng);
        bool regenerated = false;
        for (std::uint64_t i = 1; i < n; ++i) {
            auto t = kernel.step(x, rng);
            const double r = checked_regen_prob(kernel.regen_prob(x, t));
            if (r > 0.0 && uniform01(rng) < r) {
                regenerated = true;
                break;
            }
            x = t.next;
        }
        if (!regenerated) {
            out.value = x;
            return out;
        }
    }
}

} // namespace exact
