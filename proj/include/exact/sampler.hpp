#pragma once

// Exact sampling from the stationary law via its mixture representation
// pi = sum_n p_n Q_n: propose the mixture index T* geometrically, accept it
// with a Bernoulli(a P(tau >= n)) coin built from i.i.d. regeneration times,
// then draw from Q_{T*}.
//
// Randomness layout for draw d under root seed s (see StreamKey):
//   s/d/proposal      T* proposals, consumed in order
//   s/d/vcoin         the V coin of the single-tau path
//   s/d/g0            the factory's auxiliary uniform, one per invocation
//   s/d/tau/j/i       tau number i of proposal j
//   s/d/qn            the final Q_n draw
// so results depend only on (seed, config, draw index), never on threads.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact/bounds.hpp"
#include "exact/factory.hpp"
#include "exact/regen.hpp"
#include "exact/rng.hpp"
#include "exact/tau_kernels.hpp"

namespace exact {

struct SamplerConfig {
    TailBound bound;
    FactoryParams factory;  // scale_a is replaced per proposal
    std::uint64_t seed = 0;
    int worker_count = 1;
    std::uint64_t tau_budget = 0;  // total tau draws per exact draw; 0 = unlimited

    void validate() const {
        factory.validate();
        if (1.0 / bound.kappa > 1.0 - factory.omega + 1e-12)
            throw std::invalid_argument("sampler: require 1/kappa <= 1 - omega");
        if (worker_count < 1) throw std::invalid_argument("sampler: worker_count must be >= 1");
    }
};

enum class CoinPath { single_tau, factory };

inline const char* to_string(CoinPath p) { return p == CoinPath::single_tau ? "single_tau" : "factory"; }

struct ProposalRecord {
    std::uint64_t n = 0;
    double a = 0.0;
    CoinPath path = CoinPath::single_tau;
    std::uint64_t tau_consumed = 0;
    int bit = 0;
    bool exhausted = false;
};

template <class State>
struct DrawRecord {
    State value{};
    std::uint64_t draw_index = 0;
    std::uint64_t accepted_T = 0;
    std::uint64_t proposals_tried = 0;
    std::uint64_t tau_consumed = 0;
    std::uint64_t factory_invocations = 0;
    std::uint64_t qn_attempts = 0;
    bool abandoned = false;
    std::string abandon_reason;
    double wall_seconds = 0.0;
    std::vector<ProposalRecord> proposals;
};

/// T* with P(T* = k) = (1/beta)^{k-1} (1 - 1/beta), k >= 1.
inline std::uint64_t propose_T(double beta, Rng& rng) {
    if (!(beta > 1.0)) throw std::domain_error("propose_T: beta must exceed 1");
    const double k = std::floor(std::log(uniform01(rng)) / -std::log(beta));
    return 1 + static_cast<std::uint64_t>(k);
}

struct CoinResult {
    int bit = 0;
    std::uint64_t tau_consumed = 0;
};

/// B = V W with V ~ Bernoulli(a), W = I(tau >= n). V is drawn first and the
/// tau is only simulated when V = 1; the law of B is unchanged.
template <RegenerativeKernel K>
CoinResult coin_small_a(double a, std::uint64_t n, const K& kernel, Rng& vcoin, StreamKey tau_family) {
    if (!(a > 0.0 && a <= 1.0)) throw std::domain_error("coin_small_a: a must lie in (0,1]");
    CoinResult out;
    if (!(uniform01(vcoin) < a)) return out;
    Rng rng = tau_family.child(std::uint64_t{0}).rng();
    out.tau_consumed = 1;
    out.bit = tau_at_least(kernel, rng, n) ? 1 : 0;
    return out;
}

/// Bernoulli(a P(tau >= n)) for a > 1 through the factory, fed with
/// W_i = I(tau_i >= n) from a fresh tau family.
template <RegenerativeKernel K>
FactoryResult coin_large_a(double a, std::uint64_t n, const K& kernel, const FactoryParams& factory_params,
                           double g0, StreamKey tau_family, int workers = 1) {
    if (!(a > 1.0)) throw std::domain_error("coin_large_a: a must exceed 1");
    FactoryParams p = factory_params;
    p.scale_a = a;
    const BernoulliFactory factory(p);
    return factory.run(
        [&](std::uint64_t first, std::uint64_t count) {
            return count_tau_at_least_parallel(kernel, tau_family, first, count, n, workers);
        },
        g0);
}

/// One exact draw from the stationary distribution. Exhausting either the
/// factory budget or the per-draw tau budget abandons the draw; it is never
/// turned into a rejection.
template <RegenerativeKernel K>
DrawRecord<typename K::State> exact_draw(const SamplerConfig& config, const K& kernel, std::uint64_t draw_index,
                                         bool keep_proposals = true) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    DrawRecord<typename K::State> rec;
    rec.draw_index = draw_index;

    const StreamKey draw_key = StreamKey(config.seed).child(draw_index);
    Rng proposals = draw_key.child(Stream::proposal).rng();
    Rng vcoin = draw_key.child(Stream::vcoin).rng();
    Rng g0s = draw_key.child(Stream::g0).rng();
    const StreamKey taus = draw_key.child(Stream::tau);

    auto finish = [&] {
        rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rec;
    };

    for (std::uint64_t j = 0;; ++j) {
        const std::uint64_t n = propose_T(config.bound.beta, proposals);
        const double a = scale_a(config.bound, n);
        ProposalRecord pr;
        pr.n = n;
        pr.a = a;
        const StreamKey family = taus.child(j);
        if (a <= 1.0) {
            const CoinResult c = coin_small_a(a, n, kernel, vcoin, family);
            pr.bit = c.bit;
            pr.tau_consumed = c.tau_consumed;
        } else {
            pr.path = CoinPath::factory;
            FactoryParams fp = config.factory;
            if (config.tau_budget != 0) {
                const std::uint64_t left = config.tau_budget > rec.tau_consumed ? config.tau_budget - rec.tau_consumed : 0;
                fp.max_budget = std::min(fp.max_budget, std::max<std::uint64_t>(left, 1));
            }
            const double g0 = uniform01(g0s);
            const FactoryResult fr = coin_large_a(a, n, kernel, fp, g0, family, config.worker_count);
            ++rec.factory_invocations;
            pr.bit = fr.bit;
            pr.tau_consumed = fr.consumed;
            pr.exhausted = fr.exhausted;
        }
        ++rec.proposals_tried;
        rec.tau_consumed += pr.tau_consumed;
        if (keep_proposals) rec.proposals.push_back(pr);

        if (pr.exhausted) {
            rec.abandoned = true;
            rec.abandon_reason = "factory budget exhausted at T*=" + std::to_string(n);
            return finish();
        }
        if (config.tau_budget != 0 && rec.tau_consumed > config.tau_budget) {
            rec.abandoned = true;
            rec.abandon_reason = "tau budget exceeded";
            return finish();
        }
        if (pr.bit == 1) {
            rec.accepted_T = n;
            break;
        }
    }

    Rng qn = draw_key.child(Stream::qn).rng();
    const auto q = draw_from_Qn(kernel, rec.accepted_T, qn);
    rec.value = q.value;
    rec.qn_attempts = q.attempts;
    return finish();
}

/// Kernels whose minorization function is a constant epsilon everywhere.
template <class K>
concept ConstantMinorization = RegenerativeKernel<K> && requires(const K& k) {
    { k.constant_s() } -> std::convertible_to<double>;
};

/// Uniformly ergodic shortcut: T ~ Geometric(epsilon) directly, then Q_T.
template <ConstantMinorization K>
typename K::State uniform_ergodic_draw(double epsilon, const K& kernel, Rng& rng) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::domain_error("uniform_ergodic_draw: epsilon must lie in (0,1]");
    if (std::abs(kernel.constant_s() - epsilon) > 1e-15)
        throw std::invalid_argument("uniform_ergodic_draw: epsilon does not match the kernel's constant s");
    std::uint64_t t = 1;
    if (epsilon < 1.0) t += static_cast<std::uint64_t>(std::floor(std::log(uniform01(rng)) / std::log1p(-epsilon)));
    return draw_from_Qn(kernel, t, rng).value;
}

} // namespace exact
