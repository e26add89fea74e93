#pragma once

// Test-side oracles: finite-state kernels with exactly computable stationary
// laws and regeneration tails, chi-square p-values, and quadrature.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "exact/bounds.hpp"
#include "exact/rng.hpp"

namespace testing {

using Matrix = std::vector<std::vector<double>>;

inline int categorical(const std::vector<double>& w, double u) {
    double acc = 0.0;
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i] / total;
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(w.size()) - 1;
}

struct FiniteTransition {
    int next = 0;
};

/// Finite chain with small set C; s(x) = eps on C with
/// eps q(y) = min_{x in C} P(x, y).
class FiniteKernel {
public:
    using State = int;
    using Transition = FiniteTransition;

    FiniteKernel(Matrix P, std::vector<bool> small) : P_(std::move(P)), small_(std::move(small)) {
        const std::size_t k = P_.size();
        qmin_.assign(k, std::numeric_limits<double>::infinity());
        for (std::size_t x = 0; x < k; ++x)
            if (small_[x])
                for (std::size_t y = 0; y < k; ++y) qmin_[y] = std::min(qmin_[y], P_[x][y]);
        eps_ = std::accumulate(qmin_.begin(), qmin_.end(), 0.0);
    }

    std::size_t size() const { return P_.size(); }
    const Matrix& P() const { return P_; }
    double eps() const { return eps_; }
    double q(int y) const { return qmin_[static_cast<std::size_t>(y)] / eps_; }

    int q_sample(exact::Rng& rng) const { return categorical(qmin_, exact::uniform01(rng)); }
    FiniteTransition step(int x, exact::Rng& rng) const {
        return {categorical(P_[static_cast<std::size_t>(x)], exact::uniform01(rng))};
    }
    double regen_prob(int x, const FiniteTransition& t) const {
        if (!in_small_set(x)) return 0.0;
        const auto y = static_cast<std::size_t>(t.next);
        return qmin_[y] / P_[static_cast<std::size_t>(x)][y];
    }
    double s_lower(int x) const { return in_small_set(x) ? eps_ : 0.0; }
    bool in_small_set(int x) const { return small_[static_cast<std::size_t>(x)]; }

    /// Stationary law by power iteration.
    std::vector<double> stationary() const {
        const std::size_t k = size();
        std::vector<double> pi(k, 1.0 / static_cast<double>(k));
        for (int it = 0; it < 20000; ++it) {
            std::vector<double> nx(k, 0.0);
            for (std::size_t x = 0; x < k; ++x)
                for (std::size_t y = 0; y < k; ++y) nx[y] += pi[x] * P_[x][y];
            pi = nx;
        }
        return pi;
    }

    /// P(tau >= n) for n = 1..n_max from the no-regeneration sub-kernel.
    std::vector<double> tau_survival(std::size_t n_max) const {
        const std::size_t k = size();
        std::vector<double> dist(k);
        for (std::size_t y = 0; y < k; ++y) dist[y] = q(static_cast<int>(y));
        std::vector<double> out;
        for (std::size_t n = 1; n <= n_max; ++n) {
            out.push_back(std::accumulate(dist.begin(), dist.end(), 0.0));
            std::vector<double> nx(k, 0.0);
            for (std::size_t x = 0; x < k; ++x)
                for (std::size_t y = 0; y < k; ++y) {
                    const double keep = P_[x][y] - (small_[x] ? qmin_[y] : 0.0);
                    nx[y] += dist[x] * keep;
                }
            dist = nx;
        }
        return out;
    }

    /// Drift constants for V by exhaustive evaluation: lambda from states
    /// outside C, b and A from states inside.
    exact::DriftSpec drift(const std::vector<double>& V, double lambda_floor = 0.5) const {
        const std::size_t k = size();
        auto ev = [&](std::size_t x) {
            double s = 0.0;
            for (std::size_t y = 0; y < k; ++y) s += P_[x][y] * V[y];
            return s;
        };
        double lambda = lambda_floor;
        for (std::size_t x = 0; x < k; ++x)
            if (!small_[x]) lambda = std::max(lambda, ev(x) / V[x]);
        double b = 0.0;
        double A = 1.0;
        for (std::size_t x = 0; x < k; ++x)
            if (small_[x]) {
                b = std::max(b, ev(x) - lambda * V[x]);
                A = std::max(A, ev(x));
            }
        return exact::DriftSpec{lambda, b, eps_, A, "finite"};
    }

private:
    Matrix P_;
    std::vector<bool> small_;
    std::vector<double> qmin_;
    double eps_ = 0.0;
};

/// Every state small, so s is the constant eps.
class UniformFiniteKernel : public FiniteKernel {
public:
    explicit UniformFiniteKernel(Matrix P) : FiniteKernel(P, std::vector<bool>(P.size(), true)) {}
    double constant_s() const { return eps(); }
};

/// Pearson chi-square goodness-of-fit p-value.
inline double chi_square_p(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs) {
    const double n = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    double x2 = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double e = n * probs[i];
        x2 += (static_cast<double>(counts[i]) - e) * (static_cast<double>(counts[i]) - e) / e;
    }
    const double df = static_cast<double>(counts.size()) - 1.0;
    return boost::math::gamma_q(df / 2.0, x2 / 2.0);
}

template <class F>
double integrate(F f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

template <class F>
double integrate_to_inf(F f, double a) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, std::numeric_limits<double>::infinity());
}

inline bool within_se(double est, double target, double se, double k = 3.0) { return std::abs(est - target) <= k * se; }

} // namespace testing
