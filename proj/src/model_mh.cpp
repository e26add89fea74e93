#include "exact/model_mh.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "exact/regen.hpp"

namespace exact {

namespace {

// (exp(t z) - 1) / t, with the removable singularity at t = 0 handled by series.
double expm1_over(double t, double z) {
    if (std::abs(t) < 1e-6) return z + t * z * z / 2.0 + t * t * z * z * z / 6.0;
    return std::expm1(t * z) / t;
}

// Integral over [0, gamma] of the uphill part: accepted moves contribute
// exp((c-1) z), rejected ones leave V unchanged (1 - exp(-z)).
double uphill_integral(double c, double gamma) {
    return expm1_over(c - 1.0, gamma) + gamma + std::expm1(-gamma);
}

// argmax of f on [lo, hi]: coarse grid, then Brent on the bracketing cell.
double maximize(const std::function<double(double)>& f, double lo, double hi) {
    constexpr int grid = 2000;
    int best = 0;
    double best_val = f(lo);
    for (int i = 1; i <= grid; ++i) {
        const double v = f(lo + (hi - lo) * i / grid);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double a = lo + (hi - lo) * std::max(best - 1, 0) / grid;
    const double b = lo + (hi - lo) * std::min(best + 1, grid) / grid;
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, a, b, 40, iters);
    return std::max(best_val, -r.second);
}

} // namespace

double mh_lambda(double c, double gamma) {
    const double down = -std::expm1(-c * gamma) / c;
    return (down + uphill_integral(c, gamma)) / (2.0 * gamma);
}

double mh_expected_V(double c, double gamma, double x) {
    if (x < 0.0) throw std::domain_error("mh_expected_V: x must be >= 0");
    const double vx = std::exp(c * x);
    if (x >= gamma) return mh_lambda(c, gamma) * vx;
    // proposals below 0 are rejected, those in [0, x] always accepted
    const double rejected = vx * (gamma - x) / (2.0 * gamma);
    const double down = expm1_over(c, x) / (2.0 * gamma);
    const double up = vx * uphill_integral(c, gamma) / (2.0 * gamma);
    return rejected + down + up;
}

MhDriftConstants mh_drift_constants(double c, double gamma) {
    if (!(c > 0.0 && gamma > 0.0)) throw std::invalid_argument("mh: c and gamma must be positive");
    MhDriftConstants k;
    k.lambda = mh_lambda(c, gamma);
    if (!(k.lambda < 1.0)) throw std::invalid_argument("mh: lambda >= 1 for this (c, gamma); no drift condition");
    k.epsilon = -std::expm1(-gamma) / (2.0 * gamma);
    k.A_sup = maximize([&](double x) { return mh_expected_V(c, gamma, x); }, 0.0, gamma);
    const double gap = maximize([&](double x) { return mh_expected_V(c, gamma, x) - k.lambda * std::exp(c * x); },
                                0.0, gamma);
    k.b = std::max(gap, 0.0);
    return k;
}

MhExpModel::MhExpModel(double c, double gamma) : c_(c), gamma_(gamma), k_(mh_drift_constants(c, gamma)) {}

DriftSpec MhExpModel::drift() const {
    DriftSpec d;
    d.lambda = k_.lambda;
    d.b = k_.b;
    d.epsilon = k_.epsilon;
    d.A_sup = k_.A_sup;
    d.small_set_descriptor = "[0, " + std::to_string(gamma_) + "]";
    return d;
}

double MhExpModel::V(double x) const { return std::exp(c_ * x); }

double MhExpModel::target_density(double x) const { return x >= 0.0 ? std::exp(-x) : 0.0; }

double MhExpModel::proposal_density(double y, double x) const {
    return std::abs(y - x) <= gamma_ ? 1.0 / (2.0 * gamma_) : 0.0;
}

double MhExpModel::q_density(double y) const {
    if (!(y >= 0.0 && y <= gamma_)) return 0.0;
    return std::exp(-y) / -std::expm1(-gamma_);
}

double MhExpModel::s_lower(double x) const { return in_small_set(x) ? k_.epsilon : 0.0; }

MhTransition MhExpModel::step(double x, Rng& rng) const {
    MhTransition t;
    t.proposal = x + gamma_ * (2.0 * uniform01(rng) - 1.0);
    if (t.proposal < 0.0) {
        t.next = x;
        return t;
    }
    t.accepted = t.proposal <= x || uniform01(rng) < std::exp(x - t.proposal);
    t.next = t.accepted ? t.proposal : x;
    return t;
}

double MhExpModel::regen_prob(double x, const MhTransition& t) const {
    if (!t.accepted || !in_small_set(x)) return 0.0;
    const double y = t.next;
    const double accept = std::min(1.0, target_density(y) / target_density(x));
    const double r = s_lower(x) * q_density(y) / (proposal_density(y, x) * accept);
    if (r > 1.0 + kRegenTolerance) throw RegenerationError("mh_regen_prob: ratio exceeds 1");
    return std::min(r, 1.0);
}

double MhExpModel::q_sample(Rng& rng) const {
    // inverse CDF of Exp(1) truncated to [0, gamma]
    return -std::log1p(uniform01(rng) * std::expm1(-gamma_));
}

MhTransition mh_step(const MhExpModel& model, double x, Rng& rng) {
    if (x < 0.0) throw std::domain_error("mh_step: x must be >= 0");
    return model.step(x, rng);
}

double mh_regen_prob(const MhExpModel& model, double x, double x_next, bool accepted) {
    return model.regen_prob(x, MhTransition{x_next, accepted, x_next});
}

std::vector<BetaStarCell> beta_star_grid(double c_lo, double c_hi, double gamma_lo, double gamma_hi,
                                         std::size_t c_resolution, std::size_t gamma_resolution) {
    if (!(c_lo > 0.0 && c_hi >= c_lo && gamma_lo > 0.0 && gamma_hi >= gamma_lo))
        throw std::invalid_argument("beta_star_grid: ranges must be positive and ordered");
    if (c_resolution == 0 || gamma_resolution == 0) throw std::invalid_argument("beta_star_grid: empty grid");
    auto axis = [](double lo, double hi, std::size_t n, std::size_t i) {
        return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    std::vector<BetaStarCell> out;
    out.reserve(c_resolution * gamma_resolution);
    for (std::size_t i = 0; i < c_resolution; ++i) {
        for (std::size_t j = 0; j < gamma_resolution; ++j) {
            BetaStarCell cell;
            cell.c = axis(c_lo, c_hi, c_resolution, i);
            cell.gamma = axis(gamma_lo, gamma_hi, gamma_resolution, j);
            if (mh_lambda(cell.c, cell.gamma) < 1.0) {
                const MhDriftConstants k = mh_drift_constants(cell.c, cell.gamma);
                DriftSpec d{k.lambda, k.b, k.epsilon, k.A_sup, ""};
                cell.beta_star = beta_star(d);
            }
            out.push_back(cell);
        }
    }
    return out;
}

} // namespace exact
