#include "exact/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace exact::stats {

double kolmogorov_sf(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 0.2) return 1.0;  // the series is useless here and the answer is 1 to double precision
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double corrected_p(double d, double n_eff) {
    const double rn = std::sqrt(n_eff);
    return kolmogorov_sf((rn + 0.12 + 0.11 / rn) * d);
}

} // namespace

KsResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf) {
    if (x.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return {d, corrected_p(d, n)};
}

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(i / n - j / m));
    }
    return {d, corrected_p(d, n * m / (n + m))};
}

double anderson_darling(std::vector<double> x, const std::function<double(double)>& cdf) {
    if (x.empty()) throw std::invalid_argument("anderson_darling: empty sample");
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = std::clamp(cdf(x[i]), 1e-300, 1.0 - 1e-16);
        const double hi = std::clamp(cdf(x[n - 1 - i]), 1e-300, 1.0 - 1e-16);
        s += (2.0 * i + 1.0) * (std::log(lo) + std::log1p(-hi));
    }
    return -static_cast<double>(n) - s / static_cast<double>(n);
}

double anderson_darling_critical(double alpha) {
    if (alpha == 0.10) return 1.933;
    if (alpha == 0.05) return 2.492;
    if (alpha == 0.025) return 3.070;
    if (alpha == 0.01) return 3.857;
    throw std::invalid_argument("anderson_darling_critical: unsupported alpha");
}

double mean(const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("mean: empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(const std::vector<double>& x) {
    if (x.size() < 2) throw std::invalid_argument("variance: need at least two values");
    const double mu = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - mu) * (v - mu);
    return s / static_cast<double>(x.size() - 1);
}

double standard_error(const std::vector<double>& x) { return std::sqrt(variance(x) / static_cast<double>(x.size())); }

double batch_means_se(const std::vector<double>& x, std::size_t batches) {
    if (batches < 2 || x.size() < 2 * batches) throw std::invalid_argument("batch_means_se: too few values");
    const std::size_t len = x.size() / batches;
    std::vector<double> means(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        const auto first = x.begin() + static_cast<std::ptrdiff_t>(b * len);
        means[b] = std::accumulate(first, first + static_cast<std::ptrdiff_t>(len), 0.0) / static_cast<double>(len);
    }
    return std::sqrt(variance(means) / static_cast<double>(batches));
}

double binomial_se(double p, std::size_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

double quantile(std::vector<double> x, double p) {
    if (x.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(x.begin(), x.end());
    const double h = (static_cast<double>(x.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, x.size() - 1);
    return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

} // namespace exact::stats
