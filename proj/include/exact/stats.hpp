#pragma once

// Goodness-of-fit and Monte Carlo error helpers used by the CLI and tests.

#include <cstddef>
#include <functional>
#include <vector>

namespace exact::stats {

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_sf(double x);

/// One-sample KS against a continuous CDF; p-value from the asymptotic law
/// with Stephens' finite-sample correction.
KsResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf);

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y);

/// Anderson-Darling A^2 against a fully specified continuous CDF.
double anderson_darling(std::vector<double> x, const std::function<double(double)>& cdf);

/// Upper critical values of A^2 for a fully specified null, alpha in
/// {0.10, 0.05, 0.025, 0.01}. Throws std::invalid_argument otherwise.
double anderson_darling_critical(double alpha);

double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x);  // unbiased
double standard_error(const std::vector<double>& x);

/// Standard error of the mean of a correlated series from non-overlapping
/// batch means.
double batch_means_se(const std::vector<double>& x, std::size_t batches = 50);

double binomial_se(double p, std::size_t n);

/// Empirical quantile with linear interpolation (type 7).
double quantile(std::vector<double> x, double p);

} // namespace exact::stats
