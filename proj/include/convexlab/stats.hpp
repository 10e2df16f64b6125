#pragma once

#include <span>
#include <vector>

namespace convexlab::stats {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);       // unbiased
double stderr_of_mean(std::span<const double> xs);

// Upper regularized incomplete gamma Q(a, x).
double gamma_q(double a, double x);

// P(chi2_dof >= stat)
double chi2_pvalue(double stat, int dof);

// Pearson chi-square of observed counts against expected counts (same total).
// Cells with expected < min_expected are pooled into the following cell.
struct Chi2Result {
    double stat = 0.0;
    int dof = 0;
    double p_value = 1.0;
};
Chi2Result chi2_test(std::span<const long long> observed,
                     std::span<const double> expected, double min_expected = 5.0);

// Asymptotic Kolmogorov p-value for statistic d with effective sample size n.
double ks_pvalue(double d, double n_eff);

// One-sample KS against a cdf given as a callable on sorted data.
template <typename Cdf>
double ks_statistic_sorted(std::span<const double> sorted, Cdf cdf) {
    double d = 0.0;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, f - lo, hi - f});
    }
    return d;
}

// Two-sample KS p-value.
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

struct Ols {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double residual_variance = 0.0;
};
Ols ols_fit(std::span<const double> x, std::span<const double> y);

double correlation(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> xs);

}  // namespace convexlab::stats
