#include "convexlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace convexlab::stats {

double mean(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

double stderr_of_mean(std::span<const double> xs) {
    return std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

// Series / continued-fraction evaluation of the regularized incomplete gamma
// functions, after Numerical Recipes.
static double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

static double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_pvalue(double stat, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi2_pvalue: dof must be positive");
    return gamma_q(0.5 * dof, 0.5 * stat);
}

Chi2Result chi2_test(std::span<const long long> observed,
                     std::span<const double> expected, double min_expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi2_test: size mismatch");
    std::vector<long long> obs;
    std::vector<double> exp;
    long long o_acc = 0;
    double e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o_acc += observed[i];
        e_acc += expected[i];
        if (e_acc >= min_expected) {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
            o_acc = 0;
            e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0) {
        if (exp.empty()) throw std::invalid_argument("chi2_test: too little expected mass");
        obs.back() += o_acc;
        exp.back() += e_acc;
    }
    Chi2Result r;
    if (obs.size() < 2) {
        r.dof = 0;
        r.p_value = 1.0;
        return r;
    }
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const double d = static_cast<double>(obs[i]) - exp[i];
        r.stat += d * d / exp[i];
    }
    r.dof = static_cast<int>(obs.size()) - 1;
    r.p_value = chi2_pvalue(r.stat, r.dof);
    return r;
}

double ks_pvalue(double d, double n_eff) {
    const double sq = std::sqrt(n_eff);
    const double lambda = (sq + 0.12 + 0.11 / sq) * d;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * lambda * lambda * k * k);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    double p = 2.0 * sum;
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return ks_pvalue(d, na * nb / (na + nb));
}

Ols ols_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("ols_fit: need matched samples");
    const double n = static_cast<double>(x.size());
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Ols fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        ss_res += r * r;
    }
    fit.residual_variance = ss_res / (n - 2.0);
    fit.slope_stderr = std::sqrt(fit.residual_variance / sxx);
    return fit;
}

double correlation(std::span<const double> x, std::span<const double> y) {
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median: empty input");
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return (n % 2 == 1) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace convexlab::stats
