#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace polylab::stats {

// Streaming one-pass mean/variance (Welford), with the parallel-merge update
// of Chan et al. so per-stream partials combine associatively.
struct RunningStat {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    double min_value = std::numeric_limits<double>::infinity();
    double max_value = -std::numeric_limits<double>::infinity();

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
        if (x < min_value) min_value = x;
        if (x > max_value) max_value = x;
    }

    void merge(const RunningStat& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double d = o.mean - mean;
        const std::int64_t total = n + o.n;
        mean += d * static_cast<double>(o.n) / static_cast<double>(total);
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) /
                         static_cast<double>(total);
        n = total;
        if (o.min_value < min_value) min_value = o.min_value;
        if (o.max_value > max_value) max_value = o.max_value;
    }

    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double std_dev() const { return std::sqrt(variance()); }
    double std_error() const {
        return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
};

// Regularized upper incomplete gamma Q(a, x); series for x < a+1, continued
// fraction otherwise.
inline double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::invalid_argument("regularized_gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    const double ln_pref = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        // P(a,x) by series, Q = 1 - P
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return 1.0 - sum * std::exp(ln_pref);
    }
    // Q(a,x) by Lentz continued fraction
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(ln_pref) * h;
}

// P(X > x) for X ~ chi-squared with dof degrees of freedom.
inline double chi_square_pvalue(double x, int dof) {
    if (dof < 1) throw std::invalid_argument("chi_square_pvalue: dof must be >= 1");
    if (x <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

struct Interval {
    double low = 0.0, high = 0.0;
};

// 95% binomial interval, normal approximation with continuity correction.
inline Interval binomial_ci95(std::int64_t successes, std::int64_t total) {
    if (total <= 0) throw std::invalid_argument("binomial_ci95: total must be positive");
    const double p = static_cast<double>(successes) / static_cast<double>(total);
    const double z = 1.959963984540054;
    const double half =
        z * std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(total)) +
        0.5 / static_cast<double>(total);
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

}  // namespace polylab::stats
