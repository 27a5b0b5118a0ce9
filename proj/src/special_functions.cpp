#include "histarith/special_functions.hpp"

#include <cmath>
#include <limits>

namespace histarith {
namespace detail {

namespace {

constexpr double kTiny = 1e-300;

// Lentz's algorithm for the continued fraction of I_x(a,b).
double beta_cont_fraction(double a, double b, double x) {
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 400; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h;
}

// Series for P(a,x), valid and efficient for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a,x), valid for x >= a+1.
double gamma_q_cont_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000000; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cont_fraction(a, b, x) / a;
    return 1.0 - front * beta_cont_fraction(b, a, 1.0 - x) / b;
}

double incomplete_gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cont_fraction(a, x);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("normal_quantile: p must be in (0,1)");
    auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double chi2_quantile(double p, std::int64_t k) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("chi2_quantile: p must be in (0,1)");
    if (k < 1)
        throw std::invalid_argument("chi2_quantile: k must be >= 1");
    const double a = 0.5 * static_cast<double>(k);
    auto cdf = [a](double x) { return incomplete_gamma_p(a, 0.5 * x); };
    double hi = 2.0 * static_cast<double>(k) + 10.0;
    int guard = 0;
    while (cdf(hi) < p && guard++ < 400) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
        if (hi - lo <= 1e-14 * std::max(1.0, lo)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

double t_quantile(Confidence gamma, std::int64_t df) {
    if (df < 1)
        throw std::invalid_argument("t_quantile: df must be >= 1");
    const double g = gamma.gamma;
    if (df >= 10000) {
        // Normal limit with Cornish-Fisher correction; error O(df^-3).
        const double z = detail::normal_quantile(0.5 * (1.0 + g));
        const double nu = static_cast<double>(df);
        const double z3 = z * z * z, z5 = z3 * z * z;
        return z + (z3 + z) / (4.0 * nu) +
               (5.0 * z5 + 16.0 * z3 + 3.0 * z) / (96.0 * nu * nu);
    }
    const double a = 0.5 * static_cast<double>(df);
    // P(|T| <= t) = 1 - I_x(df/2, 1/2) with x = df/(df + t^2), increasing in t.
    auto two_sided = [&](double t) {
        const double x = df / (df + t * t);
        return 1.0 - detail::incomplete_beta(a, 0.5, x);
    };
    double hi = 1.0;
    int guard = 0;
    while (two_sided(hi) < g && guard++ < 2100) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (two_sided(mid) < g ? lo : hi) = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, lo)) break;
    }
    return 0.5 * (lo + hi);
}

double sigma_correction(Confidence gamma, std::int64_t n) {
    if (n < 2)
        throw std::invalid_argument("sigma_correction: n must be >= 2");
    const double chi2 = detail::chi2_quantile(1.0 - gamma.gamma, n - 1);
    const double q = std::sqrt(static_cast<double>(n - 1) / chi2) - 1.0;
    return std::max(q, 0.0);
}

double kolmogorov_pvalue(double d, std::int64_t n) {
    if (d < 0.0)
        throw std::invalid_argument("kolmogorov_pvalue: d must be >= 0");
    if (n < 1)
        throw std::invalid_argument("kolmogorov_pvalue: n must be >= 1");
    const double lambda = std::sqrt(static_cast<double>(n)) * d;
    // K(lambda) vanishes faster than any power as lambda -> 0; below 0.04 the
    // complement is 1 to far beyond double precision.
    if (lambda < 0.04) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100000; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    const double alpha = 2.0 * sum;
    return std::min(1.0, std::max(0.0, alpha));
}

} // namespace histarith
