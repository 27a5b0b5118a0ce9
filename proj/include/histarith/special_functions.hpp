#pragma once

#include <cstdint>
#include <stdexcept>

namespace histarith {

// Confidence level, open interval (0, 1).
struct Confidence {
    double gamma;
    explicit Confidence(double g) : gamma(g) {
        if (!(g > 0.0 && g < 1.0))
            throw std::invalid_argument("confidence level must be in (0,1)");
    }
};

// Two-sided Student-t quantile: t > 0 with P(|T_df| <= t) = gamma.
// Bisection on the t CDF via the regularized incomplete beta; for very large
// df the normal quantile with a Cornish-Fisher correction. Absolute accuracy
// well under 5e-4.
double t_quantile(Confidence gamma, std::int64_t df);

// q >= 0 such that s*(1+q) is a level-gamma upper confidence bound for sigma
// under normal sampling: 1+q = sqrt((n-1)/chi2_quantile(1-gamma, n-1)),
// clamped at 0.
double sigma_correction(Confidence gamma, std::int64_t n);

// Asymptotic Kolmogorov p-value: alpha = 2*sum_{k>=1} (-1)^(k-1) e^(-2k^2 l^2)
// with l = sqrt(n)*d; series truncated when a term drops below 1e-12.
double kolmogorov_pvalue(double d, std::int64_t n);

namespace detail {
// Standard normal quantile by bisection on Phi(x) = erfc(-x/sqrt(2))/2.
double normal_quantile(double p);
// p-quantile of chi-square with k degrees of freedom; bisection on the
// regularized incomplete gamma.
double chi2_quantile(double p, std::int64_t k);
// Regularized incomplete beta I_x(a,b) by Lentz continued fraction.
double incomplete_beta(double a, double b, double x);
// Regularized lower incomplete gamma P(a,x), series / continued fraction.
double incomplete_gamma_p(double a, double x);
} // namespace detail

} // namespace histarith
