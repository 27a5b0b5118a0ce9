#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "histarith/special_functions.hpp"
#include "oracles/stat_oracles.hpp"

using namespace histarith;

TEST_SUITE("special_functions") {

TEST_CASE("confidence level domain") {
    CHECK_THROWS_AS(Confidence(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Confidence(1.0), std::invalid_argument);
    CHECK_THROWS_AS(Confidence(-0.5), std::invalid_argument);
    CHECK_THROWS_AS(Confidence(1.5), std::invalid_argument);
    CHECK_THROWS_AS(Confidence(std::nan("")), std::invalid_argument);
    CHECK(Confidence(0.999).gamma == 0.999);
}

TEST_CASE("t quantile, Cauchy closed form") {
    // df=1 is Cauchy: t = tan(pi*gamma/2).
    CHECK(t_quantile(Confidence(0.5), 1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(t_quantile(Confidence(0.999), 1) ==
          doctest::Approx(636.6192487687196).epsilon(1e-9));
    for (double g : {0.1, 0.3, 0.6, 0.9, 0.99}) {
        const double want = std::tan(1.5707963267948966 * g);
        CHECK(t_quantile(Confidence(g), 1) ==
              doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("t quantile, large-df normal limit") {
    // Exact value 3.29053646124869113; normal quantile alone is 3.29052673.
    const double t = t_quantile(Confidence(0.999), 1000000);
    CHECK(t == doctest::Approx(3.290536461248691).epsilon(1e-9));
    CHECK(std::fabs(t - 3.2905) < 1e-3);
    CHECK(t > detail::normal_quantile(0.9995));
}

TEST_CASE("t quantile vs integration oracle") {
    for (std::int64_t df : {1, 2, 5, 30, 1000}) {
        for (double g : {0.5, 0.9, 0.99, 0.999}) {
            const double mine = t_quantile(Confidence(g), df);
            const double ref = testor::t_quantile_oracle(g, static_cast<double>(df));
            CHECK(std::fabs(mine - ref) <= 5e-4 * std::max(1.0, std::fabs(ref)));
        }
    }
    CHECK(testor::t_quantile_oracle(0.999, 10.0) ==
          doctest::Approx(4.586893858702636).epsilon(1e-8));
    CHECK(t_quantile(Confidence(0.999), 10) ==
          doctest::Approx(4.586893858702636).epsilon(1e-9));
}

TEST_CASE("t quantile monotone in gamma, decreasing in df, above normal") {
    for (std::int64_t df : {1, 2, 5, 30, 1000}) {
        double prev = 0.0;
        for (int i = 1; i <= 50; ++i) {
            const double g = i / 51.0;
            const double t = t_quantile(Confidence(g), df);
            CHECK(t > prev);
            prev = t;
        }
    }
    for (double g : {0.5, 0.9, 0.999}) {
        const double z = detail::normal_quantile(0.5 * (1.0 + g));
        double prev = std::numeric_limits<double>::infinity();
        for (std::int64_t df : {1, 2, 5, 30, 1000, 100000}) {
            const double t = t_quantile(Confidence(g), df);
            CHECK(t <= prev + 1e-12);
            CHECK(t >= z - 5e-4);
            prev = t;
        }
    }
    CHECK_THROWS_AS(t_quantile(Confidence(0.9), 0), std::invalid_argument);
    // gamma -> 0+ gives t -> 0.
    CHECK(t_quantile(Confidence(1e-12), 5) < 1e-10);
}

TEST_CASE("sigma correction, frozen value and oracle") {
    // chi2 quantile at p=0.001, k=9 is 1.1519495462235642.
    const double q = sigma_correction(Confidence(0.999), 10);
    CHECK(q == doctest::Approx(1.79514618160768).epsilon(1e-9));
    const double ref = std::sqrt(9.0 / testor::chi2_quantile_oracle(0.001, 9.0)) - 1.0;
    CHECK(q == doctest::Approx(ref).epsilon(1e-7));
    CHECK(detail::chi2_quantile(0.001, 9) ==
          doctest::Approx(1.1519495462235642).epsilon(1e-9));
}

TEST_CASE("sigma correction decreasing in n, clamped at zero") {
    double prev = std::numeric_limits<double>::infinity();
    for (std::int64_t n : {2, 3, 5, 10, 100, 1000, 10000}) {
        const double q = sigma_correction(Confidence(0.999), n);
        CHECK(q >= 0.0);
        CHECK(q < prev);
        prev = q;
    }
    CHECK(sigma_correction(Confidence(0.999), 1000000) < 0.005);
    // Tiny gamma puts the chi2 quantile above n-1, so the bound clamps.
    CHECK(sigma_correction(Confidence(1e-6), 10) == 0.0);
    CHECK_THROWS_AS(sigma_correction(Confidence(0.9), 1), std::invalid_argument);
}

TEST_CASE("kolmogorov p-value, frozen point and oracle") {
    // sqrt(100)*0.1358 = 1.358.
    const double a = kolmogorov_pvalue(0.1358, 100);
    CHECK(a == doctest::Approx(0.05002679733444701).epsilon(1e-11));
    CHECK(std::fabs(a - 0.0495) < 1e-3);
    for (double lam : {0.5, 0.8, 1.0, 1.358, 2.0, 3.0}) {
        const double mine = kolmogorov_pvalue(lam, 1); // n=1, d carries lambda
        CHECK(mine == doctest::Approx(testor::kolmogorov_alpha_oracle(lam))
                          .epsilon(1e-10));
    }
}

TEST_CASE("kolmogorov p-value limits and monotonicity") {
    CHECK(kolmogorov_pvalue(0.0, 10) == 1.0);
    CHECK(kolmogorov_pvalue(1e-9, 10) == 1.0);
    CHECK(kolmogorov_pvalue(1.0, 1000000) < 1e-12);
    double prev = 1.1;
    for (int i = 0; i <= 30; ++i) {
        const double d = 0.03 + 0.009 * i; // lambda from 0.3 to 3.0 at n=100
        const double a = kolmogorov_pvalue(d, 100);
        CHECK(a < prev);
        CHECK(a > 0.0);
        CHECK(a <= 1.0);
        prev = a;
    }
    CHECK_THROWS_AS(kolmogorov_pvalue(-0.1, 10), std::invalid_argument);
    CHECK_THROWS_AS(kolmogorov_pvalue(0.1, 0), std::invalid_argument);
}

} // TEST_SUITE
