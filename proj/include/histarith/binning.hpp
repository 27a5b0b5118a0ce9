#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "histarith/curve.hpp"
#include "histarith/errors.hpp"
#include "histarith/sample.hpp"
#include "histarith/special_functions.hpp"

namespace histarith {

enum class QMode { chi_square, zero };
enum class BoundaryPlacement { midpoint, left_extreme, right_extreme };

struct BinningConfig {
    Confidence gamma_per_bin{0.999};
    QMode q_mode = QMode::chi_square;
    int min_bin_count = 2;
    BoundaryPlacement boundary_placement = BoundaryPlacement::midpoint;
};

// Observed statistics of the group that formed a bin. Absent on histograms
// reconstructed from documents, which persist only edges/counts/gammas.
struct BinStats {
    double x_min = 0, x_max = 0, mean = 0, s = 0, delta = 0;
};

struct Bin {
    double lo = 0, hi = 0;
    std::int64_t count = 0;
    double gamma = 0;
    std::optional<BinStats> stats;

    double width() const { return hi - lo; }
};

struct ReliableHistogram {
    std::vector<Bin> bins;
    std::int64_t n = 0;
    double gamma = 0; // product of per-bin gammas
    bool degenerate = false;
    bool unreliable = false;

    double support_lo() const { return bins.front().lo; }
    double support_hi() const { return bins.back().hi; }
    double mass(std::size_t j) const {
        return static_cast<double>(bins[j].count) / static_cast<double>(n);
    }
};

struct CheckResult {
    bool pass = false;
    BinStats stats;
};

// The reliability test for one group of sorted values against candidate
// edges: lo < mean - delta and mean + delta < hi, with
// delta = t(gamma, m) * s * (1 + q(gamma, m)) / sqrt(m), m = values.size().
// Degenerate group (s == 0): delta = 0 and the test is lo < mean < hi.
// Groups smaller than 2 fail rather than throw.
CheckResult check_bin(std::span<const double> values, double lo, double hi,
                      Confidence gamma, QMode q_mode = QMode::chi_square);

// Greedy left-to-right construction on the sorted sample: each bin is closed
// at the smallest group passing check_bin with the candidate right edge
// placed per boundary_placement; an unpassable tail merges into the previous
// bin, cascading left until the merged bin passes. If nothing passes, the
// single all-encompassing bin is returned flagged unreliable with the gamma
// it does achieve. An all-equal sample yields one degenerate bin
// [v-eps, v+eps], eps = max(|v|,1)*1e-9.
ReliableHistogram build_histogram(const Sample& sample, const BinningConfig& config);

// Piecewise-linear CDF: breakpoints at bin edges, slope mass/width per bin.
PiecewiseAnalyticCurve histogram_cdf(const ReliableHistogram& hist);

struct QualityReport {
    double gamma = 0;
    double ks_statistic = 0;
    double alpha = 0;
    double quality = 0; // gamma * alpha
};

// Two-sided KS fit of the histogram CDF to the sample's empirical CDF,
// alpha = kolmogorov_pvalue(D, n), quality = gamma * alpha.
QualityReport quality(const ReliableHistogram& hist, const Sample& sample);

} // namespace histarith
