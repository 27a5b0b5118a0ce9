#include "histarith/binning.hpp"

#include <cmath>
#include <unordered_map>

namespace histarith {

namespace {

// t and q depend only on the group size once gamma and q_mode are fixed, so a
// build memoizes them per size. Cached and fresh values are bit-identical
// (the underlying computations are deterministic), keeping builder decisions
// exactly reproducible by a standalone check_bin call.
struct QuantileCache {
    std::unordered_map<std::int64_t, std::pair<double, double>> by_size;
};

std::pair<double, double> t_and_q(std::int64_t m, Confidence gamma, QMode q_mode,
                                  QuantileCache* cache) {
    if (cache) {
        auto it = cache->by_size.find(m);
        if (it != cache->by_size.end()) return it->second;
    }
    const double t = t_quantile(gamma, m - 1);
    const double q = q_mode == QMode::chi_square ? sigma_correction(gamma, m) : 0.0;
    if (cache) cache->by_size.emplace(m, std::make_pair(t, q));
    return {t, q};
}

CheckResult check_impl(std::span<const double> values, double lo, double hi,
                       Confidence gamma, QMode q_mode, QuantileCache* cache) {
    CheckResult r;
    const std::size_t m = values.size();
    if (m == 0) return r;
    r.stats.x_min = values.front();
    r.stats.x_max = values.back();
    double sum = 0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(m);
    r.stats.mean = mean;
    if (m < 2) return r; // insufficient count
    double ss = 0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double s = std::sqrt(ss / static_cast<double>(m - 1));
    r.stats.s = s;
    if (s == 0.0) {
        r.stats.delta = 0.0;
        r.pass = lo < mean && mean < hi;
        return r;
    }
    const auto [t, q] = t_and_q(static_cast<std::int64_t>(m), gamma, q_mode, cache);
    const double delta = t * s * (1.0 + q) / std::sqrt(static_cast<double>(m));
    r.stats.delta = delta;
    r.pass = (lo < mean - delta) && (mean + delta < hi);
    return r;
}

double place_boundary(BoundaryPlacement p, double left, double right) {
    switch (p) {
    case BoundaryPlacement::left_extreme: return left;
    case BoundaryPlacement::right_extreme: return right;
    default: return 0.5 * (left + right);
    }
}

// Largest gamma at which the whole sample passes over [lo, hi]. Monotone:
// delta grows with gamma, so pass(gamma) flips once.
double achieved_gamma(std::span<const double> v, double lo, double hi, QMode q_mode) {
    double glo = 1e-12, ghi = 1.0 - 1e-12;
    if (check_impl(v, lo, hi, Confidence{ghi}, q_mode, nullptr).pass) return ghi;
    if (!check_impl(v, lo, hi, Confidence{glo}, q_mode, nullptr).pass) return glo;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (glo + ghi);
        (check_impl(v, lo, hi, Confidence{mid}, q_mode, nullptr).pass ? glo : ghi) = mid;
    }
    return glo;
}

} // namespace

CheckResult check_bin(std::span<const double> values, double lo, double hi,
                      Confidence gamma, QMode q_mode) {
    return check_impl(values, lo, hi, gamma, q_mode, nullptr);
}

ReliableHistogram build_histogram(const Sample& sample, const BinningConfig& config) {
    const std::vector<double>& v = sample.values();
    const std::size_t n = v.size();
    if (n < 2)
        throw data_error("sample too small to bin (n < 2)");
    const double g = config.gamma_per_bin.gamma;

    ReliableHistogram out;
    out.n = static_cast<std::int64_t>(n);

    if (v.front() == v.back()) {
        const double eps = std::max(std::fabs(v.front()), 1.0) * 1e-9;
        Bin b;
        b.lo = v.front() - eps;
        b.hi = v.front() + eps;
        b.count = out.n;
        b.gamma = g;
        b.stats = BinStats{v.front(), v.front(), v.front(), 0.0, 0.0};
        out.bins.push_back(b);
        out.gamma = g;
        out.degenerate = true;
        return out;
    }

    QuantileCache cache;
    auto check = [&](std::size_t first, std::size_t last, double lo, double hi) {
        return check_impl(std::span<const double>(v.data() + first, last - first + 1),
                          lo, hi, config.gamma_per_bin, config.q_mode, &cache);
    };

    const std::size_t min_count = static_cast<std::size_t>(config.min_bin_count);
    std::vector<Bin> bins;
    std::vector<std::size_t> starts;
    std::size_t start = 0;
    double lo = v.front();
    while (start < n) {
        bool closed = false;
        for (std::size_t e = start + min_count - 1; e + 1 < n; ++e) {
            const double hi = place_boundary(config.boundary_placement, v[e], v[e + 1]);
            if (!(hi > lo)) continue;
            CheckResult r = check(start, e, lo, hi);
            if (r.pass) {
                bins.push_back(Bin{lo, hi, static_cast<std::int64_t>(e - start + 1), g, r.stats});
                starts.push_back(start);
                lo = hi;
                start = e + 1;
                closed = true;
                break;
            }
        }
        if (closed) continue;

        // Tail: right edge pinned at the largest observation. A tail smaller
        // than min_bin_count cannot form a bin regardless of its spread.
        CheckResult r = n - start >= min_count ? check(start, n - 1, lo, v.back())
                                               : CheckResult{};
        if (r.pass) {
            bins.push_back(Bin{lo, v.back(), static_cast<std::int64_t>(n - start), g, r.stats});
            starts.push_back(start);
        } else {
            bool merged = false;
            while (!bins.empty()) {
                const Bin prev = bins.back();
                const std::size_t ps = starts.back();
                bins.pop_back();
                starts.pop_back();
                CheckResult mr = check(ps, n - 1, prev.lo, v.back());
                if (mr.pass) {
                    bins.push_back(Bin{prev.lo, v.back(), static_cast<std::int64_t>(n - ps), g, mr.stats});
                    starts.push_back(ps);
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                const double ag = achieved_gamma(v, v.front(), v.back(), config.q_mode);
                CheckResult ar = check_impl(v, v.front(), v.back(), Confidence{ag},
                                            config.q_mode, nullptr);
                bins.push_back(Bin{v.front(), v.back(), out.n, ag, ar.stats});
                out.unreliable = true;
            }
        }
        break;
    }

    out.bins = std::move(bins);
    double gamma = 1.0;
    for (const Bin& b : out.bins) gamma *= b.gamma;
    out.gamma = gamma;
    return out;
}

PiecewiseAnalyticCurve histogram_cdf(const ReliableHistogram& hist) {
    PiecewiseAnalyticCurve c;
    c.kind = CurveKind::cdf;
    c.breakpoints.reserve(hist.bins.size() + 1);
    c.breakpoints.push_back(hist.bins.front().lo);
    double cum = 0;
    for (std::size_t j = 0; j < hist.bins.size(); ++j) {
        const Bin& b = hist.bins[j];
        c.breakpoints.push_back(b.hi);
        const double p = hist.mass(j);
        const double slope = p / b.width();
        BasisCoeffs seg;
        seg.c1 = cum - slope * b.lo;
        seg.cz = slope;
        c.segments.push_back(seg);
        cum += p;
    }
    return c;
}

QualityReport quality(const ReliableHistogram& hist, const Sample& sample) {
    if (static_cast<std::int64_t>(sample.n()) != hist.n)
        throw data_error("sample size does not match histogram n");
    const PiecewiseAnalyticCurve cdf = histogram_cdf(hist);
    const std::vector<double>& v = sample.values();
    const double n = static_cast<double>(v.size());
    double d = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = eval_curve(cdf, v[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    QualityReport r;
    r.gamma = hist.gamma;
    r.ks_statistic = d;
    r.alpha = kolmogorov_pvalue(d, hist.n);
    r.quality = r.gamma * r.alpha;
    return r;
}

} // namespace histarith
