#include "histarith/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "histarith/detail/rng.hpp"
#include "histarith/special_functions.hpp"

namespace histarith {

namespace {

PairwiseResult pairwise_impl(const Sample& sx, const Sample& sy, Op op,
                             std::int64_t cap, bool parallel) {
    const std::int64_t nx = static_cast<std::int64_t>(sx.n());
    const std::int64_t ny = static_cast<std::int64_t>(sy.n());
    if (op == Op::div) {
        std::ostringstream bad;
        int nbad = 0;
        for (std::size_t i = 0; i < sx.n(); ++i) {
            if (sx.values()[i] == 0.0) {
                if (nbad++) bad << ", ";
                bad << i;
            }
        }
        if (nbad)
            throw domain_error("zero divisor in x at sorted indices: " + bad.str());
    }
    if (nx * ny > cap) {
        std::ostringstream msg;
        msg << "pairwise size " << nx << "*" << ny << " exceeds cap " << cap
            << "; use Monte Carlo sampling (mc_sample) instead";
        throw data_error(msg.str());
    }
    std::vector<double> out(static_cast<std::size_t>(nx * ny));
    const double* xv = sx.values().data();
    const double* yv = sy.values().data();

    auto row = [&](std::int64_t i) {
        double* dst = out.data() + i * ny;
        const double x = xv[i];
        for (std::int64_t j = 0; j < ny; ++j) dst[j] = apply_op(op, x, yv[j]);
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::int64_t i = 0; i < nx; ++i) row(i);
    } else {
        for (std::int64_t i = 0; i < nx; ++i) row(i);
    }

    PairwiseResult r{Sample::from_values(std::move(out)), op, nx, ny};
    return r;
}

Sample mc_impl(const ReliableHistogram& hx, const ReliableHistogram& hy, Op op,
               std::int64_t n, std::uint64_t seed, bool parallel) {
    if (n < 1)
        throw std::invalid_argument("mc_sample: n must be >= 1");
    if (op == Op::div && hx.support_lo() <= 0.0)
        throw domain_error("quotient requires strictly positive X support");

    auto prefix_of = [](const ReliableHistogram& h) {
        std::vector<double> p(h.bins.size());
        double cum = 0;
        for (std::size_t j = 0; j < h.bins.size(); ++j) {
            cum += h.mass(j);
            p[j] = cum;
        }
        return p;
    };
    const std::vector<double> px = prefix_of(hx);
    const std::vector<double> py = prefix_of(hy);

    auto pick = [](const std::vector<double>& prefix, double u) {
        std::size_t i = static_cast<std::size_t>(
            std::upper_bound(prefix.begin(), prefix.end(), u * prefix.back()) -
            prefix.begin());
        return i < prefix.size() ? i : prefix.size() - 1;
    };

    std::vector<double> out(static_cast<std::size_t>(n));
    auto draw = [&](std::int64_t i) {
        detail::DrawRng rng(seed, static_cast<std::uint64_t>(i));
        const Bin& bx = hx.bins[pick(px, rng.uniform01())];
        const double x = bx.lo + rng.uniform01() * bx.width();
        const Bin& by = hy.bins[pick(py, rng.uniform01())];
        const double y = by.lo + rng.uniform01() * by.width();
        out[static_cast<std::size_t>(i)] = apply_op(op, x, y);
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::int64_t i = 0; i < n; ++i) draw(i);
    } else {
        for (std::int64_t i = 0; i < n; ++i) draw(i);
    }
    return Sample::from_values(std::move(out));
}

double ks_sup(const ResultDistribution& d, const Sample& s, bool parallel) {
    const std::vector<double>& v = s.values();
    const double n = static_cast<double>(v.size());
    const std::int64_t m = static_cast<std::int64_t>(v.size());
    double sup = 0;
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : sup)
#endif
        for (std::int64_t i = 0; i < m; ++i) {
            const double f = eval_curve(d.cdf, v[static_cast<std::size_t>(i)]);
            const double lo = f - static_cast<double>(i) / n;
            const double hi = static_cast<double>(i + 1) / n - f;
            sup = std::max(sup, std::max(lo, hi));
        }
    } else {
        for (std::int64_t i = 0; i < m; ++i) {
            const double f = eval_curve(d.cdf, v[static_cast<std::size_t>(i)]);
            const double lo = f - static_cast<double>(i) / n;
            const double hi = static_cast<double>(i + 1) / n - f;
            sup = std::max(sup, std::max(lo, hi));
        }
    }
    return sup;
}

} // namespace

PairwiseResult pairwise_combine(const Sample& sx, const Sample& sy, Op op, std::int64_t cap) {
    return pairwise_impl(sx, sy, op, cap, true);
}

ProvenancedHistogram rebuild_z_histogram(const PairwiseResult& p,
                                         const ReliableHistogram& hx,
                                         const ReliableHistogram& hy,
                                         const BinningConfig& config) {
    ProvenancedHistogram out;
    out.histogram = build_histogram(p.sample, config);
    out.provenance_gamma.assign(out.histogram.bins.size(), 1.0);
    for (std::size_t zb = 0; zb < out.histogram.bins.size(); ++zb) {
        const Bin& bz = out.histogram.bins[zb];
        double g = 1.0;
        for (std::size_t j = 0; j < hx.bins.size(); ++j) {
            for (std::size_t r = 0; r < hy.bins.size(); ++r) {
                Rect rc;
                rc.ax = hx.bins[j].lo;
                rc.bx = hx.bins[j].hi;
                rc.ay = hy.bins[r].lo;
                rc.by = hy.bins[r].hi;
                const auto [zlo, zhi] = op_image(p.op, rc);
                if (zlo < bz.hi && zhi > bz.lo) // positive-measure overlap
                    g *= hx.bins[j].gamma * hy.bins[r].gamma;
            }
        }
        out.provenance_gamma[zb] = g;
    }
    return out;
}

Sample mc_sample(const ReliableHistogram& hx, const ReliableHistogram& hy, Op op,
                 std::int64_t n, std::uint64_t seed) {
    return mc_impl(hx, hy, op, n, seed, true);
}

CompareResult compare(const ResultDistribution& d, const Sample& s) {
    CompareResult r;
    r.d = ks_sup(d, s, true);
    r.alpha = kolmogorov_pvalue(r.d, static_cast<std::int64_t>(s.n()));
    r.dependent_sample = false;
    return r;
}

CompareResult compare(const ResultDistribution& d, const PairwiseResult& p) {
    CompareResult r = compare(d, p.sample);
    r.dependent_sample = true;
    return r;
}

namespace serial_ref {

PairwiseResult pairwise_combine(const Sample& sx, const Sample& sy, Op op, std::int64_t cap) {
    return pairwise_impl(sx, sy, op, cap, false);
}

Sample mc_sample(const ReliableHistogram& hx, const ReliableHistogram& hy, Op op,
                 std::int64_t n, std::uint64_t seed) {
    return mc_impl(hx, hy, op, n, seed, false);
}

CompareResult compare(const ResultDistribution& d, const Sample& s) {
    CompareResult r;
    r.d = ks_sup(d, s, false);
    r.alpha = kolmogorov_pvalue(r.d, static_cast<std::int64_t>(s.n()));
    r.dependent_sample = false;
    return r;
}

} // namespace serial_ref

} // namespace histarith
