// Times the parallel kernels against their serial references and verifies
// that both produce bit-identical outputs.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "histarith/arithmetic.hpp"
#include "histarith/binning.hpp"
#include "histarith/detail/rng.hpp"
#include "histarith/oracle.hpp"

using namespace histarith;

namespace {

double now() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

Sample synthetic_sample(std::size_t n, std::uint64_t seed, double lo, double span) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        detail::DrawRng rng(seed, i);
        const double u = rng.uniform01();
        const double w = rng.uniform01();
        v[i] = lo + span * (0.6 * u + 0.4 * w); // triangular-ish, nontrivial bins
    }
    return Sample::from_values(std::move(v));
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

bool curves_equal(const PiecewiseAnalyticCurve& a, const PiecewiseAnalyticCurve& b) {
    if (!bits_equal(a.breakpoints, b.breakpoints)) return false;
    if (a.segments.size() != b.segments.size()) return false;
    return a.segments.empty() ||
           std::memcmp(a.segments.data(), b.segments.data(),
                       a.segments.size() * sizeof(BasisCoeffs)) == 0;
}

void report(const char* name, double ts, double tp, bool identical) {
    std::printf("%-18s %10.3fs %11.3fs %8.2fx %s\n", name, ts, tp,
                ts / (tp > 0 ? tp : 1e-12), identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel paths run serially\n\n");
#endif
    std::printf("%-18s %11s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    bool all_ok = true;

    // pairwise_combine: 2000 x 2000 = 4e6 pair evaluations plus sort
    Sample sx = synthetic_sample(2000, 11, 1.0, 3.0);
    Sample sy = synthetic_sample(2000, 12, 2.0, 4.0);
    double t0 = now();
    PairwiseResult ps = serial_ref::pairwise_combine(sx, sy, Op::mul);
    double t1 = now();
    PairwiseResult pp = pairwise_combine(sx, sy, Op::mul);
    double t2 = now();
    bool ok = bits_equal(ps.sample.values(), pp.sample.values());
    report("pairwise_combine", t1 - t0, t2 - t1, ok);
    all_ok &= ok;

    // combine: dense histograms drive many rectangle curves per interval
    BinningConfig config;
    Sample bx = synthetic_sample(60000, 21, 1.0, 3.0);
    Sample by = synthetic_sample(60000, 22, 2.0, 4.0);
    ReliableHistogram hx = build_histogram(bx, config);
    ReliableHistogram hy = build_histogram(by, config);
    std::printf("  (operand bins: %zu x %zu)\n", hx.bins.size(), hy.bins.size());
    t0 = now();
    ResultDistribution ds = serial_ref::combine(hx, hy, Op::mul);
    t1 = now();
    ResultDistribution dp = combine(hx, hy, Op::mul);
    t2 = now();
    ok = curves_equal(ds.cdf, dp.cdf) && curves_equal(ds.pdf, dp.pdf);
    report("combine", t1 - t0, t2 - t1, ok);
    all_ok &= ok;

    // mc_sample: 1e7 counter-indexed draws plus sort
    t0 = now();
    Sample ms = serial_ref::mc_sample(hx, hy, Op::mul, 10000000, 7);
    t1 = now();
    Sample mp = mc_sample(hx, hy, Op::mul, 10000000, 7);
    t2 = now();
    ok = bits_equal(ms.values(), mp.values());
    report("mc_sample", t1 - t0, t2 - t1, ok);
    all_ok &= ok;

    // compare: KS sweep of the 4e6-point pairwise sample against the result
    t0 = now();
    CompareResult cs = serial_ref::compare(dp, ps.sample);
    t1 = now();
    CompareResult cp = compare(dp, pp.sample);
    t2 = now();
    ok = std::memcmp(&cs.d, &cp.d, sizeof cs.d) == 0 &&
         std::memcmp(&cs.alpha, &cp.alpha, sizeof cs.alpha) == 0;
    report("compare", t1 - t0, t2 - t1, ok);
    all_ok &= ok;

    // sample_result: 1e7 draws from the combined distribution
    t0 = now();
    Sample rs = serial_ref::sample_result(dp, 10000000, 99);
    t1 = now();
    Sample rp = sample_result(dp, 10000000, 99);
    t2 = now();
    ok = bits_equal(rs.values(), rp.values());
    report("sample_result", t1 - t0, t2 - t1, ok);
    all_ok &= ok;

    if (!all_ok) {
        std::fprintf(stderr, "parallel/serial outputs differ\n");
        return 1;
    }
    return 0;
}
