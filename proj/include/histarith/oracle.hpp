#pragma once

#include <cstdint>

#include "histarith/arithmetic.hpp"
#include "histarith/binning.hpp"
#include "histarith/sample.hpp"

namespace histarith {

struct PairwiseResult {
    Sample sample; // all nx*ny ordered-pair results, sorted
    Op op = Op::add;
    std::int64_t nx = 0, ny = 0;
};

// Every ordered pair evaluated once. For div, any zero in sx is a hard error
// (the offending sorted indices are listed). Products larger than cap are
// refused with a pointer at mc_sample.
PairwiseResult pairwise_combine(const Sample& sx, const Sample& sy, Op op,
                                std::int64_t cap = 100000000);

struct ProvenancedHistogram {
    ReliableHistogram histogram;
    // Per Z bin: product of gamma_j*gamma_r over the rectangles whose op
    // image overlaps the bin with positive measure.
    std::vector<double> provenance_gamma;
};

ProvenancedHistogram rebuild_z_histogram(const PairwiseResult& p,
                                         const ReliableHistogram& hx,
                                         const ReliableHistogram& hy,
                                         const BinningConfig& config);

// n independent draws: a bin by mass from each operand histogram, a uniform
// within each bin, then op. Deterministic per seed, thread-count independent.
Sample mc_sample(const ReliableHistogram& hx, const ReliableHistogram& hy, Op op,
                 std::int64_t n, std::uint64_t seed);

struct CompareResult {
    double d = 0;     // two-sided KS sup distance
    double alpha = 0; // kolmogorov_pvalue(d, sample size)
    // Pairwise samples share factors across pairs, so alpha's nominal level
    // is not exact; flagged, never hidden.
    bool dependent_sample = false;
};

CompareResult compare(const ResultDistribution& d, const Sample& s);
CompareResult compare(const ResultDistribution& d, const PairwiseResult& p);

namespace serial_ref {
PairwiseResult pairwise_combine(const Sample& sx, const Sample& sy, Op op,
                                std::int64_t cap = 100000000);
Sample mc_sample(const ReliableHistogram& hx, const ReliableHistogram& hy, Op op,
                 std::int64_t n, std::uint64_t seed);
CompareResult compare(const ResultDistribution& d, const Sample& s);
} // namespace serial_ref

} // namespace histarith
