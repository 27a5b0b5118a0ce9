#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "histarith/binning.hpp"
#include "histarith/curve.hpp"
#include "histarith/errors.hpp"
#include "histarith/sample.hpp"

namespace histarith {

// div means Z = Y/X (the Y operand is the numerator).
enum class Op { add, sub, mul, div };

const char* op_name(Op op);
Op op_from_name(std::string_view name); // throws data_error on unknown names

double apply_op(Op op, double x, double y);

// One bin-pair cell [ax,bx] x [ay,by] with its joint mass and reliability.
struct Rect {
    double ax = 0, bx = 0; // X bin edges
    double ay = 0, by = 0; // Y bin edges
    double mass = 0;       // p_j * q_r
    double gamma = 0;      // gamma_j * gamma_r
};

struct IntervalProvenance {
    std::int64_t interval_index = 0;
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs; // (j, r) bin indices
    double gamma_product = 1.0;
};

struct ResultDistribution {
    Op op = Op::add;
    std::vector<Rect> rects; // (j,r)-lexicographic; empty when document-loaded
    PiecewiseAnalyticCurve cdf;
    PiecewiseAnalyticCurve pdf;
    std::pair<double, double> support{0, 0};
    std::vector<IntervalProvenance> provenance; // one entry per cdf interval
};

// Image interval [z_min, z_max] of op over the rectangle.
std::pair<double, double> op_image(Op op, const Rect& rect);

// CDF of op(X,Y) restricted to one rectangle with uniform marginals,
// normalized to rise 0 -> 1 across the rectangle's image. Breakpoints are the
// op's critical abscissae. mul/div demand strictly positive rectangles.
PiecewiseAnalyticCurve rect_cdf(Op op, const Rect& rect);

// Symbolic derivative of rect_cdf.
PiecewiseAnalyticCurve rect_pdf(Op op, const Rect& rect);

// Mass-weighted mixture over all bin-pair rectangles. Breakpoints are the
// deduplicated union of all per-rectangle critical abscissae; pdf is the
// symbolic derivative of the aggregated cdf; provenance lists, per interval,
// the (j,r) pairs whose image overlaps it and their reliability product.
ResultDistribution combine(const ReliableHistogram& hx, const ReliableHistogram& hy, Op op);

// integral of z^k * curve(z) dz over the curve's support; curve must be a
// PDF; k in 0..4 (k = 0 is the normalization integral).
double curve_moment(const PiecewiseAnalyticCurve& pdf_curve, int k);

// k in 1..4.
double moment(const ResultDistribution& d, int k);
double mean(const ResultDistribution& d);

// Draw n values: rectangle by mass, then uniform within each span. Requires a
// combine-built result (nonempty rects). Deterministic for a fixed seed and
// independent of thread count.
Sample sample_result(const ResultDistribution& d, std::int64_t n, std::uint64_t seed);

// Plain-loop reference implementations; outputs are bit-identical to the
// parallel versions above.
namespace serial_ref {
ResultDistribution combine(const ReliableHistogram& hx, const ReliableHistogram& hy, Op op);
Sample sample_result(const ResultDistribution& d, std::int64_t n, std::uint64_t seed);
} // namespace serial_ref

} // namespace histarith
