#include "histarith/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "histarith/detail/rng.hpp"

namespace histarith {

const char* op_name(Op op) {
    switch (op) {
    case Op::add: return "add";
    case Op::sub: return "sub";
    case Op::mul: return "mul";
    case Op::div: return "div";
    }
    return "?";
}

Op op_from_name(std::string_view name) {
    if (name == "add") return Op::add;
    if (name == "sub") return Op::sub;
    if (name == "mul") return Op::mul;
    if (name == "div") return Op::div;
    throw data_error("unknown op '" + std::string(name) + "'");
}

double apply_op(Op op, double x, double y) {
    switch (op) {
    case Op::add: return x + y;
    case Op::sub: return x - y;
    case Op::mul: return x * y;
    case Op::div: return y / x;
    }
    return 0;
}

namespace {

void validate_rect(Op op, const Rect& r) {
    if (!(r.ax < r.bx) || !(r.ay < r.by))
        throw std::invalid_argument("malformed rectangle");
    if ((op == Op::mul || op == Op::div) && (r.ax <= 0.0 || r.ay <= 0.0))
        throw domain_error("unsupported support sign");
}

// The four critical abscissae of op over the rectangle, ascending.
struct Criticals {
    double z0, m1, m2, z3;
    bool x_side; // middle-plateau orientation: true when the X span binds
};

Criticals criticals_for(Op op, const Rect& r) {
    const double a = r.ax, A = r.bx, b = r.ay, B = r.by;
    Criticals c{};
    switch (op) {
    case Op::add:
        c.z0 = a + b;
        c.m1 = std::min(A + b, a + B);
        c.m2 = std::max(A + b, a + B);
        c.z3 = A + B;
        c.x_side = (A - a) <= (B - b);
        break;
    case Op::sub:
        c.z0 = a - B;
        c.m1 = std::min(A - B, a - b);
        c.m2 = std::max(A - B, a - b);
        c.z3 = A - b;
        c.x_side = (A - a) <= (B - b);
        break;
    case Op::mul:
        c.z0 = a * b;
        c.m1 = std::min(A * b, a * B);
        c.m2 = std::max(A * b, a * B);
        c.z3 = A * B;
        c.x_side = A * b <= a * B; // A/a <= B/b
        break;
    case Op::div:
        c.z0 = b / A;
        c.m1 = std::min(b / a, B / A);
        c.m2 = std::max(b / a, B / A);
        c.z3 = B / a;
        c.x_side = b / a <= B / A; // A/a <= B/b
        break;
    }
    return c;
}

// Cut-area coefficient families, already divided by the rectangle area. Each
// region's expression is the area below/above the cut curve between the
// critical abscissae; validated against grid integration to ~1e-12.
void region_coeffs(Op op, const Rect& r, const Criticals& c,
                   BasisCoeffs& low, BasisCoeffs& mid, BasisCoeffs& high) {
    const double a = r.ax, A = r.bx, b = r.ay, B = r.by;
    const double area = (A - a) * (B - b);
    switch (op) {
    case Op::add:
    case Op::sub: {
        const double s0 = c.z0;          // z at zero area
        const double s3 = c.z3;          // z at full area
        const double w = std::min(A - a, B - b);
        low.c1 = s0 * s0 / (2 * area);
        low.cz = -s0 / area;
        low.czz = 1 / (2 * area);
        mid.c1 = (w * w / 2 - w * c.m1) / area;
        mid.cz = w / area;
        high.c1 = 1 - s3 * s3 / (2 * area);
        high.cz = s3 / area;
        high.czz = -1 / (2 * area);
        break;
    }
    case Op::mul: {
        const double lab = std::log(a * b);
        const double lAB = std::log(A * B);
        low.c1 = a * b / area;
        low.cz = -(lab + 1) / area;
        low.czlog = 1 / area;
        if (c.x_side) { // X spans the thinner log-ratio: plateau slope ln(A/a)
            mid.c1 = -b * (A - a) / area;
            mid.cz = std::log(A / a) / area;
        } else {
            mid.c1 = -a * (B - b) / area;
            mid.cz = std::log(B / b) / area;
        }
        high.c1 = 1 - A * B / area;
        high.cz = (1 + lAB) / area;
        high.czlog = -1 / area;
        break;
    }
    case Op::div: {
        low.c1 = -A * b / area;
        low.cz = A * A / (2 * area);
        low.cinv = b * b / (2 * area);
        if (c.x_side) {
            mid.c1 = -b * (A - a) / area;
            mid.cz = (A * A - a * a) / (2 * area);
        } else {
            mid.c1 = A * (B - b) / area;
            mid.cinv = -(B * B - b * b) / (2 * area);
        }
        high.c1 = 1 + a * B / area;
        high.cz = -a * a / (2 * area);
        high.cinv = -B * B / (2 * area);
        break;
    }
    }
}

} // namespace

std::pair<double, double> op_image(Op op, const Rect& rect) {
    validate_rect(op, rect);
    const Criticals c = criticals_for(op, rect);
    return {c.z0, c.z3};
}

PiecewiseAnalyticCurve rect_cdf(Op op, const Rect& rect) {
    validate_rect(op, rect);
    const Criticals c = criticals_for(op, rect);
    BasisCoeffs low, mid, high;
    region_coeffs(op, rect, c, low, mid, high);
    PiecewiseAnalyticCurve out;
    out.kind = CurveKind::cdf;
    if (c.m1 < c.m2) {
        out.breakpoints = {c.z0, c.m1, c.m2, c.z3};
        out.segments = {low, mid, high};
    } else { // square image: the plateau collapses to a point
        out.breakpoints = {c.z0, c.m1, c.z3};
        out.segments = {low, high};
    }
    return out;
}

PiecewiseAnalyticCurve rect_pdf(Op op, const Rect& rect) {
    return derivative(rect_cdf(op, rect));
}

namespace {

std::vector<double> dedup_breakpoints(std::vector<double> zs) {
    std::sort(zs.begin(), zs.end());
    std::vector<double> out;
    out.reserve(zs.size());
    for (double z : zs) {
        if (out.empty() || z - out.back() > 1e-12 * std::max(1.0, std::fabs(z)))
            out.push_back(z);
    }
    return out;
}

ResultDistribution combine_impl(const ReliableHistogram& hx, const ReliableHistogram& hy,
                                Op op, bool parallel) {
    if (hx.bins.empty() || hy.bins.empty())
        throw data_error("combine: empty histogram");
    if (op == Op::mul && (hx.support_lo() <= 0.0 || hy.support_lo() <= 0.0))
        throw domain_error("product requires strictly positive operand supports");
    if (op == Op::div) {
        if (hx.support_lo() <= 0.0)
            throw domain_error("quotient requires strictly positive X support");
        if (hy.support_lo() <= 0.0)
            throw domain_error("quotient requires strictly positive Y support");
    }

    ResultDistribution d;
    d.op = op;
    const std::size_t nx = hx.bins.size(), ny = hy.bins.size();
    d.rects.reserve(nx * ny);
    for (std::size_t j = 0; j < nx; ++j) {
        for (std::size_t r = 0; r < ny; ++r) {
            Rect rc;
            rc.ax = hx.bins[j].lo;
            rc.bx = hx.bins[j].hi;
            rc.ay = hy.bins[r].lo;
            rc.by = hy.bins[r].hi;
            rc.mass = hx.mass(j) * hy.mass(r);
            rc.gamma = hx.bins[j].gamma * hy.bins[r].gamma;
            d.rects.push_back(rc);
        }
    }

    std::vector<PiecewiseAnalyticCurve> rcurves(d.rects.size());
    std::vector<double> all_criticals;
    all_criticals.reserve(d.rects.size() * 4);
    for (std::size_t i = 0; i < d.rects.size(); ++i) {
        rcurves[i] = rect_cdf(op, d.rects[i]);
        for (double z : rcurves[i].breakpoints) all_criticals.push_back(z);
    }

    std::vector<double> bp = dedup_breakpoints(std::move(all_criticals));
    const std::size_t nseg = bp.size() - 1;
    std::vector<BasisCoeffs> segs(nseg);
    std::vector<IntervalProvenance> prov(nseg);

    auto fill_interval = [&](std::size_t i) {
        const double m = 0.5 * (bp[i] + bp[i + 1]);
        BasisCoeffs acc;
        IntervalProvenance& p = prov[i];
        p.interval_index = static_cast<std::int64_t>(i);
        p.gamma_product = 1.0;
        for (std::size_t t = 0; t < d.rects.size(); ++t) {
            const PiecewiseAnalyticCurve& rc = rcurves[t];
            const double w = d.rects[t].mass;
            if (m >= rc.back()) {
                acc.c1 += w; // rectangle entirely below: contributes its full mass
            } else if (m > rc.front()) {
                acc.add_scaled(rc.segments[segment_index(rc.breakpoints, m)], w);
            }
            // Provenance: image interval overlaps (positive measure).
            if (rc.front() < bp[i + 1] && rc.back() > bp[i]) {
                p.pairs.emplace_back(static_cast<std::int32_t>(t / ny),
                                     static_cast<std::int32_t>(t % ny));
                p.gamma_product *= d.rects[t].gamma;
            }
        }
        segs[i] = acc;
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nseg); ++i)
            fill_interval(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < nseg; ++i) fill_interval(i);
    }

    d.cdf.kind = CurveKind::cdf;
    d.cdf.breakpoints = std::move(bp);
    d.cdf.segments = std::move(segs);
    d.pdf = derivative(d.cdf);
    d.support = {d.cdf.breakpoints.front(), d.cdf.breakpoints.back()};
    d.provenance = std::move(prov);
    return d;
}

// Antiderivative of z^k * basis(z) at z; log/reciprocal terms only touched
// when their coefficients are nonzero.
double moment_antiderivative(const BasisCoeffs& c, int k, double z) {
    const double zk1 = std::pow(z, k + 1);
    double v = c.c1 * zk1 / (k + 1) + c.cz * zk1 * z / (k + 2) +
               c.czz * zk1 * z * z / (k + 3);
    if (c.clog != 0 || c.czlog != 0) {
        const double l = std::log(z);
        v += c.clog * zk1 * ((k + 1) * l - 1) / ((k + 1.0) * (k + 1.0));
        v += c.czlog * zk1 * z * ((k + 2) * l - 1) / ((k + 2.0) * (k + 2.0));
    }
    if (c.cinv != 0) {
        v += k >= 1 ? c.cinv * std::pow(z, k) / k : c.cinv * std::log(z);
    }
    if (c.cinv2 != 0) {
        if (k >= 2)
            v += c.cinv2 * std::pow(z, k - 1) / (k - 1);
        else if (k == 1)
            v += c.cinv2 * std::log(z);
        else
            v += -c.cinv2 / z;
    }
    return v;
}

double adaptive_simpson(const BasisCoeffs& c, int k, double lo, double hi,
                        double fl, double fm, double fh, double whole, int depth) {
    const double m = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
    const double flm = std::pow(lm, k) * c.eval(lm);
    const double frm = std::pow(rm, k) * c.eval(rm);
    const double left = (m - lo) / 6 * (fl + 4 * flm + fm);
    const double right = (hi - m) / 6 * (fm + 4 * frm + fh);
    if (depth <= 0 || std::fabs(left + right - whole) < 1e-10)
        return left + right + (left + right - whole) / 15;
    return adaptive_simpson(c, k, lo, m, fl, flm, fm, left, depth - 1) +
           adaptive_simpson(c, k, m, hi, fm, frm, fh, right, depth - 1);
}

} // namespace

ResultDistribution combine(const ReliableHistogram& hx, const ReliableHistogram& hy, Op op) {
    return combine_impl(hx, hy, op, true);
}

namespace serial_ref {
ResultDistribution combine(const ReliableHistogram& hx, const ReliableHistogram& hy, Op op) {
    return combine_impl(hx, hy, op, false);
}
} // namespace serial_ref

double curve_moment(const PiecewiseAnalyticCurve& pdf_curve, int k) {
    if (pdf_curve.kind != CurveKind::pdf)
        throw std::invalid_argument("curve_moment: curve is not a PDF");
    if (k < 0 || k > 4)
        throw std::invalid_argument("curve_moment: k must be in 0..4");
    double total = 0;
    for (std::size_t i = 0; i + 1 < pdf_curve.breakpoints.size(); ++i) {
        const double lo = pdf_curve.breakpoints[i], hi = pdf_curve.breakpoints[i + 1];
        const BasisCoeffs& c = pdf_curve.segments[i];
        const bool singular = (c.clog != 0 || c.czlog != 0 || c.cinv != 0 || c.cinv2 != 0);
        if (singular && lo < 1e-6) {
            // Closed form is ill-conditioned against the log/pole at 0.
            const double m = 0.5 * (lo + hi);
            const double fl = std::pow(lo, k) * c.eval(lo);
            const double fm = std::pow(m, k) * c.eval(m);
            const double fh = std::pow(hi, k) * c.eval(hi);
            const double whole = (hi - lo) / 6 * (fl + 4 * fm + fh);
            total += adaptive_simpson(c, k, lo, hi, fl, fm, fh, whole, 40);
        } else {
            total += moment_antiderivative(c, k, hi) - moment_antiderivative(c, k, lo);
        }
    }
    return total;
}

double moment(const ResultDistribution& d, int k) {
    if (k < 1 || k > 4)
        throw std::invalid_argument("moment: k must be in 1..4");
    return curve_moment(d.pdf, k);
}

double mean(const ResultDistribution& d) { return moment(d, 1); }

namespace {

Sample sample_result_impl(const ResultDistribution& d, std::int64_t n,
                          std::uint64_t seed, bool parallel) {
    if (n < 1)
        throw std::invalid_argument("sample_result: n must be >= 1");
    if (d.rects.empty())
        throw data_error("result carries no rectangles; sampling requires a combine-built result");
    std::vector<double> prefix(d.rects.size());
    double cum = 0;
    for (std::size_t i = 0; i < d.rects.size(); ++i) {
        cum += d.rects[i].mass;
        prefix[i] = cum;
    }
    const double total = prefix.back();
    const Op op = d.op;
    std::vector<double> out(static_cast<std::size_t>(n));

    auto draw = [&](std::int64_t i) {
        detail::DrawRng rng(seed, static_cast<std::uint64_t>(i));
        const double u = rng.uniform01() * total;
        std::size_t idx = static_cast<std::size_t>(
            std::upper_bound(prefix.begin(), prefix.end(), u) - prefix.begin());
        if (idx >= d.rects.size()) idx = d.rects.size() - 1;
        const Rect& rc = d.rects[idx];
        const double x = rc.ax + rng.uniform01() * (rc.bx - rc.ax);
        const double y = rc.ay + rng.uniform01() * (rc.by - rc.ay);
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

} // namespace

Sample sample_result(const ResultDistribution& d, std::int64_t n, std::uint64_t seed) {
    return sample_result_impl(d, n, seed, true);
}

namespace serial_ref {
Sample sample_result(const ResultDistribution& d, std::int64_t n, std::uint64_t seed) {
    return sample_result_impl(d, n, seed, false);
}
} // namespace serial_ref

} // namespace histarith
