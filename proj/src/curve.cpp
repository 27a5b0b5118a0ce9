#include "histarith/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace histarith {

double BasisCoeffs::eval(double z) const {
    double v = c1 + z * (cz + z * czz);
    // ln z / 1/z are computed only when their coefficients are nonzero, so
    // polynomial segments evaluate cleanly at z <= 0.
    if (has_log()) {
        const double l = std::log(z);
        v += clog * l + czlog * z * l;
    }
    if (has_inv()) {
        const double r = 1.0 / z;
        v += cinv * r + cinv2 * r * r;
    }
    return v;
}

std::size_t segment_index(const std::vector<double>& breakpoints, double z) {
    // Right-continuous: for z == z_i (interior) pick segment i.
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), z);
    std::size_t i = static_cast<std::size_t>(it - breakpoints.begin());
    if (i == 0)
        return 0;
    if (i >= breakpoints.size())
        return breakpoints.size() - 2;
    return i - 1;
}

double eval_curve(const PiecewiseAnalyticCurve& curve, double z) {
    if (std::isnan(z))
        throw std::invalid_argument("eval_curve: z is NaN");
    if (z < curve.breakpoints.front())
        return 0.0;
    if (z > curve.breakpoints.back())
        return curve.kind == CurveKind::cdf ? 1.0 : 0.0;
    return curve.segments[segment_index(curve.breakpoints, z)].eval(z);
}

PiecewiseAnalyticCurve derivative(const PiecewiseAnalyticCurve& curve) {
    if (curve.kind != CurveKind::cdf)
        throw std::invalid_argument("derivative: curve is not a CDF");
    PiecewiseAnalyticCurve out;
    out.kind = CurveKind::pdf;
    out.breakpoints = curve.breakpoints;
    out.segments.reserve(curve.segments.size());
    for (const BasisCoeffs& c : curve.segments) {
        if (c.cinv2 != 0)
            throw std::invalid_argument(
                "derivative: 1/z^2 term differentiates outside the basis");
        BasisCoeffs d;
        d.c1 = c.cz + c.czlog; // d/dz (z ln z) = ln z + 1
        d.cz = 2 * c.czz;
        d.clog = c.czlog;
        d.cinv = c.clog;
        d.cinv2 = -c.cinv;
        out.segments.push_back(d);
    }
    return out;
}

} // namespace histarith
