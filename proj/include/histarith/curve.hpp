#pragma once

#include <cstddef>
#include <vector>

namespace histarith {

enum class CurveKind { cdf, pdf };

// Coefficients over the basis {1, z, z^2, ln z, z ln z, 1/z, 1/z^2}.
// The basis is closed under the four arithmetic-result curve families and
// under differentiation (except 1/z^2, whose derivative leaves the basis).
struct BasisCoeffs {
    double c1 = 0, cz = 0, czz = 0, clog = 0, czlog = 0, cinv = 0, cinv2 = 0;

    double eval(double z) const;
    bool has_log() const { return clog != 0 || czlog != 0; }
    bool has_inv() const { return cinv != 0 || cinv2 != 0; }

    void add_scaled(const BasisCoeffs& o, double w) {
        c1 += w * o.c1;
        cz += w * o.cz;
        czz += w * o.czz;
        clog += w * o.clog;
        czlog += w * o.czlog;
        cinv += w * o.cinv;
        cinv2 += w * o.cinv2;
    }

    bool operator==(const BasisCoeffs&) const = default;
};

// A CDF or PDF stored as strictly increasing breakpoints z_0 < ... < z_B and
// one coefficient vector per interval [z_i, z_{i+1}). Right-continuous at
// interior breakpoints.
struct PiecewiseAnalyticCurve {
    CurveKind kind = CurveKind::cdf;
    std::vector<double> breakpoints;   // size B+1
    std::vector<BasisCoeffs> segments; // size B

    double front() const { return breakpoints.front(); }
    double back() const { return breakpoints.back(); }
};

// Below z_0: 0. Above z_B: 1 for a CDF, 0 for a PDF. At z_B the last segment
// is evaluated (the continuous limit). NaN input rejected.
double eval_curve(const PiecewiseAnalyticCurve& curve, double z);

// Segment-wise symbolic derivative of a CDF; same breakpoints, kind pdf.
// A nonzero 1/z^2 coefficient in the input is out of basis and rejected.
PiecewiseAnalyticCurve derivative(const PiecewiseAnalyticCurve& curve);

// Index of the segment whose interval contains z; breakpoints.size()-2 at
// z == z_B. Caller guarantees z within [z_0, z_B].
std::size_t segment_index(const std::vector<double>& breakpoints, double z);

} // namespace histarith
