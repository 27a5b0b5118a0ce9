#include "oracles/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace testor {

using histarith::Op;
using histarith::Rect;

double grid_cdf(Op op, const Rect& r, double z) {
    const double a = r.ax, A = r.bx, b = r.ay, B = r.by;
    if ((op == Op::mul || op == Op::div) && z <= 0.0)
        return 0.0; // positive supports: op(X,Y) > 0 everywhere

    // Column height: measure in y of {y in [b,B] : op(x,y) <= z}.
    auto h = [&](double x) -> double {
        switch (op) {
        case Op::add: return std::clamp(z - x, b, B) - b;
        case Op::sub: return B - std::clamp(x - z, b, B);
        case Op::mul: return std::clamp(z / x, b, B) - b;
        default:      return std::clamp(z * x, b, B) - b; // div: y/x <= z
        }
    };

    // Split columns where the clamp saturates; h is smooth between cuts.
    std::vector<double> cuts{a, A};
    auto push = [&](double x) {
        if (x > a && x < A) cuts.push_back(x);
    };
    switch (op) {
    case Op::add: push(z - B); push(z - b); break;
    case Op::sub: push(z + b); push(z + B); break;
    case Op::mul: push(z / B); push(z / b); break;
    default:      push(b / z); push(B / z); break;
    }
    std::sort(cuts.begin(), cuts.end());

    // h is piecewise linear for add/sub/div (Simpson exact); mul's z/x piece
    // needs dense panels for the quartic error term.
    const int total_columns = op == Op::mul ? 20000 : 2000;

    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (!(hi > lo)) continue;
        const int m = std::max(
            16, static_cast<int>(std::ceil(total_columns * (hi - lo) / (A - a))));
        const double step = (hi - lo) / m;
        double acc = 0.0;
        for (int k = 0; k < m; ++k) {
            const double x0 = lo + k * step;
            const double x1 = (k + 1 == m) ? hi : x0 + step;
            acc += (h(x0) + 4.0 * h(0.5 * (x0 + x1)) + h(x1)) * ((x1 - x0) / 6.0);
        }
        integral += acc;
    }
    return integral / ((A - a) * (B - b));
}

} // namespace testor
