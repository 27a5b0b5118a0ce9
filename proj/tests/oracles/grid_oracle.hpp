#pragma once

#include "histarith/arithmetic.hpp"

// Test-side oracle: P(op(X,Y) <= z) for X, Y uniform on a rectangle, done by
// column-wise numerical integration that never touches the closed forms under
// test. Columns are split at the exact abscissae where the clamped column
// height changes regime, so thin slivers cannot be missed.
namespace testor {

double grid_cdf(histarith::Op op, const histarith::Rect& rect, double z);

} // namespace testor
