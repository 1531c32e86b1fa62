#pragma once

#include <functional>

namespace mosco1d::detail {

// Adaptive 31-point Gauss-Kronrod on [lo, hi] with relative tolerance
// rel_tol. Boost's error estimate carries an absolute floor of a few ulps
// that does not shrink with the interval, which makes its own driver bisect
// to full depth on short cells; that floor is accepted as converged here.
// Infinite ends go through Boost's mapped driver.
double integrate_gk(const std::function<double(double)>& f, double lo, double hi, double rel_tol, int max_depth);

} // namespace mosco1d::detail
