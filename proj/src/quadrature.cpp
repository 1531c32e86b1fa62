#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mosco1d::detail {

namespace {

using GK31 = boost::math::quadrature::gauss_kronrod<double, 31>;

double bisect(const std::function<double(double)>& f, double lo, double hi, double abs_tol, int depth)
{
    double err = 0.0, L1 = 0.0;
    const double v = GK31::integrate(f, lo, hi, 0, 0.0, &err, &L1);
    if (depth == 0 || err <= std::max(abs_tol, 16.0 * std::numeric_limits<double>::epsilon())) return v;
    const double mid = 0.5 * (lo + hi);
    return bisect(f, lo, mid, 0.5 * abs_tol, depth - 1) + bisect(f, mid, hi, 0.5 * abs_tol, depth - 1);
}

} // namespace

double integrate_gk(const std::function<double(double)>& f, double lo, double hi, double rel_tol, int max_depth)
{
    if (!(lo < hi)) return 0.0;
    double err = 0.0, L1 = 0.0;
    if (!std::isfinite(lo) || !std::isfinite(hi))
        return GK31::integrate(f, lo, hi, static_cast<unsigned>(max_depth), rel_tol, &err);
    GK31::integrate(f, lo, hi, 0, 0.0, &err, &L1);
    return bisect(f, lo, hi, rel_tol * L1, max_depth);
}

} // namespace mosco1d::detail
