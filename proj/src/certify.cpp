#include "mosco1d/certify.hpp"
#include "mosco1d/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mosco1d {

CertifiedSum certify_series(const std::function<double(int)>& piece, const CertifyPolicy& policy)
{
    CertifiedSum out;
    double sum = 0.0;
    double prev = kInf;
    int run = 0;
    double run_ratio = 0.0;
    for (int k = 0; k <= policy.max_doublings; ++k) {
        const double v = piece(k);
        out.pieces = k + 1;
        if (std::isnan(v)) {
            // cut points exhausted; accept only if the series had already settled
            if (prev < policy.abs_tol * std::max(1.0, sum) * 1e3) {
                out.finite = true;
                out.value = sum;
                return out;
            }
            fail(ErrorCode::NotConverged,
                 "cut sequence exhausted after " + std::to_string(k) + " pieces with partial sum " +
                     format_extended(sum));
        }
        if (v < 0.0) fail(ErrorCode::NotConverged, "negative series piece");
        sum += v;
        if (!(sum <= policy.divergence_cap)) {
            out.value = kInf;
            return out;
        }
        if (k >= 1 && v < policy.abs_tol && prev < policy.abs_tol) {
            out.finite = true;
            out.value = sum;
            return out;
        }
        if (prev > 0.0 && std::isfinite(prev) && v / prev <= policy.ratio_max) {
            ++run;
            run_ratio = std::max(run_ratio, v / prev);
        } else {
            run = 0;
            run_ratio = 0.0;
        }
        if (run >= policy.ratio_run) {
            const double tail = v * run_ratio / (1.0 - run_ratio);
            if (tail < policy.abs_tol * std::max(1.0, sum)) {
                out.finite = true;
                out.value = sum + tail;
                return out;
            }
        }
        prev = v;
    }
    out.value = kInf;
    return out;
}

double doubling_cut(const Interval& I, Side side, double c, int k)
{
    if (k == 0) return c;
    const double end = I.endpoint(side);
    if (std::isfinite(end)) return end + (c - end) * std::ldexp(1.0, -k);
    const double step = std::ldexp(1.0, k) - 1.0;
    return side == Side::Lower ? c - step : c + step;
}

} // namespace mosco1d
