#pragma once

#include <functional>

#include "mosco1d/interval.hpp"

namespace mosco1d {

// Budget for deciding whether a series of nonnegative pieces converges.
// Infinite: partial sum above divergence_cap, or still growing by more than
// abs_tol after max_doublings pieces. Finite: two successive pieces below
// abs_tol, or a sustained geometric decay whose extrapolated tail is below
// abs_tol.
struct CertifyPolicy {
    double divergence_cap = 1e9;
    int max_doublings = 60;
    double abs_tol = 1e-12;
    double ratio_max = 0.95;
    int ratio_run = 6;
};

struct CertifiedSum {
    bool finite = false;
    double value = 0.0; // +inf when not finite
    int pieces = 0;
};

// piece(k) is the k-th contribution, k = 0, 1, ...; it may return +inf, or
// NaN when the cut sequence is exhausted (finite endpoint reached in
// floating point).
CertifiedSum certify_series(const std::function<double(int)>& piece, const CertifyPolicy& policy = {});

// Cut points x_0 = c, x_1, ... moving from c towards the endpoint of I on
// `side`: geometric towards a finite endpoint, doubling distances otherwise.
double doubling_cut(const Interval& I, Side side, double c, int k);

} // namespace mosco1d
