#include "mosco1d/bijection.hpp"
#include "mosco1d/error.hpp"

#include <algorithm>
#include <cmath>

namespace mosco1d {

namespace {

constexpr int kSamples = 4096;

bool near_zero_or_one(double v, double tol) { return std::fabs(v) <= tol || std::fabs(v - 1.0) <= tol; }

// ratio of increments over small cells must be 0 or 1 for smooth densities
bool sampled_increment_ratio(const ScaleFunction& st, const ScaleFunction& s, double lo, double hi)
{
    const double h = (hi - lo) / kSamples;
    for (int i = 0; i < kSamples; ++i) {
        const double c = lo + h * i, d = c + h;
        const double ds = s.increment(c, d);
        if (!(ds > 0.0)) return false;
        if (!near_zero_or_one(st.increment(c, d) / ds, 1e-3)) return false;
    }
    return true;
}

} // namespace

std::pair<double, double> sampling_window(const Interval& I, double radius)
{
    return {std::max(I.a(), I.e() - radius), std::min(I.b(), I.e() + radius)};
}

ScaleFunction scale_from_set(const CharacteristicSet& G) { return ScaleFunction::from_set(G); }

ScaleFunction scale_from_set(const CharacteristicSet& G, double e)
{
    return ScaleFunction::from_set(G.rebased(e));
}

CharacteristicSet set_from_scale(const ScaleFunction& s)
{
    switch (s.kind()) {
    case DensityKind::SetIndicator: return *s.set();
    case DensityKind::Identity: return CharacteristicSet::full(s.interval());
    default: break;
    }
    fail(ErrorCode::UnsupportedRepresentation, "density of " + s.describe() + " is not an indicator");
}

bool is_admissible_scaling(const ScaleFunction& st, const ScaleFunction& s)
{
    if (st.interval() != s.interval()) return false;
    const auto [lo, hi] = sampling_window(s.interval());
    const DensityKind ks = s.kind(), kt = st.kind();
    const bool set_like_t = kt == DensityKind::Identity || kt == DensityKind::SetIndicator;
    if (ks == DensityKind::Identity) {
        if (set_like_t) return true; // indicator sets are admissible by construction
        return sampled_increment_ratio(st, s, lo, hi);
    }
    if (ks == DensityKind::SetIndicator) {
        if (!set_like_t) return false;
        const CharacteristicSet A = set_from_scale(st);
        const CharacteristicSet& B = *s.set();
        const double tol = 10.0 * std::max(A.tolerance(), B.tolerance());
        try {
            return !find_inclusion_violation(A, B, lo, hi, tol).has_value();
        } catch (const Error& err) {
            if (err.code() == ErrorCode::UnsupportedRepresentation) return false;
            throw;
        }
    }
    if (kt == DensityKind::SetIndicator) {
        // 1_G / rho is {0,1}-valued only where rho = 1
        const double h = (hi - lo) / kSamples;
        for (int i = 0; i < kSamples; ++i)
            if (std::fabs(s.increment(lo + h * i, lo + h * (i + 1)) / h - 1.0) > 1e-3) return false;
        return true;
    }
    return sampled_increment_ratio(st, s, lo, hi);
}

} // namespace mosco1d
