#include "mosco1d/char_set.hpp"
#include "mosco1d/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mosco1d {

namespace {

constexpr double kRoundingFloor = 1e-13;
constexpr double kFarTailTarget = 1e-17;
constexpr int kMaxExplicitCells = 100000;

// G-measure of a generation-j piece [p, p+L] intersected with (c,d).
double piece_measure(double p, double L, int j, double c, double d, double eps, int depth)
{
    const double q = p + L;
    if (d <= p || c >= q) return 0.0;
    const double inside = eps * std::ldexp(1.0, -2 * j);
    if (c <= p && d >= q) return inside;
    if (j >= depth) return inside * (std::min(d, q) - std::max(c, p)) / L;
    const double r = eps * std::ldexp(1.0, -2 * j - 1);
    const double child = 0.5 * (L - r);
    const double g0 = p + child;
    const double g1 = q - child;
    const double gap = std::max(0.0, std::min(d, g1) - std::max(c, g0));
    return piece_measure(p, child, j + 1, c, d, eps, depth) + gap +
           piece_measure(g1, child, j + 1, c, d, eps, depth);
}

void gap_ends(double p, double L, int j, int gens, double eps, std::vector<double>& out)
{
    if (j >= gens) return;
    const double r = eps * std::ldexp(1.0, -2 * j - 1);
    const double child = 0.5 * (L - r);
    out.push_back(p + child);
    out.push_back(p + L - child);
    gap_ends(p, child, j + 1, gens, eps, out);
    gap_ends(p + L - child, child, j + 1, gens, eps, out);
}

// sum_{k=k1}^{k2} lead * ratio^k for 0 <= k1 <= k2 (k2 may be +inf)
double geometric_block(double lead, double ratio, double k1, double k2)
{
    if (k2 < k1 || ratio == 0.0) return (k1 <= 0.0 && k2 >= 0.0) ? lead : 0.0;
    const double head = std::pow(ratio, k1);
    const double tail = std::isinf(k2) ? 0.0 : std::pow(ratio, k2 + 1.0);
    return lead * (head - tail) / (1.0 - ratio);
}

int explicit_cell_count(const CellMasses& m)
{
    int K = 64;
    if (m.ratio > 0.0) {
        const double need = std::log(kFarTailTarget * (1.0 - m.ratio) / m.lead) / std::log(m.ratio);
        if (need > K) K = static_cast<int>(std::min<double>(std::ceil(need), kMaxExplicitCells));
    }
    for (const auto& [k, eps] : m.overrides) K = std::max(K, std::abs(k));
    return K;
}

} // namespace

double CellMasses::at(int k) const
{
    auto it = overrides.find(k);
    if (it != overrides.end()) return it->second;
    return lead * std::pow(ratio, std::abs(k));
}

CharacteristicSet CharacteristicSet::full(const Interval& I)
{
    CharacteristicSet G(I);
    G.full_ = true;
    G.finalize();
    return G;
}

CharacteristicSet CharacteristicSet::interval_union(const Interval& I, std::vector<OpenSpan> spans,
                                                    bool open)
{
    CharacteristicSet G(I);
    for (const auto& s : spans) {
        if (std::isnan(s.lo) || std::isnan(s.hi) || !(s.lo < s.hi))
            fail(ErrorCode::InvalidArgument, "interval_union member must satisfy lo < hi");
        const double lo = std::max(s.lo, I.a());
        const double hi = std::min(s.hi, I.b());
        if (lo < hi) G.spans_.push_back({lo, hi});
    }
    G.open_ = open;
    G.finalize();
    return G;
}

CharacteristicSet CharacteristicSet::fat_cantor(const Interval& I, const CellMasses& masses,
                                                int depth)
{
    if (depth < 1 || depth > 60) fail(ErrorCode::InvalidArgument, "fat_cantor depth must be in [1, 60]");
    for (Side side : {Side::Lower, Side::Upper}) {
        const double x = I.endpoint(side);
        if (std::isfinite(x) && x != std::floor(x))
            fail(ErrorCode::InvalidArgument, "fat_cantor needs integer or infinite interval endpoints");
    }
    if (!(masses.ratio >= 0.0 && masses.ratio < 1.0))
        fail(ErrorCode::InvalidMass, "cell mass ratio must lie in [0, 1) for a finite total");
    if (!(masses.lead > 0.0 && masses.lead < 1.0))
        fail(ErrorCode::InvalidMass, "cell mass lead must lie in (0, 1)");
    for (const auto& [k, eps] : masses.overrides)
        if (!(eps > 0.0 && eps < 1.0))
            fail(ErrorCode::InvalidMass, "cell mass for k=" + std::to_string(k) + " outside (0, 1)");
    const bool unbounded = !I.bounded(Side::Lower) || !I.bounded(Side::Upper);
    if (masses.ratio == 0.0 && unbounded)
        fail(ErrorCode::InvalidMass, "ratio 0 leaves cells with zero mass on an unbounded interval");
    if (!unbounded) {
        for (double k = I.a(); k < I.b(); k += 1.0) {
            const double eps = masses.at(static_cast<int>(k));
            if (!(eps > 0.0 && eps < 1.0))
                fail(ErrorCode::InvalidMass, "cell mass for k=" + std::to_string(int(k)) + " outside (0, 1)");
        }
    }
    CharacteristicSet G(I);
    FatCantor fc;
    fc.masses = masses;
    fc.depth = depth;
    fc.explicit_cells = explicit_cell_count(masses);
    G.cantor_ = fc;
    G.finalize();
    return G;
}

CharacteristicSet set_union(const CharacteristicSet& A, const CharacteristicSet& B)
{
    if (A.interval_ != B.interval_)
        fail(ErrorCode::InvalidArgument, "set union over different intervals");
    CharacteristicSet U(A.interval_);
    if (A.cantor_ && B.cantor_ && !(*A.cantor_ == *B.cantor_))
        fail(ErrorCode::UnsupportedRepresentation, "union of two distinct fat-Cantor lattices");
    U.cantor_ = A.cantor_ ? A.cantor_ : B.cantor_;
    U.spans_ = A.spans_;
    U.spans_.insert(U.spans_.end(), B.spans_.begin(), B.spans_.end());
    U.half_width_ = std::max(A.half_width_, B.half_width_);
    U.open_ = A.open_ && B.open_;
    U.full_ = A.full_ || B.full_;
    U.finalize();
    return U;
}

void CharacteristicSet::finalize()
{
    std::sort(spans_.begin(), spans_.end(),
              [](const OpenSpan& x, const OpenSpan& y) { return x.lo < y.lo; });
    std::vector<OpenSpan> merged;
    for (const auto& s : spans_) {
        if (!merged.empty() && s.lo < merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, s.hi);
        else
            merged.push_back(s);
    }
    spans_ = std::move(merged);
    if (half_width_ >= 0.5) full_ = true;
    // adjacent spans touching at single points cover I a.e.
    if (!spans_.empty() && spans_.front().lo <= interval_.a() && spans_.back().hi >= interval_.b()) {
        bool gapless = true;
        for (size_t i = 1; i < spans_.size(); ++i)
            if (spans_[i].lo > spans_[i - 1].hi) gapless = false;
        if (gapless) full_ = true;
    }
    if (full_) {
        cantor_.reset();
        spans_.clear();
        half_width_ = 0.0;
    }
    tolerance_ = kRoundingFloor;
    if (cantor_) {
        const auto& m = cantor_->masses;
        double eps_max = m.lead;
        for (const auto& [k, eps] : m.overrides) eps_max = std::max(eps_max, eps);
        const double pieces = 2.0 * (3.0 + static_cast<double>(spans_.size()));
        tolerance_ += pieces * eps_max * std::ldexp(1.0, -2 * cantor_->depth);
        if (m.ratio > 0.0)
            tolerance_ += 2.0 * geometric_block(m.lead, m.ratio, cantor_->explicit_cells + 1.0, kInf);
    }
}

bool CharacteristicSet::is_full() const { return full_; }

CharacteristicSet CharacteristicSet::rebased(double e) const
{
    CharacteristicSet G = *this;
    G.interval_ = Interval(interval_.a(), interval_.b(), e);
    return G;
}

double CharacteristicSet::cantor_cell_measure(int k, double c, double d) const
{
    const double lo = std::max(c, double(k));
    const double hi = std::min(d, double(k) + 1.0);
    if (!(lo < hi)) return 0.0;
    const double eps = cantor_->masses.at(k);
    return piece_measure(double(k), 1.0, 0, lo, hi, eps, cantor_->depth);
}

double CharacteristicSet::cantor_measure(double c, double d) const
{
    if (!cantor_) return 0.0;
    const auto& m = cantor_->masses;
    const double K = cantor_->explicit_cells;
    // cells [k, k+1] contained in the closure of I and meeting (c, d)
    double k_lo = std::isfinite(c) ? std::floor(c) : -kInf;
    double k_hi = std::isfinite(d) ? std::ceil(d) - 1.0 : kInf;
    if (interval_.bounded(Side::Lower)) k_lo = std::max(k_lo, interval_.a());
    if (interval_.bounded(Side::Upper)) k_hi = std::min(k_hi, interval_.b() - 1.0);
    if (k_hi < k_lo) return 0.0;

    double total = 0.0;
    const double e_lo = std::max(k_lo, -K);
    const double e_hi = std::min(k_hi, K);
    for (double k = e_lo; k <= e_hi; k += 1.0) total += cantor_cell_measure(static_cast<int>(k), c, d);

    // far cells: full cells exactly, partial cells by proportional fill.
    // cells are indexed by j = |k|; frac(j) is the covered fraction.
    auto far_sum = [&](double j1, double j2, auto frac) {
        if (j2 < j1) return 0.0;
        double sum = 0.0;
        double full_lo = j1, full_hi = j2;
        const double f1 = frac(j1);
        if (f1 < 1.0) {
            sum += m.lead * std::pow(m.ratio, j1) * f1;
            full_lo = j1 + 1.0;
        }
        if (std::isfinite(j2) && j2 >= full_lo) {
            const double f2 = frac(j2);
            if (f2 < 1.0) {
                sum += m.lead * std::pow(m.ratio, j2) * f2;
                full_hi = j2 - 1.0;
            }
        }
        return sum + geometric_block(m.lead, m.ratio, full_lo, full_hi);
    };
    auto overlap = [&](double lo, double hi) {
        return std::max(0.0, std::min(d, hi) - std::max(c, lo));
    };
    if (k_hi > K)
        total += far_sum(std::max(k_lo, K + 1.0), k_hi, [&](double j) { return overlap(j, j + 1.0); });
    if (k_lo < -K)
        total += far_sum(std::max(-k_hi, K + 1.0), -k_lo,
                         [&](double j) { return overlap(-j, -j + 1.0); });
    return total;
}

double CharacteristicSet::windows_measure(double c, double d) const
{
    const double h = half_width_;
    if (h <= 0.0 || !(c < d)) return 0.0;
    if (std::isinf(c) || std::isinf(d)) return kInf;
    auto w = [h](double x) {
        const double ax = std::fabs(x);
        const double k = std::floor(ax);
        const double f = ax - k;
        const double v = 2.0 * h * k + std::min(f, h) + std::max(0.0, f - (1.0 - h));
        return x < 0 ? -v : v;
    };
    return w(d) - w(c);
}

double CharacteristicSet::span_measure(double c, double d) const
{
    double total = windows_measure(c, d);
    for (const auto& s : spans_) {
        const double lo = std::max(c, s.lo);
        const double hi = std::min(d, s.hi);
        if (!(lo < hi)) continue;
        if (std::isinf(lo) || std::isinf(hi)) return kInf;
        total += (hi - lo) - windows_measure(lo, hi);
    }
    return total;
}

double CharacteristicSet::overlap_measure(double c, double d) const
{
    if (!cantor_ || (spans_.empty() && half_width_ <= 0.0)) return 0.0;
    const int K = cantor_->explicit_cells;
    double k_lo = std::isfinite(c) ? std::floor(c) : -double(K);
    double k_hi = std::isfinite(d) ? std::ceil(d) - 1.0 : double(K);
    k_lo = std::max(k_lo, -double(K));
    k_hi = std::min(k_hi, double(K));
    if (interval_.bounded(Side::Lower)) k_lo = std::max(k_lo, interval_.a());
    if (interval_.bounded(Side::Upper)) k_hi = std::min(k_hi, interval_.b() - 1.0);

    double total = 0.0;
    std::vector<OpenSpan> parts;
    for (double kk = k_lo; kk <= k_hi; kk += 1.0) {
        const int k = static_cast<int>(kk);
        const double lo = std::max(c, kk), hi = std::min(d, kk + 1.0);
        if (!(lo < hi)) continue;
        parts.clear();
        if (half_width_ > 0.0) {
            parts.push_back({kk, kk + half_width_});
            parts.push_back({kk + 1.0 - half_width_, kk + 1.0});
        }
        auto it = std::lower_bound(spans_.begin(), spans_.end(), lo,
                                   [](const OpenSpan& s, double x) { return s.hi <= x; });
        for (; it != spans_.end() && it->lo < hi; ++it) parts.push_back(*it);
        std::sort(parts.begin(), parts.end(),
                  [](const OpenSpan& x, const OpenSpan& y) { return x.lo < y.lo; });
        double cur_lo = 0, cur_hi = 0;
        bool open = false;
        auto flush = [&]() {
            if (!open) return;
            const double a = std::max(cur_lo, lo), b = std::min(cur_hi, hi);
            if (a < b) total += cantor_cell_measure(k, a, b);
        };
        for (const auto& p : parts) {
            if (open && p.lo <= cur_hi) {
                cur_hi = std::max(cur_hi, p.hi);
            } else {
                flush();
                cur_lo = p.lo;
                cur_hi = p.hi;
                open = true;
            }
        }
        flush();
    }
    return total;
}

double CharacteristicSet::measure(double c, double d) const
{
    if (std::isnan(c) || std::isnan(d)) fail(ErrorCode::InvalidArgument, "measure of NaN interval");
    if (!interval_.contains_closure(c) || !interval_.contains_closure(d))
        fail(ErrorCode::OutOfDomain, "measure interval (" + format_extended(c) + ", " +
                                         format_extended(d) + ") outside " + interval_.describe());
    if (c > d) fail(ErrorCode::InvalidArgument, "measure needs c <= d");
    if (c == d) return 0.0;
    if (full_) return d - c;
    const double p = span_measure(c, d);
    if (std::isinf(p)) return kInf;
    const double total = cantor_measure(c, d) + p - overlap_measure(c, d);
    return std::max(0.0, total);
}

double CharacteristicSet::measure(double c, double d, double requested_tolerance) const
{
    if (requested_tolerance < tolerance_) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "requested tolerance %.3g below oracle tolerance %.3g",
                      requested_tolerance, tolerance_);
        fail(ErrorCode::ToleranceUnreachable, buf);
    }
    return measure(c, d);
}

bool CharacteristicSet::covers_side(Side side) const
{
    if (full_) return true;
    if (spans_.empty()) return false;
    return side == Side::Lower ? spans_.front().lo <= interval_.a() : spans_.back().hi >= interval_.b();
}

double CharacteristicSet::complement_measure(double c, double d) const
{
    if (c == d) return 0.0;
    if (full_) return 0.0;
    if (std::isinf(c) && covers_side(Side::Lower)) c = std::min(spans_.front().hi, d);
    if (std::isinf(d) && covers_side(Side::Upper)) d = std::max(spans_.back().lo, c);
    if (!(c < d)) return 0.0;
    if (std::isinf(c) || std::isinf(d)) return kInf;
    return std::max(0.0, (d - c) - measure(c, d));
}

std::vector<double> CharacteristicSet::breakpoints(double lo, double hi, int cantor_generations) const
{
    std::vector<double> out;
    lo = std::max(lo, interval_.a());
    hi = std::min(hi, interval_.b());
    if (!(lo < hi) || full_) return out;
    for (const auto& s : spans_) {
        out.push_back(s.lo);
        out.push_back(s.hi);
    }
    if (half_width_ > 0.0 && std::isfinite(lo) && std::isfinite(hi)) {
        for (double k = std::floor(lo); k <= std::ceil(hi); k += 1.0) {
            out.push_back(k - half_width_);
            out.push_back(k + half_width_);
        }
    }
    if (cantor_ && cantor_generations > 0 && std::isfinite(lo) && std::isfinite(hi)) {
        for (double k = std::floor(lo); k < hi; k += 1.0) {
            if (interval_.bounded(Side::Lower) && k < interval_.a()) continue;
            if (interval_.bounded(Side::Upper) && k + 1.0 > interval_.b()) continue;
            const double eps = cantor_->masses.at(static_cast<int>(k));
            gap_ends(k, 1.0, 0, std::min(cantor_generations, cantor_->depth), eps, out);
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [&](double x) { return !(x > lo && x < hi); }),
              out.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<OpenSpan> CharacteristicSet::find_null_interval(double lo, double hi,
                                                              double min_length) const
{
    lo = std::max(lo, interval_.a());
    hi = std::min(hi, interval_.b());
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        fail(ErrorCode::InvalidArgument, "admissibility window must be a finite subinterval of I");
    constexpr int kPositions = 64;
    for (double len = hi - lo; len >= min_length; len *= 0.5) {
        for (int i = 0; i < kPositions; ++i) {
            const double c = lo + (hi - lo - len) * i / (kPositions - 1);
            const double d = std::min(c + len, hi);
            if (!(c < d)) continue;
            if (!(measure(c, d) > 0.0)) return OpenSpan{c, d};
        }
    }
    return std::nullopt;
}

std::string CharacteristicSet::describe() const
{
    if (full_) return "full";
    std::ostringstream os;
    os.precision(12);
    const char* sep = "";
    if (cantor_) {
        os << "fat_cantor(lead=" << cantor_->masses.lead << ", ratio=" << cantor_->masses.ratio;
        if (!cantor_->masses.overrides.empty()) os << ", overrides=" << cantor_->masses.overrides.size();
        os << ", depth=" << cantor_->depth << ")";
        sep = " + ";
    }
    if (half_width_ > 0.0) {
        os << sep << "windows(h=" << half_width_ << ")";
        sep = " + ";
    }
    if (!spans_.empty()) {
        os << sep << "intervals[";
        for (size_t i = 0; i < spans_.size(); ++i)
            os << (i ? ", " : "") << "(" << format_extended(spans_[i].lo) << ", "
               << format_extended(spans_[i].hi) << ")";
        os << "]";
    }
    return os.str();
}

CharacteristicSet comb_sequence(const CharacteristicSet& G, int n)
{
    if (n < 1) fail(ErrorCode::InvalidArgument, "comb index must be >= 1");
    CharacteristicSet W(G.interval());
    W.half_width_ = 1.0 / n;
    W.finalize();
    return set_union(G, W);
}

CharacteristicSet window_sequence(const CharacteristicSet& G, int n)
{
    if (n < 1) fail(ErrorCode::InvalidArgument, "window index must be >= 1");
    if (!G.is_open()) fail(ErrorCode::RequiresOpenSet, "window sequence needs an open set, got " + G.describe());
    return set_union(G, CharacteristicSet::interval_union(G.interval(), {{-double(n), double(n)}}, true));
}

double measure_difference(const CharacteristicSet& A, const CharacteristicSet& B, double c, double d)
{
    if (!std::isfinite(c) || !std::isfinite(d))
        fail(ErrorCode::UnsupportedRepresentation, "set difference measured on an unbounded interval");
    const CharacteristicSet U = set_union(A, B);
    return std::max(0.0, U.measure(c, d) - B.measure(c, d));
}

std::optional<InclusionViolation> find_inclusion_violation(const CharacteristicSet& A,
                                                           const CharacteristicSet& B, double lo,
                                                           double hi, double tol)
{
    lo = std::max(lo, A.interval().a());
    hi = std::min(hi, A.interval().b());
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        fail(ErrorCode::InvalidArgument, "inclusion window must be a finite subinterval of I");
    const CharacteristicSet U = set_union(A, B);
    constexpr int kPositions = 32;
    for (double len = hi - lo; len >= 0x1p-12; len *= 0.5) {
        for (int i = 0; i < kPositions; ++i) {
            const double c = lo + (hi - lo - len) * i / (kPositions - 1);
            const double d = std::min(c + len, hi);
            if (!(c < d)) continue;
            const double excess = U.measure(c, d) - B.measure(c, d);
            if (excess > tol) return InclusionViolation{c, d, excess};
        }
    }
    return std::nullopt;
}

} // namespace mosco1d
