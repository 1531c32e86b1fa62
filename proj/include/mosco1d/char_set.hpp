#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mosco1d/interval.hpp"

namespace mosco1d {

// Retained mass per unit cell [k, k+1]: eps_k = lead * ratio^|k|, with
// optional per-cell overrides. lead/ratio give closed-form tails on
// unbounded intervals.
struct CellMasses {
    double lead = 0.25;
    double ratio = 0.5;
    std::map<int, double> overrides;

    double at(int k) const;
    bool operator==(const CellMasses& o) const
    {
        return lead == o.lead && ratio == o.ratio && overrides == o.overrides;
    }
};

inline constexpr int kDefaultCantorDepth = 24;

// Open dense subset of the cells of I whose complement in each cell is a
// Smith-Volterra-Cantor set. Generation j removes a centred gap of length
// eps * 2^(-2j-1) from each of the 2^j surviving pieces; the gaps form the set.
struct FatCantor {
    CellMasses masses;
    int depth = kDefaultCantorDepth;
    int explicit_cells = 64; // |k| beyond this handled by closed-form sums

    bool operator==(const FatCantor& o) const { return masses == o.masses && depth == o.depth; }
};

struct OpenSpan {
    double lo, hi;
};

struct InclusionViolation {
    double c, d;
    double excess;
};

// A ds-a.e. class G of I with positive measure in every subinterval.
// Normal form: optional fat-Cantor component, a finite union of open
// intervals, and periodic windows (k - h, k + h), k in Z.
class CharacteristicSet {
public:
    static CharacteristicSet full(const Interval& I);
    // open = false marks the members as closed intervals; the measure is
    // unchanged but the set no longer counts as open.
    static CharacteristicSet interval_union(const Interval& I, std::vector<OpenSpan> spans,
                                            bool open = true);
    static CharacteristicSet fat_cantor(const Interval& I, const CellMasses& masses,
                                        int depth = kDefaultCantorDepth);

    friend CharacteristicSet set_union(const CharacteristicSet& A, const CharacteristicSet& B);
    friend CharacteristicSet comb_sequence(const CharacteristicSet& G, int n);

    const Interval& interval() const { return interval_; }
    // Same set over the same interval with a different base point.
    CharacteristicSet rebased(double e) const;
    bool is_open() const { return open_; }
    bool is_full() const;
    double tolerance() const { return tolerance_; }

    // ds(G cap (c,d)) for c < d in the closure of I; may be +inf.
    double measure(double c, double d) const;
    // Same, but fails with ToleranceUnreachable if the oracle cannot
    // guarantee the requested accuracy.
    double measure(double c, double d, double requested_tolerance) const;
    // ds(G^c cap (c,d)).
    double complement_measure(double c, double d) const;

    // Ordered structural endpoints inside (lo, hi): interval ends, window
    // ends and fat-Cantor gap ends of the first `cantor_generations`.
    std::vector<double> breakpoints(double lo, double hi, int cantor_generations = 3) const;

    // Sampled admissibility test on [lo, hi] (clipped to I); returns the
    // first null subinterval found.
    std::optional<OpenSpan> find_null_interval(double lo, double hi,
                                               double min_length = 0x1p-20) const;

    const std::optional<FatCantor>& cantor() const { return cantor_; }
    const std::vector<OpenSpan>& spans() const { return spans_; }
    double window_half_width() const { return half_width_; }

    std::string describe() const;

private:
    explicit CharacteristicSet(const Interval& I) : interval_(I) {}
    void finalize();

    double cantor_measure(double c, double d) const;
    double cantor_cell_measure(int k, double c, double d) const;
    double span_measure(double c, double d) const;
    double windows_measure(double c, double d) const;
    double overlap_measure(double c, double d) const;
    bool covers_side(Side side) const;

    Interval interval_;
    std::optional<FatCantor> cantor_;
    std::vector<OpenSpan> spans_;
    double half_width_ = 0.0; // 0: no windows; >= 0.5: windows cover R
    bool open_ = true;
    bool full_ = false;
    double tolerance_ = 0.0;
};

// G_n = G cup U_k (k - 1/n, k + 1/n)
CharacteristicSet comb_sequence(const CharacteristicSet& G, int n);
// U_n = G cup (-n, n); requires an open G.
CharacteristicSet window_sequence(const CharacteristicSet& G, int n);

// ds((A \ B) cap (c,d)) for finite c < d.
double measure_difference(const CharacteristicSet& A, const CharacteristicSet& B, double c, double d);

// Sampled check that A is contained in B (ds-a.e.) on [lo, hi].
std::optional<InclusionViolation> find_inclusion_violation(const CharacteristicSet& A,
                                                           const CharacteristicSet& B, double lo,
                                                           double hi, double tol);

} // namespace mosco1d
