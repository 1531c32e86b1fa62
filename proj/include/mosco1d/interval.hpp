#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace mosco1d {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Side { Lower, Upper };

const char* to_string(Side side);

// Open state interval (a, b) with a base point e, a < e < b.
// Endpoints may be infinite.
class Interval {
public:
    Interval(double a, double b, double e);

    static Interval real_line() { return Interval(-kInf, kInf, 0.0); }

    double a() const { return a_; }
    double b() const { return b_; }
    double e() const { return e_; }

    double endpoint(Side side) const { return side == Side::Lower ? a_ : b_; }
    bool bounded(Side side) const { return std::isfinite(endpoint(side)); }

    bool contains(double x) const { return x > a_ && x < b_; }
    bool contains_closure(double x) const { return x >= a_ && x <= b_; }

    bool operator==(const Interval& o) const { return a_ == o.a_ && b_ == o.b_ && e_ == o.e_; }
    bool operator!=(const Interval& o) const { return !(*this == o); }

    std::string describe() const;

private:
    double a_, b_, e_;
};

std::string format_extended(double x);

} // namespace mosco1d
