#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mosco1d/char_set.hpp"
#include "mosco1d/interval.hpp"

namespace mosco1d {

enum class DensityKind { Identity, SetIndicator, PiecewiseSmooth, Composed };

const char* to_string(DensityKind kind);

// One smooth piece of a scale density on [lo, hi]. `primitive` is an
// optional closed-form antiderivative; `density` must be >= 0.
struct SmoothPiece {
    double lo, hi;
    std::function<double(double)> density;
    std::function<double(double)> primitive;
};

// Strictly increasing continuous s on I with s(e) = 0, stored through its
// density with respect to the natural coordinate.
class ScaleFunction {
public:
    static ScaleFunction identity(const Interval& I);
    static ScaleFunction from_set(const CharacteristicSet& G);
    static ScaleFunction piecewise_smooth(const Interval& I, std::string name, std::vector<SmoothPiece> pieces);
    static ScaleFunction linear(const Interval& I, double slope);
    // x + A sin x - A sin e, a smooth homeomorphism of R for |A| < 1
    static ScaleFunction sine_perturbed(const Interval& I, double amplitude);
    // outer o j^{-1} on the image interval j(I)
    static ScaleFunction composed(const ScaleFunction& outer, const ScaleFunction& j);

    const Interval& interval() const;
    DensityKind kind() const;
    // Underlying set for SetIndicator scales, nullptr otherwise.
    const CharacteristicSet* set() const;
    // For Composed scales: the outer scale and the homeomorphism.
    const ScaleFunction* outer() const;
    const ScaleFunction* homeomorphism() const;

    double eval(double x) const;
    // s(d) - s(c) for c <= d in the closure of I; endpoints give the limits.
    double increment(double c, double d) const;
    std::pair<double, double> limits() const;
    double limit(Side side) const;
    // x with s(x) = y for y strictly between the limits
    double inverse(double y) const;
    // Pointwise density, for PiecewiseSmooth and Identity scales.
    double density(double x) const;
    double tolerance() const;

    std::string describe() const;
    bool same_as(const ScaleFunction& other) const;

    struct Impl;

private:
    explicit ScaleFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

struct Atom {
    double at;
    double mass;
};

enum class SpeedKind { Density, Stieltjes, Pushforward };

// Fully supported Radon measure on I: absolutely continuous part plus atoms.
class SpeedMeasure {
public:
    static SpeedMeasure lebesgue(const Interval& I);
    static SpeedMeasure cauchy(const Interval& I);    // 1/(1+x^2)
    static SpeedMeasure gaussian(const Interval& I);  // exp(-x^2)
    static SpeedMeasure rational(const Interval& I, double p); // (1+|x|)^(-p)
    static SpeedMeasure density(const Interval& I, std::string name, std::function<double(double)> f,
                                std::function<double(double)> primitive = {});
    // dF(s(x)) with F = -(y - lo)^(-alpha) near lo = s(a+), (hi - y)^(-alpha)
    // near hi = s(b-), affine in between and F(0) = 0; needs finite limits.
    static SpeedMeasure stieltjes_F(const ScaleFunction& s, double alpha);
    // m o j^{-1} on j(I)
    static SpeedMeasure pushforward(const SpeedMeasure& m, const ScaleFunction& j);

    SpeedMeasure with_atoms(std::vector<Atom> atoms) const;

    const Interval& interval() const;
    SpeedKind kind() const;
    const std::vector<Atom>& atoms() const;

    // m((c,d)) for c <= d in the closure of I; +inf when divergent.
    double mass(double c, double d) const;
    double total_left() const;  // m((a, e])
    double total_right() const; // m((e, b))
    // F evaluated at a transformed coordinate, Stieltjes measures only.
    double stieltjes_profile(double y) const;
    double stieltjes_alpha() const;

    std::string describe() const;
    bool same_as(const SpeedMeasure& other) const;

    struct Impl;

private:
    explicit SpeedMeasure(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

struct BoundaryClassification {
    Side side = Side::Lower;
    bool s_approachable = false;
    bool s_regular = false;
    bool finite_time_approachable = false;
    double feller_value = kInf;
    double scale_limit = 0.0;  // s(a+) or s(b-)
    double mass_near = kInf;   // m((a,c)) or m((c,b))
};

double eval_scale(const ScaleFunction& s, double x);

// Limits certified from the doubling sequence of cut points.
std::pair<double, double> scale_limits(const ScaleFunction& s);

double measure_of(const SpeedMeasure& m, double c, double d);

// Feller integral on one side with interior cut point c.
double feller_integral(const ScaleFunction& s, const SpeedMeasure& m, Side side, double c);

BoundaryClassification boundary_classify(const ScaleFunction& s, const SpeedMeasure& m, Side side,
                                         std::optional<double> cut = std::nullopt);

} // namespace mosco1d
