#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mosco1d/bijection.hpp"
#include "mosco1d/interval_scale.hpp"

namespace mosco1d {

enum class BoundaryCondition { Absorbing, Full };

const char* to_string(BoundaryCondition bc);

// (scale, speed, boundary condition) with both boundaries classified.
class DirichletSpaceSpec {
public:
    DirichletSpaceSpec(ScaleFunction scale, SpeedMeasure speed, BoundaryCondition bc);

    const ScaleFunction& scale() const { return scale_; }
    const SpeedMeasure& speed() const { return speed_; }
    BoundaryCondition boundary_condition() const { return bc_; }
    const Interval& interval() const { return scale_.interval(); }
    const BoundaryClassification& boundary(Side side) const
    {
        return side == Side::Lower ? lower_ : upper_;
    }
    // u = 0 is imposed on this side (Absorbing at an s-regular boundary).
    bool constrained(Side side) const;

    DirichletSpaceSpec with_boundary_condition(BoundaryCondition bc) const;
    std::string describe() const;

private:
    ScaleFunction scale_;
    SpeedMeasure speed_;
    BoundaryCondition bc_;
    BoundaryClassification lower_, upper_;
};

// Equality of the forms: same scale and speed, same imposed constraints.
bool same_form(const DirichletSpaceSpec& x, const DirichletSpaceSpec& y);

enum class Profile { Tent, Bump };

enum class TestFunctionKind { CoreComposite, Explicit, GridSampled };

// Functions on I used as resolvent data and as energy/membership probes.
class TestFunction {
public:
    // phi o s with phi = amplitude * profile((y - center) / half_width),
    // supported in [center - half_width, center + half_width] inside s(I).
    static TestFunction core_composite(const ScaleFunction& s, Profile profile, double center, double half_width,
                                       double amplitude = 1.0);
    // Closed form in x with derivative, derivative kinks and boundary limits.
    static TestFunction explicit_fn(std::string name, std::function<double(double)> value,
                                    std::function<double(double)> derivative, std::vector<double> kinks = {},
                                    double limit_lower = 0.0, double limit_upper = 0.0);
    static TestFunction grid_sampled(std::vector<double> x, std::vector<double> values);

    static TestFunction gaussian();            // exp(-x^2)
    static TestFunction tent();                // max(0, 1 - |x|)
    static TestFunction mollified_indicator(); // 1_(-1,1) smoothed by a Gaussian of width 0.1
    static TestFunction smooth_bump(double center, double half_width);
    static TestFunction zero();
    // gaussian | tent | mollified_indicator | zero
    static TestFunction by_name(const std::string& name);
    static std::vector<std::string> battery_names();

    TestFunctionKind kind() const;
    const std::string& name() const;
    double operator()(double x) const;
    // du/dx where it exists (Explicit, GridSampled, and CoreComposite on smooth scales)
    double derivative(double x) const;
    double boundary_value(Side side) const;

    // CoreComposite accessors
    const ScaleFunction* scale() const;
    double profile(double y) const;
    double profile_derivative(double y) const;
    std::pair<double, double> support_y() const;
    std::vector<double> profile_kinks() const;
    // Explicit accessors
    const std::vector<double>& kinks() const;
    // GridSampled accessors
    const std::vector<double>& sample_x() const;
    const std::vector<double>& sample_values() const;

    // f o j^{-1} on j(I)
    TestFunction transformed(const ScaleFunction& j) const;

    struct Impl;

private:
    explicit TestFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

double energy(const TestFunction& u, const DirichletSpaceSpec& spec);

struct SubspaceRelation {
    bool is_subspace = false;
    bool proper = false;
    std::optional<OpenSpan> witness; // interval where the scales differ
};

SubspaceRelation is_subspace(const DirichletSpaceSpec& sub, const DirichletSpaceSpec& base);

bool membership(const TestFunction& u, const DirichletSpaceSpec& sub, const DirichletSpaceSpec& base);

enum class Recurrence { Recurrent, Transient, NotClassified };

const char* to_string(Recurrence r);

struct GlobalClassification {
    Recurrence recurrence = Recurrence::NotClassified;
    std::optional<bool> conservative;
    std::string summary() const;
};

GlobalClassification classify_global(const DirichletSpaceSpec& spec);

// Homeomorphism check for j on a sampling window; throws NotHomeomorphism.
void check_homeomorphism(const ScaleFunction& j);

DirichletSpaceSpec spatial_transform(const DirichletSpaceSpec& spec, const ScaleFunction& j);

} // namespace mosco1d
