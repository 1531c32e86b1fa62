#include "mosco1d/dirichlet.hpp"
#include "mosco1d/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include "quadrature.hpp"

namespace mosco1d {

namespace {

constexpr double kMembershipTol = 1e-9;
constexpr int kProbeCells = 4096;
constexpr int kAmbientCells = 2048;

double gk(const std::function<double(double)>& f, double lo, double hi)
{
    return detail::integrate_gk(f, lo, hi, 1e-14, 25);
}

double gauss_legendre(const std::function<double(double)>& f, double lo, double hi)
{
    if (!(lo < hi)) return 0.0;
    return boost::math::quadrature::gauss<double, 10>::integrate(f, lo, hi);
}

// integrate f over [lo, hi], splitting at the given interior points
double split_integral(const std::function<double(double)>& f, double lo, double hi, std::vector<double> cuts,
                      bool fixed_rule)
{
    cuts.push_back(lo);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (size_t i = 1; i < cuts.size(); ++i) {
        const double a = std::max(lo, cuts[i - 1]), b = std::min(hi, cuts[i]);
        if (a < b) total += fixed_rule ? gauss_legendre(f, a, b) : gk(f, a, b);
    }
    return total;
}

std::pair<double, double> probe_window(const Interval& I) { return sampling_window(I, 20.0); }

} // namespace

const char* to_string(BoundaryCondition bc) { return bc == BoundaryCondition::Absorbing ? "absorbing" : "full"; }

const char* to_string(Recurrence r)
{
    switch (r) {
    case Recurrence::Recurrent: return "recurrent";
    case Recurrence::Transient: return "transient";
    case Recurrence::NotClassified: return "not classified";
    }
    return "?";
}

// ---------------------------------------------------------------- spec

DirichletSpaceSpec::DirichletSpaceSpec(ScaleFunction scale, SpeedMeasure speed, BoundaryCondition bc)
    : scale_(std::move(scale)), speed_(std::move(speed)), bc_(bc)
{
    if (scale_.interval() != speed_.interval())
        fail(ErrorCode::InvalidArgument, "scale and speed measure live on different intervals");
    lower_ = boundary_classify(scale_, speed_, Side::Lower);
    upper_ = boundary_classify(scale_, speed_, Side::Upper);
}

bool DirichletSpaceSpec::constrained(Side side) const
{
    return bc_ == BoundaryCondition::Absorbing && boundary(side).s_regular;
}

DirichletSpaceSpec DirichletSpaceSpec::with_boundary_condition(BoundaryCondition bc) const
{
    DirichletSpaceSpec out = *this;
    out.bc_ = bc;
    return out;
}

std::string DirichletSpaceSpec::describe() const
{
    return "scale=" + scale_.describe() + "; speed=" + speed_.describe() + "; boundary=" + to_string(bc_);
}

bool same_form(const DirichletSpaceSpec& x, const DirichletSpaceSpec& y)
{
    return x.scale().same_as(y.scale()) && x.speed().same_as(y.speed()) &&
           x.constrained(Side::Lower) == y.constrained(Side::Lower) &&
           x.constrained(Side::Upper) == y.constrained(Side::Upper);
}

// ---------------------------------------------------------------- test functions

struct TestFunction::Impl {
    TestFunctionKind kind = TestFunctionKind::Explicit;
    std::string name;
    std::optional<ScaleFunction> scale;
    Profile profile = Profile::Tent;
    double center = 0.0, hw = 1.0, amp = 1.0;
    std::function<double(double)> value, deriv;
    std::vector<double> kinks;
    double lim_lo = 0.0, lim_hi = 0.0;
    std::vector<double> xs, vs;

    double phi(double y) const
    {
        const double t = (y - center) / hw;
        if (std::fabs(t) >= 1.0) return 0.0;
        if (profile == Profile::Tent) return amp * (1.0 - std::fabs(t));
        return amp * std::exp(-1.0 / (1.0 - t * t));
    }

    double dphi(double y) const
    {
        const double t = (y - center) / hw;
        if (std::fabs(t) >= 1.0) return 0.0;
        if (profile == Profile::Tent) return t > 0 ? -amp / hw : (t < 0 ? amp / hw : 0.0);
        const double q = 1.0 - t * t;
        return amp * std::exp(-1.0 / q) * (-2.0 * t / (q * q)) / hw;
    }
};

TestFunction TestFunction::core_composite(const ScaleFunction& s, Profile profile, double center, double half_width,
                                          double amplitude)
{
    if (!(half_width > 0.0)) fail(ErrorCode::InvalidArgument, "profile half-width must be positive");
    const auto [lo, hi] = s.limits();
    if (!(center - half_width > lo && center + half_width < hi))
        fail(ErrorCode::InvalidArgument, "profile support must lie inside the scale range");
    auto impl = std::make_shared<Impl>();
    impl->kind = TestFunctionKind::CoreComposite;
    impl->scale = s;
    impl->profile = profile;
    impl->center = center;
    impl->hw = half_width;
    impl->amp = amplitude;
    std::ostringstream os;
    os.precision(6);
    os << (profile == Profile::Tent ? "tent" : "bump") << "(" << center << "," << half_width << ")o_s";
    impl->name = os.str();
    return TestFunction(impl);
}

TestFunction TestFunction::explicit_fn(std::string name, std::function<double(double)> value,
                                       std::function<double(double)> derivative, std::vector<double> kinks,
                                       double limit_lower, double limit_upper)
{
    if (!value) fail(ErrorCode::InvalidArgument, "explicit test function without a value");
    auto impl = std::make_shared<Impl>();
    impl->kind = TestFunctionKind::Explicit;
    impl->name = std::move(name);
    impl->value = std::move(value);
    impl->deriv = std::move(derivative);
    std::sort(kinks.begin(), kinks.end());
    impl->kinks = std::move(kinks);
    impl->lim_lo = limit_lower;
    impl->lim_hi = limit_upper;
    return TestFunction(impl);
}

TestFunction TestFunction::grid_sampled(std::vector<double> x, std::vector<double> values)
{
    if (x.size() != values.size() || x.size() < 2) fail(ErrorCode::InvalidArgument, "grid function needs >= 2 samples");
    for (size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) fail(ErrorCode::InvalidArgument, "grid function nodes must increase");
    auto impl = std::make_shared<Impl>();
    impl->kind = TestFunctionKind::GridSampled;
    impl->name = "grid";
    impl->xs = std::move(x);
    impl->vs = std::move(values);
    impl->lim_lo = impl->vs.front();
    impl->lim_hi = impl->vs.back();
    return TestFunction(impl);
}

TestFunction TestFunction::gaussian()
{
    return explicit_fn(
        "gaussian", [](double x) { return std::exp(-x * x); },
        [](double x) { return -2.0 * x * std::exp(-x * x); });
}

TestFunction TestFunction::tent()
{
    return explicit_fn(
        "tent", [](double x) { return std::max(0.0, 1.0 - std::fabs(x)); },
        [](double x) { return std::fabs(x) >= 1.0 ? 0.0 : (x > 0 ? -1.0 : (x < 0 ? 1.0 : 0.0)); }, {-1.0, 0.0, 1.0});
}

TestFunction TestFunction::mollified_indicator()
{
    constexpr double w = 0.1;
    return explicit_fn(
        "mollified_indicator",
        [](double x) { return 0.5 * (std::erf((x + 1.0) / w) - std::erf((x - 1.0) / w)); },
        [](double x) {
            const double a = (x + 1.0) / w, b = (x - 1.0) / w;
            return (std::exp(-a * a) - std::exp(-b * b)) / (w * std::sqrt(M_PI));
        },
        {-1.0, 1.0});
}

TestFunction TestFunction::smooth_bump(double center, double half_width)
{
    if (!(half_width > 0.0)) fail(ErrorCode::InvalidArgument, "bump half-width must be positive");
    auto v = [=](double x) {
        const double t = (x - center) / half_width;
        return std::fabs(t) >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - t * t));
    };
    auto d = [=](double x) {
        const double t = (x - center) / half_width;
        if (std::fabs(t) >= 1.0) return 0.0;
        const double q = 1.0 - t * t;
        return std::exp(-1.0 / q) * (-2.0 * t / (q * q)) / half_width;
    };
    std::ostringstream os;
    os.precision(6);
    os << "bump(" << center << "," << half_width << ")";
    return explicit_fn(os.str(), v, d, {center - half_width, center + half_width});
}

TestFunction TestFunction::zero()
{
    return explicit_fn("zero", [](double) { return 0.0; }, [](double) { return 0.0; });
}

TestFunction TestFunction::by_name(const std::string& name)
{
    if (name == "gaussian") return gaussian();
    if (name == "tent") return tent();
    if (name == "mollified_indicator") return mollified_indicator();
    if (name == "zero") return zero();
    fail(ErrorCode::InvalidArgument, "unknown test function '" + name + "'");
}

std::vector<std::string> TestFunction::battery_names() { return {"gaussian", "tent", "mollified_indicator"}; }

TestFunctionKind TestFunction::kind() const { return impl_->kind; }
const std::string& TestFunction::name() const { return impl_->name; }

double TestFunction::operator()(double x) const
{
    switch (impl_->kind) {
    case TestFunctionKind::CoreComposite: return impl_->phi(impl_->scale->eval(x));
    case TestFunctionKind::Explicit: return impl_->value(x);
    case TestFunctionKind::GridSampled: {
        const auto& xs = impl_->xs;
        const auto& vs = impl_->vs;
        if (x <= xs.front()) return vs.front();
        if (x >= xs.back()) return vs.back();
        const size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
        const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return vs[i - 1] + t * (vs[i] - vs[i - 1]);
    }
    }
    return 0.0;
}

double TestFunction::derivative(double x) const
{
    switch (impl_->kind) {
    case TestFunctionKind::CoreComposite:
        return impl_->dphi(impl_->scale->eval(x)) * impl_->scale->density(x);
    case TestFunctionKind::Explicit:
        if (!impl_->deriv) fail(ErrorCode::UnsupportedRepresentation, "test function without derivative");
        return impl_->deriv(x);
    case TestFunctionKind::GridSampled: {
        const auto& xs = impl_->xs;
        if (x <= xs.front() || x >= xs.back()) return 0.0;
        const size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
        return (impl_->vs[i] - impl_->vs[i - 1]) / (xs[i] - xs[i - 1]);
    }
    }
    return 0.0;
}

double TestFunction::boundary_value(Side side) const
{
    if (impl_->kind == TestFunctionKind::CoreComposite) return 0.0; // compact support inside s(I)
    return side == Side::Lower ? impl_->lim_lo : impl_->lim_hi;
}

const ScaleFunction* TestFunction::scale() const { return impl_->scale ? &*impl_->scale : nullptr; }
double TestFunction::profile(double y) const { return impl_->phi(y); }
double TestFunction::profile_derivative(double y) const { return impl_->dphi(y); }

std::pair<double, double> TestFunction::support_y() const
{
    return {impl_->center - impl_->hw, impl_->center + impl_->hw};
}

std::vector<double> TestFunction::profile_kinks() const
{
    if (impl_->profile == Profile::Tent) return {impl_->center - impl_->hw, impl_->center, impl_->center + impl_->hw};
    return {impl_->center - impl_->hw, impl_->center + impl_->hw};
}

const std::vector<double>& TestFunction::kinks() const { return impl_->kinks; }
const std::vector<double>& TestFunction::sample_x() const { return impl_->xs; }
const std::vector<double>& TestFunction::sample_values() const { return impl_->vs; }

TestFunction TestFunction::transformed(const ScaleFunction& j) const
{
    switch (impl_->kind) {
    case TestFunctionKind::CoreComposite: {
        auto impl = std::make_shared<Impl>(*impl_);
        impl->scale = ScaleFunction::composed(*impl_->scale, j);
        return TestFunction(impl);
    }
    case TestFunctionKind::Explicit: {
        auto src = impl_;
        auto impl = std::make_shared<Impl>(*impl_);
        impl->value = [src, j](double y) { return src->value(j.inverse(y)); };
        if (src->deriv && (j.kind() == DensityKind::Identity || j.kind() == DensityKind::PiecewiseSmooth))
            impl->deriv = [src, j](double y) {
                const double x = j.inverse(y);
                return src->deriv(x) / j.density(x);
            };
        else
            impl->deriv = nullptr;
        impl->kinks.clear();
        for (double k : src->kinks)
            if (j.interval().contains(k)) impl->kinks.push_back(j.eval(k));
        return TestFunction(impl);
    }
    case TestFunctionKind::GridSampled: {
        std::vector<double> y;
        for (double x : impl_->xs) y.push_back(j.eval(x));
        return grid_sampled(std::move(y), impl_->vs);
    }
    }
    return *this;
}

// ---------------------------------------------------------------- energy

namespace {

// 1/2 int phi'(y)^2 dy over y-images of x-cells of the composite's own scale
double ambient_core_energy(const TestFunction& u)
{
    const ScaleFunction& su = *u.scale();
    const auto [y0, y1] = u.support_y();
    const double x0 = su.inverse(y0), x1 = su.inverse(y1);
    const auto kinks = u.profile_kinks();
    auto dphi2 = [&](double y) {
        const double d = u.profile_derivative(y);
        return d * d;
    };
    double total = 0.0;
    double y = y0, x = x0;
    for (int i = 0; i < kAmbientCells; ++i) {
        const double xn = i + 1 == kAmbientCells ? x1 : x0 + (x1 - x0) * (i + 1) / kAmbientCells;
        const double yn = i + 1 == kAmbientCells ? y1 : y + su.increment(x, xn);
        total += split_integral(dphi2, y, yn, kinks, true);
        x = xn;
        y = yn;
    }
    return 0.5 * total;
}

} // namespace

double energy(const TestFunction& u, const DirichletSpaceSpec& spec)
{
    const ScaleFunction& s = spec.scale();
    switch (u.kind()) {
    case TestFunctionKind::CoreComposite: {
        const ScaleFunction& su = *u.scale();
        if (su.same_as(s)) {
            const auto [y0, y1] = u.support_y();
            auto dphi2 = [&](double y) {
                const double d = u.profile_derivative(y);
                return d * d;
            };
            return 0.5 * split_integral(dphi2, y0, y1, u.profile_kinks(), false);
        }
        if (su.interval() != s.interval()) fail(ErrorCode::InvalidArgument, "test function lives on another interval");
        if (is_admissible_scaling(su, s)) return ambient_core_energy(u);
        const bool smooth_u = su.kind() == DensityKind::PiecewiseSmooth || su.kind() == DensityKind::Identity;
        if (smooth_u && s.kind() == DensityKind::Identity) {
            const auto [y0, y1] = u.support_y();
            const double x0 = su.inverse(y0), x1 = su.inverse(y1);
            std::vector<double> cuts;
            for (double k : u.profile_kinks())
                if (k > y0 && k < y1) cuts.push_back(su.inverse(k));
            auto integrand = [&](double x) {
                const double d = u.derivative(x);
                return d * d;
            };
            return 0.5 * split_integral(integrand, x0, x1, cuts, false);
        }
        fail(ErrorCode::UnsupportedRepresentation,
             "energy of a composite over " + su.describe() + " under " + s.describe());
    }
    case TestFunctionKind::Explicit: {
        if (u.name() == "zero") return 0.0;
        const Interval& I = s.interval();
        if (s.kind() == DensityKind::Identity || s.kind() == DensityKind::PiecewiseSmooth) {
            auto integrand = [&](double x) {
                const double d = u.derivative(x);
                return s.kind() == DensityKind::Identity ? d * d : d * d / s.density(x);
            };
            return 0.5 * split_integral(integrand, I.a(), I.b(), u.kinks(), false);
        }
        if (s.kind() == DensityKind::SetIndicator) {
            // du/ds exists only if u' vanishes on the complement of G
            const auto [lo, hi] = probe_window(I);
            const CharacteristicSet& G = *s.set();
            const double h = (hi - lo) / kProbeCells;
            double bad = 0.0, total = 0.0;
            for (int i = 0; i < kProbeCells; ++i) {
                const double c = lo + h * i, d = c + h;
                const double dm = u.derivative(0.5 * (c + d));
                if (std::fabs(dm) > kMembershipTol) bad += G.complement_measure(c, d);
                total += dm * dm * G.measure(c, d);
            }
            if (bad > kMembershipTol) return kInf;
            return 0.5 * total;
        }
        fail(ErrorCode::UnsupportedRepresentation, "energy of an explicit function under " + s.describe());
    }
    case TestFunctionKind::GridSampled: {
        const auto& xs = u.sample_x();
        const auto& vs = u.sample_values();
        double total = 0.0;
        for (size_t i = 1; i < xs.size(); ++i) {
            const double du = vs[i] - vs[i - 1];
            const double ds = s.increment(xs[i - 1], xs[i]);
            if (ds <= s.tolerance()) {
                if (std::fabs(du) > kMembershipTol)
                    fail(ErrorCode::NotAbsolutelyContinuous,
                         "jump of " + format_extended(du) + " across a null scale cell at x=" + format_extended(xs[i]));
                continue;
            }
            total += du * du / ds;
        }
        return 0.5 * total;
    }
    }
    return 0.0;
}

// ---------------------------------------------------------------- subspaces

SubspaceRelation is_subspace(const DirichletSpaceSpec& sub, const DirichletSpaceSpec& base)
{
    if (sub.interval() != base.interval()) fail(ErrorCode::InvalidArgument, "subspace check across intervals");
    if (!sub.speed().same_as(base.speed()))
        fail(ErrorCode::MismatchedSpeed, sub.speed().describe() + " vs " + base.speed().describe());
    SubspaceRelation out;
    out.is_subspace = is_admissible_scaling(sub.scale(), base.scale());
    for (Side side : {Side::Lower, Side::Upper})
        if (base.constrained(side) && !sub.constrained(side)) out.is_subspace = false;
    if (!out.is_subspace) return out;
    // properness: some sampled interval where the scales differ
    const auto [lo, hi] = sampling_window(base.interval());
    const double tol = 10.0 * std::max(sub.scale().tolerance(), base.scale().tolerance());
    for (double len = hi - lo; len >= 0x1p-12 && !out.proper; len *= 0.5) {
        for (int i = 0; i < 32; ++i) {
            const double c = lo + (hi - lo - len) * i / 31.0, d = std::min(c + len, hi);
            if (!(c < d)) continue;
            if (base.scale().increment(c, d) - sub.scale().increment(c, d) > tol) {
                out.proper = true;
                out.witness = OpenSpan{c, d};
                break;
            }
        }
    }
    if (!out.proper) {
        // a proper subspace may also differ only through the boundary constraint
        for (Side side : {Side::Lower, Side::Upper})
            if (sub.constrained(side) && !base.constrained(side)) out.proper = true;
    }
    return out;
}

bool membership(const TestFunction& u, const DirichletSpaceSpec& sub, const DirichletSpaceSpec& base)
{
    if (!is_subspace(sub, base).is_subspace)
        fail(ErrorCode::InvalidArgument, "membership needs a subspace relation between the specs");
    const ScaleFunction& s = base.scale();
    const ScaleFunction& st = sub.scale();
    for (Side side : {Side::Lower, Side::Upper})
        if (sub.constrained(side) && std::fabs(u.boundary_value(side)) > kMembershipTol) return false;
    if (u.kind() == TestFunctionKind::Explicit && u.name() == "zero") return true;

    auto complement_in_cell = [&](double c, double d) { return s.increment(c, d) - st.increment(c, d); };
    double bad = 0.0;
    const Interval& I = s.interval();
    switch (u.kind()) {
    case TestFunctionKind::CoreComposite: {
        const ScaleFunction& su = *u.scale();
        if (su.same_as(st)) return true;
        const auto [y0, y1] = u.support_y();
        const double x0 = su.inverse(y0), x1 = su.inverse(y1);
        const bool set_like = su.kind() == DensityKind::SetIndicator || su.kind() == DensityKind::Identity;
        if (set_like && is_admissible_scaling(su, s)) {
            const CharacteristicSet Gu = set_from_scale(su);
            const CharacteristicSet Gs = set_from_scale(st);
            const double h = (x1 - x0) / kProbeCells;
            for (int i = 0; i < kProbeCells; ++i) {
                const double c = x0 + h * i, d = c + h;
                const double ya = su.eval(c), yb = su.eval(d);
                const double slope = std::max({std::fabs(u.profile_derivative(ya)),
                                               std::fabs(u.profile_derivative(0.5 * (ya + yb))),
                                               std::fabs(u.profile_derivative(yb))});
                if (slope > kMembershipTol) bad += measure_difference(Gu, Gs, c, d);
            }
            return bad <= kMembershipTol;
        }
        // smooth composite: derivative in x is available
        const double h = (x1 - x0) / kProbeCells;
        for (int i = 0; i < kProbeCells; ++i) {
            const double c = x0 + h * i, d = c + h;
            if (std::fabs(u.derivative(0.5 * (c + d))) > kMembershipTol) bad += complement_in_cell(c, d);
        }
        return bad <= kMembershipTol;
    }
    case TestFunctionKind::Explicit: {
        if (s.kind() != DensityKind::Identity && s.kind() != DensityKind::PiecewiseSmooth)
            fail(ErrorCode::UnsupportedRepresentation, "explicit functions need a smooth base scale");
        const auto [lo, hi] = probe_window(I);
        const double h = (hi - lo) / kProbeCells;
        for (int i = 0; i < kProbeCells; ++i) {
            const double c = lo + h * i, d = c + h;
            const double slope = std::max({std::fabs(u.derivative(c + 0.1 * h)), std::fabs(u.derivative(c + 0.5 * h)),
                                           std::fabs(u.derivative(c + 0.9 * h))});
            if (slope > kMembershipTol) bad += complement_in_cell(c, d);
        }
        return bad <= kMembershipTol;
    }
    case TestFunctionKind::GridSampled: {
        const auto& xs = u.sample_x();
        const auto& vs = u.sample_values();
        for (size_t i = 1; i < xs.size(); ++i) {
            if (std::fabs(vs[i] - vs[i - 1]) <= kMembershipTol) continue;
            const double c = std::max(xs[i - 1], I.a()), d = std::min(xs[i], I.b());
            if (c < d) bad += complement_in_cell(c, d);
        }
        return bad <= kMembershipTol;
    }
    }
    return false;
}

// ---------------------------------------------------------------- global properties

std::string GlobalClassification::summary() const
{
    std::string s = to_string(recurrence);
    if (conservative) s += *conservative ? ", conservative" : ", non-conservative";
    return s;
}

GlobalClassification classify_global(const DirichletSpaceSpec& spec)
{
    GlobalClassification out;
    const auto& lo = spec.boundary(Side::Lower);
    const auto& up = spec.boundary(Side::Upper);
    // a Full spec is a minimal-diffusion form only when no boundary is regular
    if (spec.boundary_condition() == BoundaryCondition::Full && (lo.s_regular || up.s_regular)) return out;
    out.recurrence = (lo.s_approachable || up.s_approachable) ? Recurrence::Transient : Recurrence::Recurrent;
    out.conservative = !lo.finite_time_approachable && !up.finite_time_approachable;
    return out;
}

// ---------------------------------------------------------------- spatial transform

void check_homeomorphism(const ScaleFunction& j)
{
    if (j.kind() == DensityKind::Identity || j.kind() == DensityKind::SetIndicator) return;
    const auto [lo, hi] = sampling_window(j.interval());
    const double h = (hi - lo) / kProbeCells;
    for (int i = 0; i < kProbeCells; ++i) {
        const double c = lo + h * i, d = c + h;
        if (!(j.increment(c, d) > 0.0))
            fail(ErrorCode::NotHomeomorphism, j.describe() + " is flat on (" + format_extended(c) + ", " +
                                                  format_extended(d) + ")");
    }
    const auto [a, b] = j.limits();
    if (!(a < 0.0 && 0.0 < b)) fail(ErrorCode::NotHomeomorphism, "degenerate image of " + j.describe());
}

DirichletSpaceSpec spatial_transform(const DirichletSpaceSpec& spec, const ScaleFunction& j)
{
    if (j.interval() != spec.interval())
        fail(ErrorCode::InvalidArgument, "transform defined on " + j.interval().describe() + ", spec on " +
                                             spec.interval().describe());
    check_homeomorphism(j);
    if (j.kind() == DensityKind::Identity && spec.interval().e() == 0.0) return spec;
    return DirichletSpaceSpec(ScaleFunction::composed(spec.scale(), j), SpeedMeasure::pushforward(spec.speed(), j),
                              spec.boundary_condition());
}

} // namespace mosco1d
