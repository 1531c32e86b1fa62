#include "mosco1d/interval_scale.hpp"
#include "mosco1d/certify.hpp"
#include "mosco1d/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quadrature.hpp"

namespace mosco1d {

namespace {

constexpr double kQuadTol = 1e-13;
constexpr int kFellerSubcells = 512;

double integrate(const std::function<double(double)>& f, double lo, double hi)
{
    return detail::integrate_gk(f, lo, hi, kQuadTol, 20);
}

std::string number(double x)
{
    return format_extended(x);
}

} // namespace

const char* to_string(DensityKind kind)
{
    switch (kind) {
    case DensityKind::Identity: return "Identity";
    case DensityKind::SetIndicator: return "SetIndicator";
    case DensityKind::PiecewiseSmooth: return "PiecewiseSmooth";
    case DensityKind::Composed: return "Composed";
    }
    return "?";
}

// ---------------------------------------------------------------- scale

struct ScaleFunction::Impl {
    explicit Impl(const Interval& I) : interval(I) {}

    Interval interval;
    DensityKind kind = DensityKind::Identity;
    std::optional<CharacteristicSet> set;
    std::string name;
    std::vector<SmoothPiece> pieces;
    std::optional<ScaleFunction> outer, j;
    double lim_lo = -kInf, lim_hi = kInf;
    bool limits_ready = false;
    double tol = 1e-15;

    double smooth_integral(double c, double d) const
    {
        double total = 0.0;
        for (const auto& p : pieces) {
            const double lo = std::max(c, p.lo), hi = std::min(d, p.hi);
            if (!(lo < hi)) continue;
            if (p.primitive && std::isfinite(lo) && std::isfinite(hi))
                total += p.primitive(hi) - p.primitive(lo);
            else
                total += integrate(p.density, lo, hi);
        }
        return total;
    }

    // image point -> base point of the homeomorphism, endpoints preserved
    double pull(double y) const
    {
        if (y <= interval.a()) return j->interval().a();
        if (y >= interval.b()) return j->interval().b();
        return j->inverse(y);
    }

    double increment(double c, double d) const
    {
        switch (kind) {
        case DensityKind::Identity: return d - c;
        case DensityKind::SetIndicator: return set->measure(c, d);
        case DensityKind::PiecewiseSmooth: {
            const bool end_c = (c == interval.a()) && !std::isfinite(c);
            const bool end_d = (d == interval.b()) && !std::isfinite(d);
            if (!end_c && !end_d) return smooth_integral(c, d);
            const double vd = end_d ? lim_hi : (d >= interval.e() ? smooth_integral(interval.e(), d)
                                                                   : -smooth_integral(d, interval.e()));
            const double vc = end_c ? lim_lo : (c >= interval.e() ? smooth_integral(interval.e(), c)
                                                                   : -smooth_integral(c, interval.e()));
            if (std::isinf(vd) || std::isinf(vc)) return kInf;
            return vd - vc;
        }
        case DensityKind::Composed: return outer->increment(pull(c), pull(d));
        }
        return 0.0;
    }
};

namespace {

void check_point(const Interval& I, double x, const char* what)
{
    if (std::isnan(x) || !I.contains(x))
        fail(ErrorCode::OutOfDomain, std::string(what) + " " + number(x) + " outside " + I.describe());
}

void check_closure(const Interval& I, double x, const char* what)
{
    if (std::isnan(x) || !I.contains_closure(x))
        fail(ErrorCode::OutOfDomain, std::string(what) + " " + number(x) + " outside closure of " + I.describe());
}

} // namespace

ScaleFunction ScaleFunction::identity(const Interval& I)
{
    auto impl = std::make_shared<Impl>(I);
    impl->kind = DensityKind::Identity;
    impl->lim_lo = I.a() - I.e();
    impl->lim_hi = I.b() - I.e();
    impl->limits_ready = true;
    return ScaleFunction(impl);
}

ScaleFunction ScaleFunction::from_set(const CharacteristicSet& G)
{
    const Interval& I = G.interval();
    if (G.is_full()) return identity(I);
    auto null_at = [&](double lo, double hi) {
        fail(ErrorCode::AdmissibilityFailure,
             "set " + G.describe() + " is null on (" + number(lo) + ", " + number(hi) + ")");
    };
    const double win_lo = std::max(I.a(), I.e() - 8.0), win_hi = std::min(I.b(), I.e() + 8.0);
    if (auto bad = G.find_null_interval(win_lo, win_hi, 0x1p-20)) null_at(bad->lo, bad->hi);
    // gaps between interval members anywhere in I
    double prev = I.a();
    for (const auto& sp : G.spans()) {
        if (sp.lo > prev && !(G.measure(prev, sp.lo) > 0.0)) null_at(prev, sp.lo);
        prev = std::max(prev, sp.hi);
    }
    if (!G.spans().empty() && prev < I.b() && !(G.measure(prev, I.b()) > 0.0)) null_at(prev, I.b());
    auto impl = std::make_shared<Impl>(I);
    impl->kind = DensityKind::SetIndicator;
    impl->set = G;
    impl->lim_lo = -G.measure(I.a(), I.e());
    impl->lim_hi = G.measure(I.e(), I.b());
    impl->limits_ready = true;
    impl->tol = G.tolerance();
    return ScaleFunction(impl);
}

ScaleFunction ScaleFunction::piecewise_smooth(const Interval& I, std::string name, std::vector<SmoothPiece> pieces)
{
    if (pieces.empty()) fail(ErrorCode::InvalidArgument, "piecewise smooth scale without pieces");
    std::sort(pieces.begin(), pieces.end(), [](const SmoothPiece& x, const SmoothPiece& y) { return x.lo < y.lo; });
    if (pieces.front().lo != I.a() || pieces.back().hi != I.b())
        fail(ErrorCode::InvalidArgument, "smooth pieces must cover the interval");
    for (size_t i = 0; i < pieces.size(); ++i) {
        if (!pieces[i].density) fail(ErrorCode::InvalidArgument, "smooth piece without density");
        if (!(pieces[i].lo < pieces[i].hi)) fail(ErrorCode::InvalidArgument, "empty smooth piece");
        if (i && pieces[i].lo != pieces[i - 1].hi) fail(ErrorCode::InvalidArgument, "smooth pieces must be contiguous");
    }
    auto impl = std::make_shared<Impl>(I);
    impl->kind = DensityKind::PiecewiseSmooth;
    impl->name = std::move(name);
    impl->pieces = std::move(pieces);
    impl->tol = 1e-12;
    ScaleFunction s(impl);
    // limits: direct integral towards finite endpoints, certified doubling otherwise
    const auto certified = scale_limits(s);
    impl->lim_lo = I.bounded(Side::Lower) ? -impl->smooth_integral(I.a(), I.e()) : certified.first;
    impl->lim_hi = I.bounded(Side::Upper) ? impl->smooth_integral(I.e(), I.b()) : certified.second;
    impl->limits_ready = true;
    return s;
}

ScaleFunction ScaleFunction::linear(const Interval& I, double slope)
{
    if (!(slope > 0.0) || !std::isfinite(slope)) fail(ErrorCode::InvalidArgument, "linear scale needs a positive slope");
    std::ostringstream os;
    os.precision(12);
    os << "linear(" << slope << ")";
    return piecewise_smooth(I, os.str(),
                            {{I.a(), I.b(), [slope](double) { return slope; },
                              [slope](double x) { return slope * x; }}});
}

ScaleFunction ScaleFunction::sine_perturbed(const Interval& I, double amplitude)
{
    if (!(std::fabs(amplitude) < 1.0)) fail(ErrorCode::InvalidArgument, "sine perturbation needs |A| < 1");
    std::ostringstream os;
    os.precision(12);
    os << "sine(" << amplitude << ")";
    const double A = amplitude;
    return piecewise_smooth(I, os.str(),
                            {{I.a(), I.b(), [A](double x) { return 1.0 + A * std::cos(x); },
                              [A](double x) { return x + A * std::sin(x); }}});
}

ScaleFunction ScaleFunction::composed(const ScaleFunction& outer, const ScaleFunction& j)
{
    if (outer.interval() != j.interval())
        fail(ErrorCode::InvalidArgument, "composition of scales on different intervals");
    const auto [lo, hi] = j.limits();
    const Interval image(lo, hi, 0.0);
    if (j.kind() == DensityKind::Identity && j.interval().e() == 0.0 && outer.interval().e() == 0.0)
        return outer;
    if (outer.same_as(j)) return identity(image);
    auto impl = std::make_shared<Impl>(image);
    impl->kind = DensityKind::Composed;
    impl->outer = outer;
    impl->j = j;
    const auto [olo, ohi] = outer.limits();
    impl->lim_lo = olo;
    impl->lim_hi = ohi;
    impl->limits_ready = true;
    impl->tol = std::max(outer.tolerance(), j.tolerance());
    return ScaleFunction(impl);
}

const Interval& ScaleFunction::interval() const { return impl_->interval; }
DensityKind ScaleFunction::kind() const { return impl_->kind; }
const CharacteristicSet* ScaleFunction::set() const { return impl_->set ? &*impl_->set : nullptr; }
const ScaleFunction* ScaleFunction::outer() const { return impl_->outer ? &*impl_->outer : nullptr; }
const ScaleFunction* ScaleFunction::homeomorphism() const { return impl_->j ? &*impl_->j : nullptr; }
double ScaleFunction::tolerance() const { return impl_->tol; }

double ScaleFunction::eval(double x) const
{
    check_point(interval(), x, "scale argument");
    const double e = interval().e();
    if (x == e) return 0.0;
    return x > e ? impl_->increment(e, x) : -impl_->increment(x, e);
}

double ScaleFunction::increment(double c, double d) const
{
    check_closure(interval(), c, "increment end");
    check_closure(interval(), d, "increment end");
    if (c > d) fail(ErrorCode::InvalidArgument, "increment needs c <= d");
    if (c == d) return 0.0;
    return impl_->increment(c, d);
}

std::pair<double, double> ScaleFunction::limits() const { return {impl_->lim_lo, impl_->lim_hi}; }

double ScaleFunction::limit(Side side) const { return side == Side::Lower ? impl_->lim_lo : impl_->lim_hi; }

double ScaleFunction::inverse(double y) const
{
    if (!(y > impl_->lim_lo && y < impl_->lim_hi))
        fail(ErrorCode::OutOfDomain, "scale value " + number(y) + " outside the range (" + number(impl_->lim_lo) +
                                         ", " + number(impl_->lim_hi) + ")");
    const Interval& I = interval();
    if (kind() == DensityKind::Identity) return y + I.e();
    if (kind() == DensityKind::Composed) return impl_->j->eval(impl_->outer->inverse(y));
    if (y == 0.0) return I.e();
    // bracket, then bisect
    double lo, hi;
    if (y > 0.0) {
        lo = I.e();
        if (I.bounded(Side::Upper)) {
            hi = I.b();
        } else {
            double step = 1.0;
            hi = I.e() + step;
            while (eval(hi) < y) {
                lo = hi;
                step *= 2.0;
                hi = I.e() + step;
                if (step > 1e300) fail(ErrorCode::NotConverged, "cannot bracket scale inverse");
            }
        }
    } else {
        hi = I.e();
        if (I.bounded(Side::Lower)) {
            lo = I.a();
        } else {
            double step = 1.0;
            lo = I.e() - step;
            while (eval(lo) > y) {
                hi = lo;
                step *= 2.0;
                lo = I.e() - step;
                if (step > 1e300) fail(ErrorCode::NotConverged, "cannot bracket scale inverse");
            }
        }
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (eval(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double ScaleFunction::density(double x) const
{
    check_point(interval(), x, "density argument");
    switch (kind()) {
    case DensityKind::Identity: return 1.0;
    case DensityKind::PiecewiseSmooth:
        for (const auto& p : impl_->pieces)
            if (x >= p.lo && x <= p.hi) return p.density(x);
        return 0.0;
    case DensityKind::Composed: {
        const double xb = impl_->j->inverse(x);
        return impl_->outer->density(xb) / impl_->j->density(xb);
    }
    case DensityKind::SetIndicator:
        break;
    }
    fail(ErrorCode::UnsupportedRepresentation, "pointwise density of an indicator scale is not defined");
}

std::string ScaleFunction::describe() const
{
    switch (kind()) {
    case DensityKind::Identity: return "identity";
    case DensityKind::SetIndicator: return "indicator[" + impl_->set->describe() + "]";
    case DensityKind::PiecewiseSmooth: return impl_->name;
    case DensityKind::Composed: return "(" + impl_->outer->describe() + ") o inverse(" + impl_->j->describe() + ")";
    }
    return "?";
}

bool ScaleFunction::same_as(const ScaleFunction& other) const
{
    if (impl_ == other.impl_) return true;
    return interval() == other.interval() && kind() == other.kind() && describe() == other.describe();
}

// ---------------------------------------------------------------- speed

struct SpeedMeasure::Impl {
    explicit Impl(const Interval& I) : interval(I) {}

    Interval interval;
    SpeedKind kind = SpeedKind::Density;
    std::string name;
    std::function<double(double)> f, primitive;
    std::optional<ScaleFunction> scale;
    double alpha = 0.5, lo = 0, hi = 0, pL = 0, pR = 0, gL = 0, gR = 0, g0 = 0;
    std::optional<SpeedMeasure> base;
    std::optional<ScaleFunction> j;
    std::vector<Atom> atoms;

    double g(double y, double dlo, double dhi) const
    {
        if (y <= pL) return dlo <= 0.0 ? -kInf : -std::pow(dlo, -alpha);
        if (y >= pR) return dhi <= 0.0 ? kInf : std::pow(dhi, -alpha);
        return gL + (gR - gL) * (y - pL) / (pR - pL);
    }

    // F(s(x)) computed from distances to the scale limits
    double profile_at(double x) const
    {
        const double dlo = x <= interval.a() ? 0.0 : scale->increment(interval.a(), x);
        const double dhi = x >= interval.b() ? 0.0 : scale->increment(x, interval.b());
        const double y = x <= interval.a() ? lo : (x >= interval.b() ? hi : scale->eval(x));
        return g(y, dlo, dhi) - g0;
    }

    double continuous_mass(double c, double d) const
    {
        switch (kind) {
        case SpeedKind::Density:
            if (primitive) {
                const double v = primitive(d) - primitive(c);
                return std::isnan(v) ? kInf : std::max(0.0, v);
            }
            return integrate(f, c, d);
        case SpeedKind::Stieltjes: {
            const double Fc = profile_at(c), Fd = profile_at(d);
            if (std::isinf(Fc) || std::isinf(Fd)) return kInf;
            return std::max(0.0, Fd - Fc);
        }
        case SpeedKind::Pushforward: {
            auto pull = [&](double y) {
                if (y <= interval.a()) return j->interval().a();
                if (y >= interval.b()) return j->interval().b();
                return j->inverse(y);
            };
            return base->mass(pull(c), pull(d));
        }
        }
        return 0.0;
    }
};

namespace {

std::shared_ptr<SpeedMeasure::Impl> density_impl(const Interval& I, std::string name, std::function<double(double)> f,
                                                  std::function<double(double)> primitive)
{
    auto impl = std::make_shared<SpeedMeasure::Impl>(I);
    impl->kind = SpeedKind::Density;
    impl->name = std::move(name);
    impl->f = std::move(f);
    impl->primitive = std::move(primitive);
    return impl;
}

} // namespace

SpeedMeasure SpeedMeasure::lebesgue(const Interval& I)
{
    return SpeedMeasure(density_impl(I, "lebesgue", [](double) { return 1.0; }, [](double x) { return x; }));
}

SpeedMeasure SpeedMeasure::cauchy(const Interval& I)
{
    return SpeedMeasure(density_impl(
        I, "cauchy", [](double x) { return 1.0 / (1.0 + x * x); }, [](double x) { return std::atan(x); }));
}

SpeedMeasure SpeedMeasure::gaussian(const Interval& I)
{
    return SpeedMeasure(density_impl(
        I, "gaussian", [](double x) { return std::exp(-x * x); },
        [](double x) { return 0.5 * std::sqrt(M_PI) * std::erf(x); }));
}

SpeedMeasure SpeedMeasure::rational(const Interval& I, double p)
{
    if (!(p > 0.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "rational density needs p > 0");
    std::ostringstream os;
    os.precision(12);
    os << "rational(" << p << ")";
    auto f = [p](double x) { return std::pow(1.0 + std::fabs(x), -p); };
    auto P = [p](double x) {
        const double ax = std::fabs(x);
        const double v = p == 1.0 ? std::log1p(ax) : (1.0 - std::pow(1.0 + ax, 1.0 - p)) / (p - 1.0);
        return x < 0 ? -v : v;
    };
    return SpeedMeasure(density_impl(I, os.str(), f, P));
}

SpeedMeasure SpeedMeasure::density(const Interval& I, std::string name, std::function<double(double)> f,
                                   std::function<double(double)> primitive)
{
    if (!f) fail(ErrorCode::InvalidArgument, "density measure without a density");
    return SpeedMeasure(density_impl(I, std::move(name), std::move(f), std::move(primitive)));
}

SpeedMeasure SpeedMeasure::stieltjes_F(const ScaleFunction& s, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::InvalidArgument, "stieltjes_F needs 0 < alpha < 1");
    const auto [lo, hi] = s.limits();
    if (!std::isfinite(lo) || !std::isfinite(hi))
        fail(ErrorCode::InvalidArgument, "stieltjes_F needs a scale with finite limits, got " + s.describe());
    auto impl = std::make_shared<Impl>(s.interval());
    impl->kind = SpeedKind::Stieltjes;
    impl->scale = s;
    impl->alpha = alpha;
    impl->lo = lo;
    impl->hi = hi;
    impl->pL = 0.5 * lo;
    impl->pR = 0.5 * hi;
    impl->gL = -std::pow(impl->pL - lo, -alpha);
    impl->gR = std::pow(hi - impl->pR, -alpha);
    impl->g0 = 0.0;
    impl->g0 = impl->g(0.0, -lo, hi);
    std::ostringstream os;
    os.precision(12);
    os << "stieltjes_F(alpha=" << alpha << "; " << s.describe() << ")";
    impl->name = os.str();
    return SpeedMeasure(impl);
}

SpeedMeasure SpeedMeasure::pushforward(const SpeedMeasure& m, const ScaleFunction& j)
{
    if (m.interval() != j.interval()) fail(ErrorCode::InvalidArgument, "pushforward by a map on another interval");
    const auto [lo, hi] = j.limits();
    auto impl = std::make_shared<Impl>(Interval(lo, hi, 0.0));
    impl->kind = SpeedKind::Pushforward;
    impl->base = m;
    impl->j = j;
    for (const auto& a : m.atoms()) impl->atoms.push_back({j.eval(a.at), a.mass});
    impl->name = "pushforward(" + m.describe() + "; " + j.describe() + ")";
    return SpeedMeasure(impl);
}

SpeedMeasure SpeedMeasure::with_atoms(std::vector<Atom> atoms) const
{
    if (kind() == SpeedKind::Pushforward) fail(ErrorCode::InvalidArgument, "add atoms before pushing forward");
    auto impl = std::make_shared<Impl>(*impl_);
    for (const auto& a : atoms) {
        check_point(interval(), a.at, "atom location");
        if (!(a.mass > 0.0) || !std::isfinite(a.mass)) fail(ErrorCode::InvalidArgument, "atom mass must be positive");
        impl->atoms.push_back(a);
    }
    std::sort(impl->atoms.begin(), impl->atoms.end(), [](const Atom& x, const Atom& y) { return x.at < y.at; });
    return SpeedMeasure(impl);
}

const Interval& SpeedMeasure::interval() const { return impl_->interval; }
SpeedKind SpeedMeasure::kind() const { return impl_->kind; }
const std::vector<Atom>& SpeedMeasure::atoms() const { return impl_->atoms; }

double SpeedMeasure::mass(double c, double d) const
{
    check_closure(interval(), c, "mass end");
    check_closure(interval(), d, "mass end");
    if (c > d) fail(ErrorCode::InvalidArgument, "mass needs c <= d");
    if (c == d) return 0.0;
    double total = impl_->continuous_mass(c, d);
    if (impl_->kind != SpeedKind::Pushforward)
        for (const auto& a : impl_->atoms)
            if (a.at > c && a.at < d) total += a.mass;
    return total;
}

double SpeedMeasure::total_left() const
{
    double total = mass(interval().a(), interval().e());
    for (const auto& a : impl_->atoms)
        if (a.at == interval().e()) total += a.mass;
    return total;
}

double SpeedMeasure::total_right() const { return mass(interval().e(), interval().b()); }

double SpeedMeasure::stieltjes_profile(double y) const
{
    if (kind() != SpeedKind::Stieltjes) fail(ErrorCode::UnsupportedRepresentation, "not a Stieltjes measure");
    return impl_->g(y, y - impl_->lo, impl_->hi - y) - impl_->g0;
}

double SpeedMeasure::stieltjes_alpha() const { return impl_->alpha; }

std::string SpeedMeasure::describe() const
{
    std::string s = impl_->name;
    if (!impl_->atoms.empty() && kind() != SpeedKind::Pushforward) {
        std::ostringstream os;
        os.precision(12);
        os << " + atoms[";
        for (size_t i = 0; i < impl_->atoms.size(); ++i)
            os << (i ? ", " : "") << impl_->atoms[i].at << ":" << impl_->atoms[i].mass;
        os << "]";
        s += os.str();
    }
    return s;
}

bool SpeedMeasure::same_as(const SpeedMeasure& other) const
{
    if (impl_ == other.impl_) return true;
    return interval() == other.interval() && describe() == other.describe();
}

// ---------------------------------------------------------------- queries

double eval_scale(const ScaleFunction& s, double x) { return s.eval(x); }

std::pair<double, double> scale_limits(const ScaleFunction& s)
{
    const Interval& I = s.interval();
    std::pair<double, double> out;
    for (Side side : {Side::Lower, Side::Upper}) {
        auto piece = [&](int k) {
            const double x0 = doubling_cut(I, side, I.e(), k);
            const double x1 = doubling_cut(I, side, I.e(), k + 1);
            if (x0 == x1 || !I.contains(x1)) return std::nan("");
            return side == Side::Lower ? s.increment(x1, x0) : s.increment(x0, x1);
        };
        const auto sum = certify_series(piece);
        if (side == Side::Lower)
            out.first = -sum.value;
        else
            out.second = sum.value;
    }
    return out;
}

double measure_of(const SpeedMeasure& m, double c, double d) { return m.mass(c, d); }

double feller_integral(const ScaleFunction& s, const SpeedMeasure& m, Side side, double c)
{
    const Interval& I = s.interval();
    check_point(I, c, "cut point");
    if (!std::isfinite(s.limit(side))) return kInf;
    auto piece = [&](int k) {
        const double xk = doubling_cut(I, side, c, k);
        const double xn = doubling_cut(I, side, c, k + 1);
        if (xk == xn || !I.contains(xn)) return std::nan("");
        const double lo = std::min(xk, xn), hi = std::max(xk, xn);
        const double ds = s.increment(lo, hi);
        const double outer = side == Side::Lower ? m.mass(xk, c) : m.mass(c, xk);
        double inner = 0.0, tail = 0.0;
        const int S = kFellerSubcells;
        // walk from the cut point xk outwards, accumulating m between xk and the cell
        for (int i = 0; i < S; ++i) {
            double z0, z1;
            if (side == Side::Lower) {
                z1 = hi - (hi - lo) * i / S;
                z0 = i + 1 == S ? lo : hi - (hi - lo) * (i + 1) / S;
            } else {
                z0 = lo + (hi - lo) * i / S;
                z1 = i + 1 == S ? hi : lo + (hi - lo) * (i + 1) / S;
            }
            const double mu = m.mass(z0, z1);
            inner += s.increment(z0, z1) * (tail + 0.5 * mu);
            tail += mu;
        }
        return outer * ds + inner;
    };
    return certify_series(piece).value;
}

BoundaryClassification boundary_classify(const ScaleFunction& s, const SpeedMeasure& m, Side side,
                                         std::optional<double> cut)
{
    if (s.interval() != m.interval()) fail(ErrorCode::InvalidArgument, "scale and speed live on different intervals");
    const Interval& I = s.interval();
    const double c = cut.value_or(I.e());
    check_point(I, c, "cut point");
    BoundaryClassification out;
    out.side = side;
    out.scale_limit = s.limit(side);
    out.s_approachable = std::isfinite(out.scale_limit);
    out.mass_near = side == Side::Lower ? m.mass(I.a(), c) : m.mass(c, I.b());
    out.s_regular = out.s_approachable && std::isfinite(out.mass_near);
    out.feller_value = feller_integral(s, m, side, c);
    out.finite_time_approachable = std::isfinite(out.feller_value);
    if (out.s_regular && !out.finite_time_approachable)
        fail(ErrorCode::NotConverged, std::string("Feller integral at the regular ") + to_string(side) +
                                          " boundary could not be certified finite");
    return out;
}

} // namespace mosco1d
