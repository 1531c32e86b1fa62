#include "mosco1d/discretize.hpp"
#include "mosco1d/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace mosco1d {

const char* to_string(RowType row) { return row == RowType::Dirichlet ? "dirichlet" : "zero-flux"; }

namespace {

constexpr int kMinNodes = 16;

} // namespace

std::pair<double, double> grid_window(const ScaleFunction& s, double R)
{
    if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorCode::InvalidArgument, "truncation radius must be finite and > 0");
    const Interval& I = s.interval();
    const double e = I.e();
    auto end = [&](Side side) {
        const double p = I.endpoint(side);
        const double sign = side == Side::Lower ? -1.0 : 1.0;
        if (!std::isfinite(p)) {
            const double cut = e + sign * R;
            return side == Side::Lower ? std::max(cut, I.a()) : std::min(cut, I.b());
        }
        if (std::isfinite(s.limit(side))) return p;
        // finite but unapproachable: stop just inside
        return p - sign * std::ldexp(std::fabs(p - e), -20);
    };
    return {end(Side::Lower), end(Side::Upper)};
}

std::vector<double> make_skeleton(const ScaleFunction& s, double lo, double hi, const GridConfig& cfg)
{
    if (cfg.N < kMinNodes) fail(ErrorCode::InvalidArgument, "grid needs N >= 16");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        fail(ErrorCode::InvalidArgument, "grid window must be a finite nonempty interval");
    const double w = cfg.grading == Grading::Scale ? 1.0 : (cfg.grading == Grading::Uniform ? 0.0 : cfg.blend);
    if (!(w >= 0.0 && w <= 1.0)) fail(ErrorCode::InvalidArgument, "blend weight must lie in [0, 1]");

    const int N = cfg.N;
    std::vector<double> out;
    out.reserve(N + 1 + cfg.refinement.size());
    const double X = hi - lo;
    if (w == 0.0) {
        for (int k = 0; k <= N; ++k) out.push_back(k == N ? hi : lo + X * k / N);
    } else {
        const int M = std::max(1, cfg.prefine) * N;
        std::vector<double> px(M + 1), cs(M + 1, 0.0);
        for (int i = 0; i <= M; ++i) px[i] = i == M ? hi : lo + X * i / M;
        for (int i = 0; i < M; ++i) cs[i + 1] = cs[i] + s.increment(px[i], px[i + 1]);
        const double S = cs[M];
        if (!(S > 0.0) || !std::isfinite(S))
            fail(ErrorCode::DegenerateGrid, "scale increment over the grid window is " + format_extended(S));
        auto coord = [&](int i, double x) {
            const double si = i < 0 ? 0.0 : cs[i] + s.increment(px[i], x);
            return w * si / S + (1.0 - w) * (x - lo) / X;
        };
        std::vector<double> c(M + 1);
        for (int i = 0; i <= M; ++i) c[i] = w * cs[i] / S + (1.0 - w) * (px[i] - lo) / X;
        out.push_back(lo);
        int i = 0;
        for (int k = 1; k < N; ++k) {
            const double t = static_cast<double>(k) / N;
            while (i < M - 1 && c[i + 1] <= t) ++i;
            double a = px[i], b = px[i + 1];
            for (int it = 0; it < 48 && b - a > 1e-15 * X; ++it) {
                const double m = 0.5 * (a + b);
                (coord(i, m) < t ? a : b) = m;
            }
            const double x = 0.5 * (a + b);
            if (x > out.back()) out.push_back(x);
        }
        out.push_back(hi);
    }
    for (double r : cfg.refinement)
        if (r > lo && r < hi) out.push_back(r);
    std::sort(out.begin(), out.end());
    const double gap = 1e-13 * X;
    std::vector<double> uniq;
    uniq.reserve(out.size());
    for (double x : out)
        if (uniq.empty() || x - uniq.back() > gap) uniq.push_back(x);
    uniq.back() = hi;
    return uniq;
}

Grid build_grid(const DirichletSpaceSpec& spec, const GridConfig& cfg)
{
    const auto [lo, hi] = grid_window(spec.scale(), cfg.R);
    return build_grid_on(spec, make_skeleton(spec.scale(), lo, hi, cfg), cfg);
}

Grid build_grid_on(const DirichletSpaceSpec& spec, const std::vector<double>& skel, const GridConfig& cfg)
{
    if (skel.size() < static_cast<size_t>(kMinNodes))
        fail(ErrorCode::DegenerateGrid, "skeleton has fewer than 16 nodes");
    const ScaleFunction& s = spec.scale();
    const SpeedMeasure& m = spec.speed();
    const Interval& I = spec.interval();
    Grid g;
    g.skeleton = skel;
    g.lo = skel.front();
    g.hi = skel.back();
    g.R = cfg.R;
    const size_t K = skel.size();
    for (size_t k = 1; k < K; ++k)
        if (!(skel[k] > skel[k - 1])) fail(ErrorCode::InvalidArgument, "skeleton must be strictly increasing");
    if (!I.contains_closure(g.lo) || !I.contains_closure(g.hi))
        fail(ErrorCode::InvalidArgument, "skeleton leaves the interval");

    // boundary model
    for (Side side : {Side::Lower, Side::Upper}) {
        GridBoundary& B = side == Side::Lower ? g.lower : g.upper;
        const double end = side == Side::Lower ? g.lo : g.hi;
        const double p = I.endpoint(side);
        const auto& cls = spec.boundary(side);
        B.truncated = end != p;
        const bool exit_like = cls.s_approachable && !cls.s_regular;
        if (!B.truncated && !cls.s_approachable)
            fail(ErrorCode::DegenerateGrid, "grid reaches the unapproachable " + std::string(to_string(side)) + " end");
        if (spec.constrained(side) || exit_like) {
            B.row = RowType::Dirichlet;
            if (!B.truncated) {
                B.fixed = true;
            } else {
                const double tail = side == Side::Lower ? s.increment(p, end) : s.increment(end, p);
                if (tail > 0.0) B.leak = 1.0 / tail;
                else B.fixed = true;
            }
        } else if (cls.s_regular) {
            B.row = RowType::ZeroFlux;
        } else {
            B.row = cfg.truncation_row;
            B.fixed = cfg.truncation_row == RowType::Dirichlet;
        }
    }

    // skeleton cell masses; tails beyond a truncated end are folded in when finite
    g.skeleton_dm.assign(K, 0.0);
    for (size_t k = 0; k < K; ++k) {
        const double c = k == 0 ? g.lo : 0.5 * (skel[k - 1] + skel[k]);
        const double d = k + 1 == K ? g.hi : 0.5 * (skel[k] + skel[k + 1]);
        g.skeleton_dm[k] = m.mass(c, d);
    }
    for (Side side : {Side::Lower, Side::Upper}) {
        GridBoundary& B = side == Side::Lower ? g.lower : g.upper;
        const size_t k = side == Side::Lower ? 0 : K - 1;
        double& w = g.skeleton_dm[k];
        if (B.truncated) {
            const double tail = side == Side::Lower ? m.mass(I.a(), g.lo) : m.mass(g.hi, I.b());
            if (std::isfinite(tail)) {
                w += tail;
                B.tail_folded = true;
            }
        }
        if (!std::isfinite(w)) {
            if (!B.fixed)
                fail(ErrorCode::DegenerateGrid,
                     "infinite mass on the free " + std::string(to_string(side)) + " end node");
            w = 0.0;
        }
    }

    // nodes, merging zero scale increments
    g.node_of.assign(K, 0);
    g.x.push_back(skel[0]);
    g.dm.push_back(g.skeleton_dm[0]);
    for (size_t k = 1; k < K; ++k) {
        const double inc = s.increment(skel[k - 1], skel[k]);
        if (!std::isfinite(inc)) fail(ErrorCode::DegenerateGrid, "infinite scale increment inside the window");
        if (inc <= 0.0) {
            ++g.merged_cells;
            g.dm.back() += g.skeleton_dm[k];
        } else {
            g.ds.push_back(inc);
            g.x.push_back(skel[k]);
            g.dm.push_back(g.skeleton_dm[k]);
        }
        g.node_of[k] = static_cast<int>(g.x.size()) - 1;
    }
    if (g.x.size() < static_cast<size_t>(kMinNodes))
        fail(ErrorCode::DegenerateGrid, "merging left " + std::to_string(g.x.size()) + " nodes");
    for (size_t i = 0; i < g.dm.size(); ++i) {
        const bool pinned = (i == 0 && g.lower.fixed) || (i + 1 == g.dm.size() && g.upper.fixed);
        if (!(g.dm[i] > 0.0) && !pinned)
            fail(ErrorCode::DegenerateGrid, "zero mass at node x=" + format_extended(g.x[i]));
    }
    return g;
}

std::vector<double> Grid::sample(const TestFunction& f) const
{
    std::vector<double> v(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const bool at_lo = i == 0 && !lower.truncated, at_hi = i + 1 == x.size() && !upper.truncated;
        if ((at_lo || at_hi) && f.kind() == TestFunctionKind::CoreComposite)
            v[i] = f.boundary_value(at_lo ? Side::Lower : Side::Upper);
        else
            v[i] = f(x[i]);
    }
    if (lower.fixed) v.front() = 0.0;
    if (upper.fixed) v.back() = 0.0;
    return v;
}

std::vector<double> Grid::expand(const std::vector<double>& u) const
{
    if (u.size() != x.size()) fail(ErrorCode::InvalidArgument, "grid function has the wrong length");
    std::vector<double> out(skeleton.size());
    for (size_t k = 0; k < skeleton.size(); ++k) out[k] = u[node_of[k]];
    return out;
}

GeneratorMatrix assemble_generator(const Grid& g)
{
    const size_t n = g.size();
    GeneratorMatrix M;
    M.sub.assign(n, 0.0);
    M.diag.assign(n, 0.0);
    M.sup.assign(n, 0.0);
    M.dm = g.dm;
    M.lower = g.lower;
    M.upper = g.upper;
    M.conductance.resize(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) M.conductance[i] = 1.0 / g.ds[i];
    for (size_t i = 0; i < n; ++i) {
        const bool pinned = (i == 0 && g.lower.fixed) || (i + 1 == n && g.upper.fixed);
        if (pinned) continue;
        const double h = 0.5 / g.dm[i];
        if (i > 0) {
            M.sub[i] = h * M.conductance[i - 1];
            M.diag[i] -= M.sub[i];
        }
        if (i + 1 < n) {
            M.sup[i] = h * M.conductance[i];
            M.diag[i] -= M.sup[i];
        }
        if (i == 0) M.diag[i] -= h * g.lower.leak;
        if (i + 1 == n) M.diag[i] -= h * g.upper.leak;
    }
    return M;
}

std::vector<double> GeneratorMatrix::apply(const std::vector<double>& u) const
{
    const size_t n = size();
    std::vector<double> out(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double v = diag[i] * u[i];
        if (i > 0) v += sub[i] * u[i - 1];
        if (i + 1 < n) v += sup[i] * u[i + 1];
        out[i] = v;
    }
    return out;
}

namespace {

// Solve (w_i u_i) - [c_i (u_{i+1} - u_i) - c_{i-1} (u_i - u_{i-1})] = q_i with
// leak conductances at the ends, by eliminating towards the right and
// keeping every pivot in the form 1 + D r (no cancellation for tiny r).
std::vector<double> resistance_solve(const GeneratorMatrix& M, const std::vector<double>& w,
                                     const std::vector<double>& q)
{
    const size_t n = M.size();
    std::vector<double> u(n, 0.0);
    const size_t start = M.lower.fixed ? 1 : 0;
    const size_t end = M.upper.fixed ? n - 2 : n - 1;
    if (end < start || end >= n) fail(ErrorCode::SingularSystem, "no free nodes");
    std::vector<double> K(n, 0.0), S(n, 0.0), D(n, 0.0), Q(n, 0.0);
    K[start] = M.lower.fixed ? M.conductance[0] : M.lower.leak;
    for (size_t i = start; i <= end; ++i) {
        D[i] = w[i] + K[i];
        Q[i] = q[i] + S[i];
        if (i < end) {
            const double r = 1.0 / M.conductance[i];
            const double den = 1.0 + D[i] * r;
            K[i + 1] = D[i] / den;
            S[i + 1] = Q[i] / den;
        }
    }
    const double tot = D[end] + (M.upper.fixed ? M.conductance[end] : M.upper.leak);
    if (!(tot > 0.0) || !std::isfinite(tot))
        fail(ErrorCode::SingularSystem, "vanishing pivot in the tridiagonal solve");
    u[end] = Q[end] / tot;
    for (size_t i = end; i-- > start;) {
        const double r = 1.0 / M.conductance[i];
        u[i] = (u[i + 1] + r * Q[i]) / (1.0 + r * D[i]);
    }
    return u;
}

} // namespace

std::vector<double> resolvent(const GeneratorMatrix& M, const Grid& grid, double alpha, const std::vector<double>& f)
{
    if (!(alpha > 0.0)) fail(ErrorCode::InvalidArgument, "resolvent needs alpha > 0");
    const size_t n = M.size();
    if (f.size() != n || grid.size() != n) fail(ErrorCode::InvalidArgument, "grid function has the wrong length");
    std::vector<double> w(n), q(n);
    for (size_t i = 0; i < n; ++i) {
        w[i] = 2.0 * alpha * M.dm[i];
        q[i] = 2.0 * M.dm[i] * f[i];
    }
    return resistance_solve(M, w, q);
}

double resolvent_residual(const GeneratorMatrix& M, double alpha, const std::vector<double>& u,
                          const std::vector<double>& f)
{
    // componentwise backward error |r|_i / (|A| |u| + |b|)_i in flux form
    const size_t n = M.size();
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const bool pinned = (i == 0 && M.lower.fixed) || (i + 1 == n && M.upper.fixed);
        if (pinned) {
            worst = std::max(worst, u[i] == 0.0 ? 0.0 : 1.0);
            continue;
        }
        double r = 2.0 * alpha * M.dm[i] * u[i] - 2.0 * M.dm[i] * f[i];
        double scale = std::fabs(2.0 * alpha * M.dm[i] * u[i]) + std::fabs(2.0 * M.dm[i] * f[i]);
        if (i + 1 < n) {
            r -= M.conductance[i] * (u[i + 1] - u[i]);
            scale += M.conductance[i] * (std::fabs(u[i + 1]) + std::fabs(u[i]));
        } else {
            r += M.upper.leak * u[i];
            scale += M.upper.leak * std::fabs(u[i]);
        }
        if (i > 0) {
            r += M.conductance[i - 1] * (u[i] - u[i - 1]);
            scale += M.conductance[i - 1] * (std::fabs(u[i]) + std::fabs(u[i - 1]));
        } else {
            r += M.lower.leak * u[i];
            scale += M.lower.leak * std::fabs(u[i]);
        }
        if (scale > 0.0) worst = std::max(worst, std::fabs(r) / scale);
    }
    return worst;
}

std::vector<double> semigroup(const GeneratorMatrix& M, const Grid& grid, double t, const std::vector<double>& f,
                              int steps)
{
    if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "semigroup needs t > 0");
    if (steps < 1) fail(ErrorCode::InvalidArgument, "semigroup needs at least one step");
    const double beta = 2.0 * steps / t;
    std::vector<double> u = f;
    if (M.lower.fixed) u.front() = 0.0;
    if (M.upper.fixed) u.back() = 0.0;
    for (int k = 0; k < steps; ++k) {
        std::vector<double> v = resolvent(M, grid, beta, u);
        for (size_t i = 0; i < u.size(); ++i) u[i] = 2.0 * beta * v[i] - u[i];
        if (M.lower.fixed) u.front() = 0.0;
        if (M.upper.fixed) u.back() = 0.0;
    }
    return u;
}

double l2m_inner(const Grid& grid, const std::vector<double>& f, const std::vector<double>& g)
{
    if (f.size() != grid.size() || g.size() != grid.size())
        fail(ErrorCode::InvalidArgument, "grid function has the wrong length");
    double s = 0.0;
    for (size_t i = 0; i < f.size(); ++i) s += f[i] * g[i] * grid.dm[i];
    return s;
}

double l2m_norm(const Grid& grid, const std::vector<double>& f) { return std::sqrt(l2m_inner(grid, f, f)); }

double discrete_energy(const GeneratorMatrix& M, const std::vector<double>& u)
{
    const size_t n = M.size();
    double e = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) {
        const double d = u[i + 1] - u[i];
        e += M.conductance[i] * d * d;
    }
    e += M.lower.leak * u.front() * u.front() + M.upper.leak * u.back() * u.back();
    return 0.5 * e;
}

void write_grid_csv(std::ostream& os, const Grid& grid, const std::vector<double>& values)
{
    if (values.size() != grid.size()) fail(ErrorCode::InvalidArgument, "grid function has the wrong length");
    os << "x,value\n";
    char buf[64];
    for (size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid.x[i], values[i]);
        os << buf;
    }
}

} // namespace mosco1d
