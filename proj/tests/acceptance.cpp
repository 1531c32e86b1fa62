// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "mosco1d/mosco.hpp"
#include "oracles.hpp"

using namespace mosco1d;

namespace {

const Interval R = Interval::real_line();

struct Outcome {
    bool pass = false;
    std::string detail;
};

char buf[512];

template <class... A>
std::string fmt(const char* f, A... a)
{
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

CharacteristicSet cantor(const Interval& I = R, CellMasses m = {0.25, 0.5, {}}) { return CharacteristicSet::fat_cantor(I, m); }

std::vector<ConvergenceReport> g_cache_reports;

// ------------------------------------------------------------------ 1

Outcome bijection_roundtrip()
{
    std::vector<CharacteristicSet> fx;
    const Interval unit(0.0, 1.0, 0.5), half(-kInf, 4.0, 1.0);
    fx.push_back(CharacteristicSet::interval_union(unit, {{0.0, 0.3}, {0.3, 1.0}}));
    fx.push_back(set_union(CharacteristicSet::interval_union(R, {{0.0, 1.0}, {2.0, 3.0}}), cantor()));
    fx.push_back(set_union(CharacteristicSet::interval_union(R, {{-5.0, -2.0}}), cantor(R, {0.1, 0.7, {}})));
    fx.push_back(set_union(CharacteristicSet::interval_union(unit, {{0.2, 0.4}}), cantor(unit)));
    fx.push_back(cantor());
    fx.push_back(cantor(R, {0.5, 0.25, {}}));
    fx.push_back(cantor(R, {0.9, 0.9, {}}));
    fx.push_back(cantor(R, {0.25, 0.5, {{0, 0.75}, {3, 0.01}}}));
    fx.push_back(cantor(unit));
    fx.push_back(cantor(half));
    for (int n : {1, 3, 8, 32}) fx.push_back(comb_sequence(cantor(), n));
    fx.push_back(comb_sequence(cantor(R, {0.5, 0.25, {}}), 5));
    for (int n : {1, 2, 6, 20}) fx.push_back(window_sequence(cantor(), n));
    fx.push_back(window_sequence(cantor(half), 2));

    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    for (const auto& G : fx) {
        const ScaleFunction s = scale_from_set(G);
        const CharacteristicSet back = set_from_scale(s);
        const auto [lo, hi] = sampling_window(G.interval(), 10.0);
        std::uniform_real_distribution<double> u(lo, hi);
        for (int i = 0; i < 1000; ++i) {
            double c = u(rng), d = u(rng);
            if (c > d) std::swap(c, d);
            const double ref = G.measure(c, d);
            worst = std::max({worst, std::fabs(back.measure(c, d) - ref), std::fabs(s.increment(c, d) - ref)});
        }
    }
    return {worst <= 1e-10, fmt("fixtures=%zu intervals=1000 each, max deviation %.2e (tol 1e-10)", fx.size(), worst)};
}

// ------------------------------------------------------------------ 2

Outcome brownian_solver()
{
    const DirichletSpaceSpec bm(ScaleFunction::identity(R), SpeedMeasure::lebesgue(R), BoundaryCondition::Full);
    bool pass = true;
    std::string detail;
    for (double alpha : {0.5, 1.0, 2.0}) {
        std::vector<double> errs;
        for (int N : {500, 1000, 2000, 4000}) {
            GridConfig cfg;
            cfg.N = N;
            cfg.R = 20.0;
            const Grid g = build_grid(bm, cfg);
            const auto u = resolvent(assemble_generator(g), g, alpha, g.sample(TestFunction::gaussian()));
            double e = 0.0;
            for (size_t i = 0; i < g.size(); ++i)
                e = std::max(e, std::fabs(u[i] - oracle::brownian_resolvent_gaussian(alpha, g.x[i])));
            errs.push_back(e);
        }
        const bool mono = std::is_sorted(errs.rbegin(), errs.rend()) &&
                          std::adjacent_find(errs.begin(), errs.end()) == errs.end();
        pass = pass && mono && errs.back() <= 1e-3;
        detail += fmt("a=%g: %.2e..%.2e%s; ", alpha, errs.front(), errs.back(), mono ? "" : " (not monotone)");
    }
    return {pass, detail + "sup error at N=4000 <= 1e-3, decreasing over N=500..4000"};
}

// ------------------------------------------------------------------ 3, 4

struct ColumnSummary {
    bool all_mono = true, all_small = true;
    double worst_final = 0.0;
    std::string worst_cell;
};

ColumnSummary summarize(const ConvergenceReport& r, bool absorbing, double tol)
{
    ColumnSummary s;
    for (const auto& c : r.cells) {
        const ErrorColumn& col = absorbing ? c.to_F0 : c.to_F;
        s.all_mono = s.all_mono && col.monotone_tail;
        s.all_small = s.all_small && col.final_error <= tol;
        if (col.final_error >= s.worst_final) {
            s.worst_final = col.final_error;
            s.worst_cell = fmt("a=%g,%s", c.alpha, c.test_fn.c_str());
        }
    }
    return s;
}

Outcome convergence_scenario(const std::string& name, ConvergenceReport* keep = nullptr)
{
    const SpecScenario scn = resolve(paper_example(name).scenario);
    const ConvergenceReport rep = run_resolved(scn);
    if (keep) *keep = rep;
    const bool absorbing = rep.bc_limit == BoundaryCondition::Absorbing;
    const ColumnSummary s = summarize(rep, absorbing, 1e-2);
    bool pass = s.all_mono && s.all_small && rep.nesting.ok;
    std::string extra;
    if (name == "example51_recurrent_to_transient") {
        pass = pass && rep.corollary == CorollaryStatus::Condition1;
        extra = fmt(", corollary %s", rep.corollary ? to_string(*rep.corollary) : "-");
    }
    return {pass, fmt("monotone tails %s, worst final error %.3e at %s (tol 1e-2), nesting %s, verdict %s%s",
                      s.all_mono ? "all" : "not all", s.worst_final, s.worst_cell.c_str(), rep.nesting.ok ? "ok" : "failed",
                      to_string(rep.verdict()), extra.c_str())};
}

// ------------------------------------------------------------------ 5

Outcome negative_example()
{
    const SpecScenario scn = resolve(paper_example("example31").scenario);
    const ConvergenceReport rep = run_resolved(scn);
    bool full_ok = true, sep_ok = true;
    double worst_full = 0.0, worst_gap = kInf;
    for (const auto& c : rep.cells) {
        worst_full = std::max(worst_full, c.to_F.final_error);
        full_ok = full_ok && c.to_F.final_error < 1e-2;
        const double delta = std::max(1e-3, 10.0 * c.to_F.final_error);
        for (size_t i = 0; i < rep.indices.size(); ++i) {
            if (rep.indices[i] < 8) continue;
            worst_gap = std::min(worst_gap, c.to_F0.errors[i] / delta);
            sep_ok = sep_ok && c.to_F0.errors[i] >= delta;
        }
    }
    return {full_ok && sep_ok,
            fmt("full-limit final errors max %.3e (need < 1e-2); min over n>=8 of e_F0/delta %.3f (need >= 1); "
                "verdicts F=%s F0=%s",
                worst_full, worst_gap, to_string(rep.verdict_F), to_string(rep.verdict_F0))};
}

// ------------------------------------------------------------------ 6

Outcome global_properties()
{
    const CharacteristicSet G = cantor();
    const ScaleFunction st = scale_from_set(G);
    const SpeedMeasure leb = SpeedMeasure::lebesgue(R), cau = SpeedMeasure::cauchy(R);
    const SpeedMeasure mF = SpeedMeasure::stieltjes_F(st, 0.5);
    const ScaleFunction id = ScaleFunction::identity(R);
    const std::vector<int> idx{1, 2, 4, 8, 16, 32};
    auto spec = [](const ScaleFunction& s, const SpeedMeasure& m, BoundaryCondition bc = BoundaryCondition::Full) {
        return DirichletSpaceSpec(s, m, bc);
    };
    auto all_of_seq = [&](auto make, auto pred) {
        for (int n : idx)
            if (!pred(classify_global(make(n)))) return false;
        return true;
    };
    const auto A = BoundaryCondition::Absorbing;
    int ok = 0;
    std::string failed;
    auto tally = [&](bool b, const char* what) {
        if (b) ++ok;
        else failed += std::string(failed.empty() ? "" : ", ") + what;
    };
    tally(all_of_seq([&](int n) { return spec(scale_from_set(comb_sequence(G, n)), leb); },
                     [](const GlobalClassification& g) { return g.recurrence == Recurrence::Recurrent; }),
          "comb recurrent");
    tally(classify_global(spec(st, leb)).recurrence == Recurrence::Transient, "cantor transient");
    tally(all_of_seq([&](int n) { return spec(scale_from_set(window_sequence(G, n)), leb, A); },
                     [](const GlobalClassification& g) { return g.recurrence == Recurrence::Transient; }),
          "windows transient");
    tally(classify_global(spec(id, leb, A)).recurrence == Recurrence::Recurrent, "brownian recurrent");
    tally(all_of_seq([&](int n) { return spec(scale_from_set(window_sequence(G, n)), cau, A); },
                     [](const GlobalClassification& g) { return g.conservative == false; }),
          "windows finite m non-conservative");
    tally(classify_global(spec(id, cau, A)).conservative == true, "natural scale finite m conservative");
    tally(all_of_seq([&](int n) { return spec(scale_from_set(comb_sequence(G, n)), mF); },
                     [](const GlobalClassification& g) { return g.conservative == true; }),
          "comb stieltjes conservative");
    const DirichletSpaceSpec lim = spec(st, mF);
    tally(classify_global(lim).conservative == false, "cantor stieltjes non-conservative");

    // the lower Feller integral against direct quadrature of |F| on (s(-inf), 0)
    const double lo = st.limit(Side::Lower);
    boost::math::quadrature::tanh_sinh<double> ts;
    const double direct = ts.integrate([&](double y) { return std::fabs(mF.stieltjes_profile(y)); }, lo, 0.0);
    const double feller = lim.boundary(Side::Lower).feller_value;
    const double rel = std::fabs(feller - direct) / direct;
    return {ok == 8 && rel <= 1e-2,
            fmt("%d/8 classifications%s%s; lower Feller %.6f vs int|F| %.6f (rel %.1e, tol 1e-2)", ok,
                failed.empty() ? "" : " failed: ", failed.c_str(), feller, direct, rel)};
}

// ------------------------------------------------------------------ 7

Outcome structural_invariants()
{
    std::vector<std::string> bad;
    const CharacteristicSet G = cantor();
    const SpeedMeasure cau = SpeedMeasure::cauchy(R);

    // resolvent identity, m-symmetry, sub-Markov on a comb grid
    {
        const DirichletSpaceSpec spec(scale_from_set(comb_sequence(G, 8)), cau, BoundaryCondition::Full);
        GridConfig cfg;
        cfg.grading = Grading::Blend;
        const Grid g = build_grid(spec, cfg);
        const auto M = assemble_generator(g);
        const auto f = g.sample(TestFunction::gaussian()), h = g.sample(TestFunction::mollified_indicator());
        const double a = 0.5, b = 2.0;
        const auto ga = resolvent(M, g, a, f), gb = resolvent(M, g, b, f), gab = resolvent(M, g, a, gb);
        std::vector<double> d(g.size());
        for (size_t i = 0; i < d.size(); ++i) d[i] = ga[i] - gb[i] - (b - a) * gab[i];
        if (l2m_norm(g, d) > 1e-9 * l2m_norm(g, ga)) bad.push_back("resolvent identity");
        const auto gh = resolvent(M, g, a, h);
        const double l = l2m_inner(g, ga, h), r = l2m_inner(g, f, gh);
        if (std::fabs(l - r) > 1e-10 * std::fabs(l)) bad.push_back("m-symmetry");
        const auto one = resolvent(M, g, b, std::vector<double>(g.size(), 1.0));
        for (size_t i = 0; i < g.size(); ++i)
            if (gb[i] < -1e-14 || b * gb[i] > 1.0 + 1e-12 || b * one[i] > 1.0 + 1e-12) {
                bad.push_back("sub-Markov");
                break;
            }
    }

    // Galerkin energy (f, G_a f) under grid doubling: the error must at least halve, up to a factor 1.5
    std::string galerkin;
    {
        const DirichletSpaceSpec bm(ScaleFunction::identity(R), SpeedMeasure::lebesgue(R), BoundaryCondition::Full);
        const double a = 1.0;
        boost::math::quadrature::tanh_sinh<double> ts;
        const double exact = ts.integrate(
            [&](double x) { return std::exp(-x * x) * oracle::brownian_resolvent_gaussian(a, x); }, -20.0, 20.0);
        std::vector<double> err;
        for (int N : {500, 1000, 2000, 4000}) {
            GridConfig cfg;
            cfg.N = N;
            const Grid g = build_grid(bm, cfg);
            const auto f = g.sample(TestFunction::gaussian());
            err.push_back(std::fabs(l2m_inner(g, f, resolvent(assemble_generator(g), g, a, f)) - exact));
        }
        bool ok = true;
        for (size_t i = 0; i + 1 < err.size(); ++i) ok = ok && err[i] / err[i + 1] >= 2.0 / 1.5;
        if (!ok) bad.push_back("Galerkin halving");
        galerkin = fmt("energy errors %.1e..%.1e", err.front(), err.back());
    }

    // self-convergence of a constant sequence
    double self = 0.0;
    {
        Scenario s("constant", cau);
        s.set_at = [G](int) { return G; };
        s.limit_set = G;
        s.test_functions = default_battery();
        s.grid.grading = Grading::Blend;
        const auto rep = run_convergence(s);
        for (const auto& c : rep.cells)
            for (double e : c.to_F.errors) self = std::max(self, e);
        if (self > 10.0 * kSolverTolerance) bad.push_back("self-convergence");
    }

    // comb specs form a chain of regular subspaces ending at the limit
    {
        const SpeedMeasure leb = SpeedMeasure::lebesgue(R);
        std::vector<DirichletSpaceSpec> chain;
        for (int n : {1, 2, 4, 8, 16, 32})
            chain.emplace_back(scale_from_set(comb_sequence(G, n)), leb, BoundaryCondition::Full);
        chain.emplace_back(scale_from_set(G), leb, BoundaryCondition::Full);
        bool ok = true;
        for (size_t i = 0; i + 1 < chain.size(); ++i) ok = ok && is_subspace(chain[i + 1], chain[i]).is_subspace;
        const DirichletSpaceSpec bm(ScaleFunction::identity(R), leb, BoundaryCondition::Full);
        ok = ok && is_subspace(chain.back(), bm).proper && is_subspace(chain[3], chain[2]).proper;
        if (!ok) bad.push_back("subspace chain");
    }

    std::string list;
    for (const auto& b : bad) list += (list.empty() ? "" : ", ") + b;
    return {bad.empty(), fmt("%s; self-convergence max %.1e (tol 1e-9)%s%s", galerkin.c_str(), self,
                             bad.empty() ? "" : "; failed: ", list.c_str())};
}

// ------------------------------------------------------------------ 8

Outcome transform_equivariance()
{
    const Scenario base = paper_example("example51_recurrent_to_transient").scenario;
    const SpecScenario scn = resolve(base);
    const ConvergenceReport rep = run_resolved(scn);

    Scenario coarse = base;
    coarse.grid.N = base.grid.N / 2;
    const ConvergenceReport rep_half = run_resolved(resolve(coarse));
    double disc = 0.0;
    for (size_t k = 0; k < rep.cells.size(); ++k)
        for (size_t i = 0; i < rep.indices.size(); ++i) {
            disc = std::max(disc, std::fabs(rep.cells[k].to_F.errors[i] - rep_half.cells[k].to_F.errors[i]));
            disc = std::max(disc, std::fabs(rep.cells[k].to_F0.errors[i] - rep_half.cells[k].to_F0.errors[i]));
        }

    const ScaleFunction j = ScaleFunction::sine_perturbed(R, 0.5);
    const ConvergenceReport img = run_resolved(transform(scn, j));
    double worst = 0.0;
    for (size_t k = 0; k < rep.cells.size(); ++k)
        for (size_t i = 0; i < rep.indices.size(); ++i) {
            worst = std::max(worst, std::fabs(rep.cells[k].to_F.errors[i] - img.cells[k].to_F.errors[i]));
            worst = std::max(worst, std::fabs(rep.cells[k].to_F0.errors[i] - img.cells[k].to_F0.errors[i]));
        }
    const bool same = rep.verdict_F == img.verdict_F && rep.verdict_F0 == img.verdict_F0;
    return {same && worst <= 5.0 * disc,
            fmt("verdicts %s/%s vs %s/%s; max error difference %.3e vs 5 x disc tol %.3e", to_string(rep.verdict_F),
                to_string(rep.verdict_F0), to_string(img.verdict_F), to_string(img.verdict_F0), worst, 5.0 * disc)};
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "bijection roundtrip", bijection_roundtrip},
        {2, "Brownian resolvent vs closed form", brownian_solver},
        {3, "comb sequence to the fat-Cantor limit", [] { return convergence_scenario("example51_recurrent_to_transient"); }},
        {4, "windows to the Brownian limit", [] { return convergence_scenario("example51_transient_to_recurrent"); }},
        {5, "finite speed separates F and F0", negative_example},
        {6, "global-property instability", global_properties},
        {7, "structural invariants", structural_invariants},
        {8, "spatial-transform equivariance", transform_equivariance},
    };
    int failures = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
