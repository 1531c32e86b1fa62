#include "mosco1d/mosco.hpp"
#include "mosco1d/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

namespace mosco1d {

const char* to_string(Direction d) { return d == Direction::Decreasing ? "decreasing" : "increasing"; }

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::ConvergenceObserved: return "ConvergenceObserved";
    case Verdict::NoConvergence: return "NoConvergence";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(CorollaryStatus c)
{
    switch (c) {
    case CorollaryStatus::Condition1: return "Condition1";
    case CorollaryStatus::Condition2: return "Condition2";
    case CorollaryStatus::Neither: return "Neither";
    }
    return "?";
}

void Scenario::validate() const
{
    if (!set_at) fail(ErrorCode::InvalidArgument, "scenario '" + name + "' has no set sequence");
    if (indices.empty()) fail(ErrorCode::InvalidArgument, "scenario needs at least one index");
    for (size_t i = 1; i < indices.size(); ++i)
        if (indices[i] <= indices[i - 1]) fail(ErrorCode::InvalidArgument, "indices must increase strictly");
    if (alphas.empty()) fail(ErrorCode::InvalidArgument, "scenario needs at least one alpha");
    for (double a : alphas)
        if (!(a > 0.0)) fail(ErrorCode::InvalidArgument, "alphas must be positive");
    if (test_functions.empty()) fail(ErrorCode::InvalidArgument, "scenario needs at least one test function");
    if (!(tolerance > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
    if (limit_set && limit_set->interval() != interval())
        fail(ErrorCode::InvalidArgument, "limit set and speed measure live on different intervals");
}

// ---------------------------------------------------------------- hypotheses

namespace {

std::string span_text(const InclusionViolation& v)
{
    return "(" + format_extended(v.c) + ", " + format_extended(v.d) + ") excess " + format_extended(v.excess);
}

double inclusion_tol(const CharacteristicSet& A, const CharacteristicSet& B)
{
    return 10.0 * std::max(A.tolerance(), B.tolerance());
}

} // namespace

NestingResult check_nested_domains(const std::vector<CharacteristicSet>& seq,
                                   const std::optional<CharacteristicSet>& limit, Direction direction)
{
    NestingResult out;
    if (seq.empty()) return out;
    const Interval& I = seq.front().interval();
    const CharacteristicSet lim = limit ? *limit : CharacteristicSet::full(I);
    const auto [lo, hi] = sampling_window(I);
    auto check = [&](const CharacteristicSet& A, const CharacteristicSet& B, const std::string& what) {
        if (!out.ok) return;
        auto v = find_inclusion_violation(A, B, lo, hi, inclusion_tol(A, B));
        if (v) {
            out.ok = false;
            out.violation = v;
            out.message = what + " fails on " + span_text(*v);
        }
    };
    if (direction == Direction::Decreasing) {
        check(lim, seq.back(), "limit within the last set");
        for (size_t i = 1; i < seq.size(); ++i)
            check(seq[i], seq[i - 1], "set " + std::to_string(i) + " within set " + std::to_string(i - 1));
    } else {
        for (size_t i = 1; i < seq.size(); ++i)
            check(seq[i - 1], seq[i], "set " + std::to_string(i - 1) + " within set " + std::to_string(i));
        for (size_t i = 0; i < seq.size(); ++i) check(seq[i], lim, "set " + std::to_string(i) + " within the limit");
        if (!out.ok) return out;
        const double c = std::max(I.a(), I.e() - 1.0), d = std::min(I.b(), I.e() + 1.0);
        const double target = lim.measure(c, d);
        double prev = kInf;
        for (size_t i = 0; i < seq.size(); ++i) {
            const double deficit = target - seq[i].measure(c, d);
            if (deficit > prev + inclusion_tol(seq[i], lim)) {
                out.ok = false;
                out.message = "coverage deficit grows at set " + std::to_string(i);
                return out;
            }
            prev = deficit;
        }
        if (prev > 1e-3 * (d - c)) {
            out.ok = false;
            out.message = "coverage deficit " + format_extended(prev) + " on the probe window does not vanish";
        }
    }
    if (out.ok) out.message = std::string(to_string(direction)) + " chain verified";
    return out;
}

CorollaryStatus corollary31_check(const SpeedMeasure& m, const std::optional<CharacteristicSet>& G,
                                  const std::vector<CharacteristicSet>& seq)
{
    if (std::isinf(m.total_left()) && std::isinf(m.total_right())) return CorollaryStatus::Condition1;
    const Interval& I = m.interval();
    const ScaleFunction sG = G ? scale_from_set(*G) : ScaleFunction::identity(I);
    const auto limG = scale_limits(sG);
    std::vector<std::pair<double, double>> limits_n;
    for (const auto& Gn : seq) limits_n.push_back(scale_limits(scale_from_set(Gn)));
    for (Side side : {Side::Lower, Side::Upper}) {
        const double base = side == Side::Lower ? limG.first : limG.second;
        if (!std::isfinite(base)) continue;
        bool witnessed = false;
        for (const auto& l : limits_n)
            if (std::isfinite(side == Side::Lower ? l.first : l.second)) witnessed = true;
        if (!witnessed) return CorollaryStatus::Neither;
    }
    return CorollaryStatus::Condition2;
}

// ---------------------------------------------------------------- resolution

SpecScenario resolve(const Scenario& scn)
{
    scn.validate();
    const Interval& I = scn.interval();
    SpecScenario out;
    out.name = scn.name;
    out.indices = scn.indices;
    out.bc_limit = scn.bc_limit;
    out.alphas = scn.alphas;
    out.test_functions = scn.test_functions;
    out.tolerance = scn.tolerance;
    out.grid = scn.grid;

    std::vector<CharacteristicSet> sets;
    for (int n : scn.indices) {
        CharacteristicSet G = scn.set_at(n);
        if (G.interval() != I)
            fail(ErrorCode::InvalidArgument, "set " + std::to_string(n) + " lives on another interval");
        if (scn.direction == Direction::Increasing && !G.is_open())
            fail(ErrorCode::RequiresOpenSet, "increasing chains need open sets (index " + std::to_string(n) + ")");
        sets.push_back(std::move(G));
    }
    out.nesting = check_nested_domains(sets, scn.limit_set, scn.direction);
    if (scn.direction == Direction::Decreasing) out.corollary = corollary31_check(scn.speed, scn.limit_set, sets);

    for (const auto& G : sets) out.sequence.emplace_back(scale_from_set(G), scn.speed, scn.bc_sequence);
    const ScaleFunction s_lim = scn.limit_set ? scale_from_set(*scn.limit_set) : ScaleFunction::identity(I);
    out.limits.emplace_back(s_lim, scn.speed, BoundaryCondition::Absorbing);
    out.limits.emplace_back(s_lim, scn.speed, BoundaryCondition::Full);

    const auto [lo, hi] = grid_window(s_lim, scn.grid.R);
    auto& refine = out.grid.refinement;
    for (const auto& G : sets)
        for (double b : G.breakpoints(lo, hi)) refine.push_back(b);
    if (scn.limit_set)
        for (double b : scn.limit_set->breakpoints(lo, hi)) refine.push_back(b);
    std::sort(refine.begin(), refine.end());
    refine.erase(std::unique(refine.begin(), refine.end()), refine.end());
    out.skeleton = make_skeleton(s_lim, lo, hi, out.grid);
    return out;
}

SpecScenario transform(const SpecScenario& scn, const ScaleFunction& j)
{
    check_homeomorphism(j);
    SpecScenario out = scn;
    out.name = scn.name + " o j^-1";
    out.sequence.clear();
    out.limits.clear();
    out.test_functions.clear();
    for (const auto& s : scn.sequence) out.sequence.push_back(spatial_transform(s, j));
    for (const auto& s : scn.limits) out.limits.push_back(spatial_transform(s, j));
    for (const auto& f : scn.test_functions) out.test_functions.push_back(f.transformed(j));
    const Interval& I = j.interval();
    auto image = [&](double x) {
        if (x == I.a()) return j.limit(Side::Lower);
        if (x == I.b()) return j.limit(Side::Upper);
        return j.eval(x);
    };
    const double lo = image(scn.skeleton.front()), hi = image(scn.skeleton.back());
    for (double& r : out.grid.refinement) r = image(r);
    out.skeleton = make_skeleton(out.limits.back().scale(), lo, hi, out.grid);
    return out;
}

// ---------------------------------------------------------------- runs

bool monotone_tail(const std::vector<double>& e, double floor)
{
    if (e.size() < 2) return true;
    for (size_t i = e.size() / 2; i + 1 < e.size(); ++i)
        if (e[i + 1] > 1.05 * e[i] + floor) return false;
    return true;
}

namespace {

struct Solved {
    SpecMeta meta;
    std::vector<double> weights;                // skeleton cell masses
    std::vector<std::vector<double>> solutions; // [alpha][test] on the skeleton
};

Solved solve_spec(const DirichletSpaceSpec& spec, const SpecScenario& scn)
{
    Solved out;
    const Grid g = build_grid_on(spec, scn.skeleton, scn.grid);
    const GeneratorMatrix M = assemble_generator(g);
    out.meta.nodes = static_cast<int>(g.size());
    out.meta.R = g.R;
    out.meta.merged_cells = g.merged_cells;
    out.weights = g.skeleton_dm;
    std::vector<std::vector<double>> samples;
    for (const auto& f : scn.test_functions) samples.push_back(g.sample(f));
    for (double a : scn.alphas) {
        for (const auto& f : samples) {
            const auto u = resolvent(M, g, a, f);
            const double res = resolvent_residual(M, a, u, f);
            if (!(res <= kSolverTolerance))
                fail(ErrorCode::NotConverged, "resolvent residual " + format_extended(res) + " exceeds tolerance");
            out.meta.max_residual = std::max(out.meta.max_residual, res);
            out.solutions.push_back(g.expand(u));
        }
    }
    return out;
}

double weighted_distance(const std::vector<double>& w, const std::vector<double>& u, const std::vector<double>& v)
{
    double s = 0.0;
    for (size_t k = 0; k < w.size(); ++k) {
        const double d = u[k] - v[k];
        s += w[k] * d * d;
    }
    return std::sqrt(s);
}

Verdict column_verdict(const ErrorColumn& c, double tol, double delta, bool nesting_ok)
{
    if (c.final_error <= tol && c.monotone_tail && nesting_ok) return Verdict::ConvergenceObserved;
    bool separated = !c.errors.empty();
    for (size_t i = c.errors.size() / 2; i < c.errors.size(); ++i)
        if (c.errors[i] < delta) separated = false;
    return separated ? Verdict::NoConvergence : Verdict::Inconclusive;
}

Verdict combine(const std::vector<Verdict>& v)
{
    if (v.empty()) return Verdict::Inconclusive;
    for (Verdict x : v)
        if (x != v.front()) return Verdict::Inconclusive;
    return v.front();
}

} // namespace

ConvergenceReport run_resolved(const SpecScenario& scn, int threads)
{
    std::vector<const DirichletSpaceSpec*> specs;
    for (const auto& s : scn.sequence) specs.push_back(&s);
    for (const auto& s : scn.limits) specs.push_back(&s);
    std::vector<std::optional<Solved>> solved(specs.size());
    std::vector<std::exception_ptr> errors(specs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < specs.size();) {
            try {
                solved[i] = solve_spec(*specs[i], scn);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(specs.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    ConvergenceReport rep;
    rep.scenario = scn.name;
    rep.indices = scn.indices;
    rep.bc_limit = scn.bc_limit;
    rep.tolerance = scn.tolerance;
    rep.nesting = scn.nesting;
    rep.corollary = scn.corollary;
    const size_t nseq = scn.sequence.size();
    for (size_t i = 0; i < nseq; ++i) {
        rep.meta.push_back(solved[i]->meta);
        rep.meta.back().n = scn.indices[i];
    }
    const Solved& F0 = *solved[nseq];
    const Solved& F = *solved[nseq + 1];
    rep.limit_meta = {F0.meta, F.meta};
    const std::vector<double>& w = F.weights;

    std::vector<Verdict> v0, v1;
    size_t cell = 0;
    for (double a : scn.alphas) {
        for (const auto& f : scn.test_functions) {
            CellReport c;
            c.alpha = a;
            c.test_fn = f.name();
            for (size_t i = 0; i < nseq; ++i) {
                const auto& u = solved[i]->solutions[cell];
                c.to_F0.errors.push_back(weighted_distance(w, u, F0.solutions[cell]));
                c.to_F.errors.push_back(weighted_distance(w, u, F.solutions[cell]));
            }
            for (ErrorColumn* col : {&c.to_F0, &c.to_F}) {
                col->final_error = col->errors.back();
                col->monotone_tail = monotone_tail(col->errors);
            }
            const double d0 = std::max(1e-3, 10.0 * c.to_F.final_error);
            const double d1 = std::max(1e-3, 10.0 * c.to_F0.final_error);
            c.to_F0.verdict = column_verdict(c.to_F0, scn.tolerance, d0, scn.nesting.ok);
            c.to_F.verdict = column_verdict(c.to_F, scn.tolerance, d1, scn.nesting.ok);
            v0.push_back(c.to_F0.verdict);
            v1.push_back(c.to_F.verdict);
            rep.cells.push_back(std::move(c));
            ++cell;
        }
    }
    rep.verdict_F0 = combine(v0);
    rep.verdict_F = combine(v1);
    return rep;
}

ConvergenceReport run_convergence(const Scenario& scn, int threads) { return run_resolved(resolve(scn), threads); }

// ---------------------------------------------------------------- output

namespace {

std::string num(double v, const char* fmt = "%.17g")
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

} // namespace

void write_errors_csv(std::ostream& os, const ConvergenceReport& r)
{
    os << "n,alpha,test_fn,error_to_limit_F0,error_to_limit_F,N,R\n";
    for (const auto& c : r.cells)
        for (size_t i = 0; i < r.indices.size(); ++i)
            os << r.indices[i] << ',' << num(c.alpha) << ',' << c.test_fn << ',' << num(c.to_F0.errors[i]) << ','
               << num(c.to_F.errors[i]) << ',' << r.meta[i].nodes << ',' << num(r.meta[i].R) << '\n';
}

void write_report_markdown(std::ostream& os, const ConvergenceReport& r)
{
    os << "# Convergence report: " << r.scenario << "\n\n";
    os << "- limit boundary condition: " << to_string(r.bc_limit) << "\n";
    os << "- verdict (" << (r.bc_limit == BoundaryCondition::Absorbing ? "absorbing" : "full")
       << " limit): **" << to_string(r.verdict()) << "**\n";
    os << "- verdict against the absorbing limit F0: " << to_string(r.verdict_F0) << "\n";
    os << "- verdict against the full limit F: " << to_string(r.verdict_F) << "\n";
    os << "- tolerance: " << num(r.tolerance, "%g") << "\n";
    os << "- nesting: " << (r.nesting.ok ? "ok" : "violated") << " (" << r.nesting.message << ")\n";
    os << "- corollary check (boundary masses): " << (r.corollary ? to_string(*r.corollary) : "not applicable")
       << "\n\n";

    for (int col = 0; col < 2; ++col) {
        os << "## Errors to the " << (col == 0 ? "absorbing limit F0" : "full limit F") << "\n\n";
        os << "| alpha | test function |";
        for (int n : r.indices) os << " n=" << n << " |";
        os << " monotone tail | verdict |\n|---|---|";
        for (size_t i = 0; i < r.indices.size(); ++i) os << "---|";
        os << "---|---|\n";
        for (const auto& c : r.cells) {
            const ErrorColumn& e = col == 0 ? c.to_F0 : c.to_F;
            os << "| " << num(c.alpha, "%g") << " | " << c.test_fn << " |";
            for (double v : e.errors) os << ' ' << num(v, "%.4e") << " |";
            os << ' ' << (e.monotone_tail ? "yes" : "no") << " | " << to_string(e.verdict) << " |\n";
        }
        os << "\n";
    }

    os << "## Discretization\n\n| spec | nodes | R | merged cells | max residual |\n|---|---|---|---|---|\n";
    for (const auto& m : r.meta)
        os << "| n=" << m.n << " | " << m.nodes << " | " << num(m.R, "%g") << " | " << m.merged_cells << " | "
           << num(m.max_residual, "%.2e") << " |\n";
    const char* names[] = {"limit F0", "limit F"};
    for (size_t i = 0; i < r.limit_meta.size(); ++i) {
        const auto& m = r.limit_meta[i];
        os << "| " << names[i] << " | " << m.nodes << " | " << num(m.R, "%g") << " | " << m.merged_cells << " | "
           << num(m.max_residual, "%.2e") << " |\n";
    }
}

// ---------------------------------------------------------------- named examples

CharacteristicSet default_fat_cantor(const Interval& I) { return CharacteristicSet::fat_cantor(I, CellMasses{}); }

std::vector<TestFunction> default_battery()
{
    std::vector<TestFunction> out;
    for (const auto& n : TestFunction::battery_names()) out.push_back(TestFunction::by_name(n));
    return out;
}

std::vector<std::string> paper_example_names()
{
    return {"example31", "example51_recurrent_to_transient", "example51_transient_to_recurrent",
            "example52_nonconservative_to_conservative", "example52_conservative_to_nonconservative"};
}

namespace {

GlobalClassification cls(Recurrence r, std::optional<bool> conservative)
{
    GlobalClassification g;
    g.recurrence = r;
    g.conservative = conservative;
    return g;
}

Scenario base_scenario(const std::string& name, const SpeedMeasure& m)
{
    Scenario s(name, m);
    s.test_functions = default_battery();
    s.grid.grading = Grading::Blend;
    return s;
}

} // namespace

PaperExample paper_example(const std::string& name)
{
    const Interval I = Interval::real_line();
    const CharacteristicSet G = default_fat_cantor(I);
    auto comb = [G](int n) { return comb_sequence(G, n); };
    auto windows = [G](int n) { return window_sequence(G, n); };
    PaperExample ex{base_scenario(name, SpeedMeasure::lebesgue(I)), {}};
    Scenario& s = ex.scenario;
    ExpectedOutcome& x = ex.expected;
    if (name == "example31") {
        s.speed = SpeedMeasure::cauchy(I);
        s.set_at = comb;
        s.limit_set = G;
        x.approximants = cls(Recurrence::Recurrent, true);
        x.limit = cls(Recurrence::NotClassified, std::nullopt);
        x.corollary = CorollaryStatus::Neither;
        x.verdict_F = Verdict::ConvergenceObserved;
        x.verdict_F0 = Verdict::NoConvergence;
    } else if (name == "example51_recurrent_to_transient") {
        s.set_at = comb;
        s.limit_set = G;
        x.approximants = cls(Recurrence::Recurrent, true);
        x.limit = cls(Recurrence::Transient, false);
        x.corollary = CorollaryStatus::Condition1;
        x.verdict_F = x.verdict_F0 = Verdict::ConvergenceObserved;
    } else if (name == "example51_transient_to_recurrent") {
        s.set_at = windows;
        s.direction = Direction::Increasing;
        s.bc_sequence = s.bc_limit = BoundaryCondition::Absorbing;
        x.approximants = cls(Recurrence::Transient, false);
        x.limit = cls(Recurrence::Recurrent, true);
        x.verdict_F = x.verdict_F0 = Verdict::ConvergenceObserved;
    } else if (name == "example52_nonconservative_to_conservative") {
        s.speed = SpeedMeasure::cauchy(I);
        s.set_at = windows;
        s.direction = Direction::Increasing;
        s.bc_sequence = s.bc_limit = BoundaryCondition::Absorbing;
        x.approximants = cls(Recurrence::Transient, false);
        x.limit = cls(Recurrence::Recurrent, true);
        x.verdict_F = x.verdict_F0 = Verdict::ConvergenceObserved;
    } else if (name == "example52_conservative_to_nonconservative") {
        s.speed = SpeedMeasure::stieltjes_F(scale_from_set(G), 0.5);
        s.set_at = comb;
        s.limit_set = G;
        x.approximants = cls(Recurrence::Recurrent, true);
        x.limit = cls(Recurrence::Transient, false);
        x.corollary = CorollaryStatus::Condition1;
        x.verdict_F = x.verdict_F0 = Verdict::ConvergenceObserved;
    } else {
        fail(ErrorCode::UnknownExample, "unknown example '" + name + "'");
    }
    return ex;
}

} // namespace mosco1d
