#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "mosco1d/discretize.hpp"
#include "mosco1d/error.hpp"
#include "oracles.hpp"

using namespace mosco1d;

namespace {

const Interval R = Interval::real_line();

DirichletSpaceSpec brownian()
{
    return DirichletSpaceSpec(ScaleFunction::identity(R), SpeedMeasure::lebesgue(R), BoundaryCondition::Full);
}

DirichletSpaceSpec cantor_spec(const SpeedMeasure& m, BoundaryCondition bc)
{
    return DirichletSpaceSpec(scale_from_set(CharacteristicSet::fat_cantor(R, CellMasses{0.25, 0.5, {}})), m, bc);
}

GridConfig cfg(int N, double R_, Grading g = Grading::Scale)
{
    GridConfig c;
    c.N = N;
    c.R = R_;
    c.grading = g;
    return c;
}

double sup_error_brownian(int N, double alpha)
{
    const Grid g = build_grid(brownian(), cfg(N, 20.0));
    const auto M = assemble_generator(g);
    const auto u = resolvent(M, g, alpha, g.sample(TestFunction::gaussian()));
    double err = 0.0;
    for (size_t i = 0; i < g.size(); ++i)
        err = std::max(err, std::fabs(u[i] - oracle::brownian_resolvent_gaussian(alpha, g.x[i])));
    return err;
}

} // namespace

TEST_CASE("Brownian grid is uniform")
{
    const Grid g = build_grid(brownian(), cfg(100, 10.0));
    REQUIRE(g.size() == 101);
    CHECK(g.x.front() == doctest::Approx(-10.0));
    CHECK(g.x.back() == doctest::Approx(10.0));
    for (size_t i = 0; i + 1 < g.size(); ++i) CHECK(g.x[i + 1] - g.x[i] == doctest::Approx(0.2).epsilon(1e-10));
}

TEST_CASE("fat-Cantor grid equidistributes the scale")
{
    const auto spec = cantor_spec(SpeedMeasure::lebesgue(R), BoundaryCondition::Full);
    const Grid g = build_grid(spec, cfg(400, 20.0));
    for (size_t i = 0; i + 1 < g.ds.size(); ++i) {
        CHECK(g.ds[i] > 0.0);
        CHECK(g.ds[i + 1] <= 2.0 * g.ds[i]);
        CHECK(g.ds[i] <= 2.0 * g.ds[i + 1]);
    }
    for (double w : g.dm) CHECK(w > 0.0);
}

TEST_CASE("node masses sum to the mass of the window plus folded tails")
{
    const Grid g = build_grid(brownian(), cfg(500, 20.0));
    CHECK_FALSE(g.lower.tail_folded);
    CHECK(std::accumulate(g.dm.begin(), g.dm.end(), 0.0) == doctest::Approx(40.0).epsilon(1e-12));

    // finite tails of the Cauchy density go to the end nodes
    const auto spec = DirichletSpaceSpec(ScaleFunction::identity(R), SpeedMeasure::cauchy(R), BoundaryCondition::Full);
    const Grid gc = build_grid(spec, cfg(500, 20.0, Grading::Uniform));
    REQUIRE(gc.lower.tail_folded);
    REQUIRE(gc.upper.tail_folded);
    const double total = std::accumulate(gc.dm.begin(), gc.dm.end(), 0.0);
    CHECK(total == doctest::Approx(M_PI).epsilon(1e-10));
    const double inner = total - gc.dm.front() - gc.dm.back();
    CHECK(inner < spec.speed().mass(gc.lo, gc.hi));
}

TEST_CASE("atom weight lands on the node holding the atom")
{
    const SpeedMeasure m = SpeedMeasure::lebesgue(R).with_atoms({{1.0, 2.0}});
    const DirichletSpaceSpec spec(ScaleFunction::identity(R), m, BoundaryCondition::Full);
    GridConfig c = cfg(200, 10.0);
    const Grid g = build_grid(spec, c);
    const Grid g0 = build_grid(brownian(), c);
    REQUIRE(g.size() == g0.size());
    int hits = 0;
    for (size_t i = 0; i < g.size(); ++i) {
        const double extra = g.dm[i] - g0.dm[i];
        if (std::fabs(extra - 2.0) < 1e-9) ++hits;
        else CHECK(std::fabs(extra) < 1e-9);
    }
    CHECK(hits == 1);
    std::vector<double> one(g.size(), 1.0);
    CHECK(l2m_inner(g, one, one) - l2m_inner(g0, one, one) == doctest::Approx(2.0));
}

TEST_CASE("generator rows: conservation and m-symmetry")
{
    const auto spec = cantor_spec(SpeedMeasure::cauchy(R), BoundaryCondition::Full);
    const Grid g = build_grid(spec, cfg(800, 20.0, Grading::Blend));
    const auto M = assemble_generator(g);
    for (size_t i = 1; i + 1 < M.size(); ++i) {
        const double sum = M.sub[i] + M.diag[i] + M.sup[i];
        CHECK(std::fabs(sum) <= 1e-9 * std::fabs(M.diag[i]));
    }
    for (size_t i = 0; i + 1 < M.size(); ++i) {
        const double a = M.dm[i] * M.sup[i], b = M.dm[i + 1] * M.sub[i + 1];
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("Brownian resolvent against the closed-form kernel")
{
    for (double alpha : {0.5, 1.0, 2.0}) {
        CHECK(sup_error_brownian(4000, alpha) <= 1e-3);
        CHECK(sup_error_brownian(1000, alpha) > sup_error_brownian(2000, alpha));
    }
}

TEST_CASE("resolvent basics")
{
    const Grid g = build_grid(brownian(), cfg(400, 10.0));
    const auto M = assemble_generator(g);
    const auto u = resolvent(M, g, 1.0, std::vector<double>(g.size(), 0.0));
    for (double v : u) CHECK(v == 0.0);

    // finite endpoints: the end nodes are pinned
    const Interval I(0.0, 1.0, 0.5);
    const DirichletSpaceSpec box(ScaleFunction::identity(I), SpeedMeasure::lebesgue(I), BoundaryCondition::Absorbing);
    const Grid gb = build_grid(box, cfg(200, 20.0));
    REQUIRE(gb.lower.fixed);
    REQUIRE(gb.upper.fixed);
    const auto ub = resolvent(assemble_generator(gb), gb, 1.0, std::vector<double>(gb.size(), 1.0));
    CHECK(ub.front() == 0.0);
    CHECK(ub.back() == 0.0);
    CHECK(ub[gb.size() / 2] > 0.1);

    // truncated regular sides: the cut-off tail becomes a conductance to ground
    const auto spec = cantor_spec(SpeedMeasure::cauchy(R), BoundaryCondition::Absorbing);
    const Grid ga = build_grid(spec, cfg(400, 20.0, Grading::Blend));
    CHECK(ga.lower.row == RowType::Dirichlet);
    CHECK(ga.lower.truncated);
    CHECK(ga.lower.leak == doctest::Approx(1.0 / spec.scale().increment(-kInf, ga.lo)).epsilon(1e-12));
    CHECK(ga.upper.leak == doctest::Approx(1.0 / spec.scale().increment(ga.hi, kInf)).epsilon(1e-12));
    const auto f = ga.sample(TestFunction::gaussian());
    const auto ua = resolvent(assemble_generator(ga), ga, 1.0, f);
    CHECK(resolvent_residual(assemble_generator(ga), 1.0, ua, f) <= 1e-10);
    const Grid gf = build_grid(spec.with_boundary_condition(BoundaryCondition::Full), cfg(400, 20.0, Grading::Blend));
    CHECK(gf.lower.leak == 0.0);
    CHECK(gf.lower.row == RowType::ZeroFlux);
}

TEST_CASE("resolvent identity, symmetry and sub-Markov bounds")
{
    const auto spec = cantor_spec(SpeedMeasure::cauchy(R), BoundaryCondition::Absorbing);
    const Grid g = build_grid(spec, cfg(1000, 20.0, Grading::Blend));
    const auto M = assemble_generator(g);
    const auto f = g.sample(TestFunction::gaussian());
    const auto h = g.sample(TestFunction::tent());
    const double a = 0.5, b = 2.0;

    // G_a f - G_b f = (b - a) G_a G_b f
    const auto ga = resolvent(M, g, a, f), gb = resolvent(M, g, b, f);
    const auto gagb = resolvent(M, g, a, gb);
    std::vector<double> d(g.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = ga[i] - gb[i] - (b - a) * gagb[i];
    CHECK(l2m_norm(g, d) <= 1e-9 * l2m_norm(g, ga));

    // (G f, h) = (f, G h)
    const auto gh = resolvent(M, g, a, h);
    CHECK(l2m_inner(g, ga, h) == doctest::Approx(l2m_inner(g, f, gh)).epsilon(1e-10));

    // 0 <= alpha G_alpha f <= 1 for 0 <= f <= 1
    for (double v : gb) {
        CHECK(v >= -1e-14);
        CHECK(b * v <= 1.0 + 1e-12);
    }
}

TEST_CASE("heat semigroup of Brownian motion")
{
    const Grid g = build_grid(brownian(), cfg(4000, 20.0));
    const auto M = assemble_generator(g);
    const auto u = semigroup(M, g, 0.5, g.sample(TestFunction::gaussian()), 200);
    std::vector<double> d(g.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = u[i] - oracle::heat_gaussian(0.5, g.x[i]);
    CHECK(l2m_norm(g, d) <= 1e-3);

    const double t = 1e-6;
    const auto f = g.sample(TestFunction::gaussian());
    const auto v = semigroup(M, g, t, f, 1);
    for (size_t i = 0; i < d.size(); ++i) d[i] = v[i] - f[i];
    CHECK(l2m_norm(g, d) <= 10.0 * t);
}

TEST_CASE("constant functions are invariant on a compact reflecting fixture")
{
    const Interval I(0.0, 1.0, 0.5);
    const DirichletSpaceSpec spec(ScaleFunction::identity(I), SpeedMeasure::lebesgue(I), BoundaryCondition::Full);
    const Grid g = build_grid(spec, cfg(300, 20.0));
    CHECK(g.lower.row == RowType::ZeroFlux);
    CHECK(g.upper.row == RowType::ZeroFlux);
    const auto M = assemble_generator(g);
    const auto u = semigroup(M, g, 1.0, std::vector<double>(g.size(), 1.0), 50);
    for (double v : u) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("L2(m) inner product")
{
    const Interval I(0.0, 1.0, 0.5);
    const DirichletSpaceSpec spec(ScaleFunction::identity(I), SpeedMeasure::lebesgue(I), BoundaryCondition::Full);
    const Grid g = build_grid(spec, cfg(100, 20.0));
    std::vector<double> one(g.size(), 1.0);
    CHECK(l2m_inner(g, one, one) == doctest::Approx(1.0));

    std::mt19937_64 rng(5);
    std::normal_distribution<double> n01;
    for (int k = 0; k < 20; ++k) {
        std::vector<double> f(g.size()), h(g.size());
        for (size_t i = 0; i < f.size(); ++i) f[i] = n01(rng), h[i] = n01(rng);
        CHECK(std::fabs(l2m_inner(g, f, h)) <= l2m_norm(g, f) * l2m_norm(g, h) * (1 + 1e-14));
    }
}

TEST_CASE("discrete energy matches the continuum energy of the tent")
{
    const Grid g = build_grid(brownian(), cfg(2000, 10.0));
    const auto M = assemble_generator(g);
    CHECK(discrete_energy(M, g.sample(TestFunction::tent())) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("grid csv")
{
    const Grid g = build_grid(brownian(), cfg(16, 1.0));
    std::ostringstream os;
    write_grid_csv(os, g, g.sample(TestFunction::tent()));
    const std::string text = os.str();
    CHECK(text.rfind("x,value\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 18);
}

TEST_CASE("too few nodes is a degenerate grid")
{
    CHECK_THROWS_AS(build_grid(brownian(), cfg(4, 10.0)), Error);
    CHECK_THROWS_AS(build_grid(brownian(), cfg(15, 10.0)), Error);
}
