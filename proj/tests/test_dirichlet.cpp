#include <doctest.h>

#include <cmath>

#include "mosco1d/dirichlet.hpp"
#include "mosco1d/error.hpp"

using namespace mosco1d;

namespace {

const Interval R = Interval::real_line();

CharacteristicSet cantor() { return CharacteristicSet::fat_cantor(R, CellMasses{0.25, 0.5, {}}); }

DirichletSpaceSpec natural(BoundaryCondition bc = BoundaryCondition::Full)
{
    return DirichletSpaceSpec(ScaleFunction::identity(R), SpeedMeasure::lebesgue(R), bc);
}

DirichletSpaceSpec cantor_spec(const SpeedMeasure& m, BoundaryCondition bc = BoundaryCondition::Full)
{
    return DirichletSpaceSpec(scale_from_set(cantor()), m, bc);
}

} // namespace

TEST_CASE("energy of the tent under the natural scale")
{
    CHECK(energy(TestFunction::tent(), natural()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(energy(TestFunction::zero(), natural()) == 0.0);
}

TEST_CASE("energy of a composite does not depend on the admissible scale")
{
    // phi = A tent((y - c)/w): (1/2) int phi'^2 dy = A^2 / w
    const double A = 0.7, w = 0.1, c = 0.05;
    const ScaleFunction s1 = scale_from_set(cantor());
    const ScaleFunction s2 = scale_from_set(comb_sequence(cantor(), 4));
    const SpeedMeasure m = SpeedMeasure::lebesgue(R);
    const auto u1 = TestFunction::core_composite(s1, Profile::Tent, c, w, A);
    const auto u2 = TestFunction::core_composite(s2, Profile::Tent, c, w, A);
    CHECK(energy(u1, DirichletSpaceSpec(s1, m, BoundaryCondition::Full)) == doctest::Approx(A * A / w).epsilon(1e-10));
    CHECK(energy(u2, DirichletSpaceSpec(s2, m, BoundaryCondition::Full)) == doctest::Approx(A * A / w).epsilon(1e-10));
}

TEST_CASE("energy of a subspace member agrees with the ambient energy")
{
    const ScaleFunction st = scale_from_set(cantor());
    const SpeedMeasure m = SpeedMeasure::lebesgue(R);
    const auto u = TestFunction::core_composite(st, Profile::Bump, 0.1, 0.2, 1.3);
    const double sub = energy(u, DirichletSpaceSpec(st, m, BoundaryCondition::Full));
    const double amb = energy(u, natural());
    CHECK(std::fabs(sub - amb) <= 1e-8 * std::max(1.0, sub));
}

TEST_CASE("Absorbing and Full forms coincide without regular boundaries")
{
    const SpeedMeasure leb = SpeedMeasure::lebesgue(R);
    CHECK(same_form(natural(BoundaryCondition::Absorbing), natural(BoundaryCondition::Full)));
    CHECK(same_form(cantor_spec(leb, BoundaryCondition::Absorbing), cantor_spec(leb)));
    const SpeedMeasure c = SpeedMeasure::cauchy(R);
    CHECK_FALSE(same_form(cantor_spec(c, BoundaryCondition::Absorbing), cantor_spec(c)));
    CHECK(cantor_spec(c, BoundaryCondition::Absorbing).constrained(Side::Lower));
    CHECK_FALSE(cantor_spec(c).constrained(Side::Lower));
}

TEST_CASE("subspace relation")
{
    const SpeedMeasure leb = SpeedMeasure::lebesgue(R);
    const auto rel = is_subspace(cantor_spec(leb), natural());
    CHECK(rel.is_subspace);
    CHECK(rel.proper);
    REQUIRE(rel.witness.has_value());
    CHECK(cantor().complement_measure(rel.witness->lo, rel.witness->hi) > 0.0);

    const auto same = is_subspace(natural(), natural());
    CHECK(same.is_subspace);
    CHECK_FALSE(same.proper);

    const DirichletSpaceSpec half(ScaleFunction::linear(R, 0.5), leb, BoundaryCondition::Full);
    CHECK_FALSE(is_subspace(half, natural()).is_subspace);

    const DirichletSpaceSpec other_speed(ScaleFunction::identity(R), SpeedMeasure::cauchy(R), BoundaryCondition::Full);
    CHECK_THROWS_AS(is_subspace(other_speed, natural()), Error);
}

TEST_CASE("membership in a regular subspace")
{
    const SpeedMeasure leb = SpeedMeasure::lebesgue(R);
    const auto sub = cantor_spec(leb);
    const auto u = TestFunction::core_composite(sub.scale(), Profile::Tent, 0.0, 0.1);
    CHECK(membership(u, sub, natural()));
    CHECK(membership(TestFunction::zero(), sub, natural()));
    // slope one on (-0.5, 0.5), which meets the Cantor complement in positive measure
    const auto ramp = TestFunction::explicit_fn(
        "ramp", [](double x) { return std::clamp(x + 0.5, 0.0, 1.0) * std::exp(-x * x); },
        [](double x) {
            const double g = std::exp(-x * x);
            if (x < -0.5) return 0.0;
            if (x > 0.5) return -2.0 * x * g;
            return g - 2.0 * x * (x + 0.5) * g;
        },
        {-0.5, 0.5});
    CHECK_FALSE(membership(ramp, sub, natural()));
    CHECK_FALSE(membership(TestFunction::smooth_bump(0.0, 1.0), sub, natural()));
}

TEST_CASE("global classification fixtures")
{
    const auto bm = classify_global(natural());
    CHECK(bm.recurrence == Recurrence::Recurrent);
    CHECK(bm.conservative == true);
    CHECK(bm.summary() == "recurrent, conservative");

    const auto fc = classify_global(cantor_spec(SpeedMeasure::lebesgue(R)));
    CHECK(fc.recurrence == Recurrence::Transient);

    const ScaleFunction st = scale_from_set(cantor());
    const SpeedMeasure mF = SpeedMeasure::stieltjes_F(st, 0.5);
    for (int n : {1, 4, 32}) {
        const auto g = classify_global(DirichletSpaceSpec(scale_from_set(comb_sequence(cantor(), n)), mF,
                                                          BoundaryCondition::Full));
        CHECK(g.recurrence == Recurrence::Recurrent);
        CHECK(g.conservative == true);
    }
    const auto lim = classify_global(DirichletSpaceSpec(st, mF, BoundaryCondition::Full));
    CHECK(lim.recurrence == Recurrence::Transient);
    CHECK(lim.conservative == false);
}

TEST_CASE("test functions")
{
    CHECK(TestFunction::tent()(0.25) == doctest::Approx(0.75));
    CHECK(TestFunction::gaussian()(1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(TestFunction::mollified_indicator()(0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(TestFunction::mollified_indicator()(1.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(TestFunction::by_name("tent").name() == "tent");
    CHECK_THROWS_AS(TestFunction::by_name("nope"), Error);
    CHECK_THROWS_AS(TestFunction::core_composite(scale_from_set(cantor()), Profile::Tent, 0.45, 0.1), Error);
}

TEST_CASE("spatial transform")
{
    const auto bm = natural();
    const auto same = spatial_transform(bm, ScaleFunction::identity(R));
    CHECK(same_form(same, bm));
    CHECK(same_form(spatial_transform(same, ScaleFunction::identity(R)), bm));

    // the fat-Cantor scale used as j maps its own spec to the natural scale on its image
    const SpeedMeasure leb = SpeedMeasure::lebesgue(R);
    const auto spec = cantor_spec(leb);
    const ScaleFunction& j = spec.scale();
    const auto img = spatial_transform(spec, j);
    CHECK(img.interval().a() == doctest::Approx(-0.25).epsilon(1e-10));
    CHECK(img.interval().b() == doctest::Approx(0.5).epsilon(1e-10));
    for (double y : {-0.2, -0.05, 0.0, 0.13, 0.4}) CHECK(img.scale().eval(y) == doctest::Approx(y).epsilon(1e-9));
    for (double x : {-3.0, -0.7, 0.4, 2.2}) {
        // the pushforward goes through j^-1, which is ill-conditioned where j
        // is flat to working precision (integers are Cantor points here)
        const double mine = img.speed().mass(j.eval(x), j.eval(x + 0.5));
        CHECK(mine == doctest::Approx(0.5).epsilon(1e-7));
    }
    for (Side side : {Side::Lower, Side::Upper}) {
        CHECK(img.boundary(side).s_approachable == spec.boundary(side).s_approachable);
        CHECK(img.boundary(side).feller_value == doctest::Approx(spec.boundary(side).feller_value).epsilon(1e-6));
    }

    CHECK_NOTHROW(check_homeomorphism(ScaleFunction::sine_perturbed(R, 0.5)));
    const auto flat = ScaleFunction::piecewise_smooth(
        R, "flat", {{-kInf, 1.0, [](double) { return 1.0; }, {}},
                    {1.0, 2.0, [](double) { return 0.0; }, {}},
                    {2.0, kInf, [](double) { return 1.0; }, {}}});
    CHECK_THROWS_AS(check_homeomorphism(flat), Error);
    CHECK_THROWS_AS(spatial_transform(bm, ScaleFunction::identity(Interval(0.0, 1.0, 0.5))), Error);
}
