#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "mosco1d/bijection.hpp"
#include "mosco1d/error.hpp"
#include "mosco1d/interval_scale.hpp"

using namespace mosco1d;

namespace {

CharacteristicSet cantor_R() { return CharacteristicSet::fat_cantor(Interval::real_line(), CellMasses{0.25, 0.5, {}}); }

} // namespace

TEST_CASE("interval rejects degenerate or misordered endpoints")
{
    CHECK_THROWS_AS(Interval(1.0, 1.0, 1.0), Error);
    CHECK_THROWS_AS(Interval(0.0, 1.0, 2.0), Error);
    CHECK_NOTHROW(Interval(-kInf, 3.0, 0.0));
}

TEST_CASE("eval_scale on natural and interval-union scales")
{
    const Interval R = Interval::real_line();
    CHECK(eval_scale(ScaleFunction::identity(R), 2.5) == doctest::Approx(2.5));
    // a bare union is null between its members, so it only works as a set;
    // joined with a fat-Cantor part it becomes admissible
    const auto U = CharacteristicSet::interval_union(R, {{0.0, 1.0}, {2.0, 3.0}});
    CHECK(U.measure(0.0, 2.5) == doctest::Approx(1.5));
    CHECK_THROWS_AS(scale_from_set(U), Error);
    const auto C = cantor_R();
    const auto G = set_union(U, C);
    CHECK(eval_scale(scale_from_set(G), 2.5) == doctest::Approx(1.5 + C.measure(1.0, 2.0)).epsilon(1e-13));
    CHECK(eval_scale(scale_from_set(G), -1.0) == doctest::Approx(-C.measure(-1.0, 0.0)).epsilon(1e-13));
}

TEST_CASE("fat-Cantor scale limits match the geometric series of cell masses")
{
    // sum_{k>=0} 2^-(k+2) = 1/2 and sum_{k<0} 2^-(|k|+2) = 1/4
    const ScaleFunction s = scale_from_set(cantor_R());
    const auto [lo, hi] = scale_limits(s);
    CHECK(lo == doctest::Approx(-0.25).epsilon(1e-10));
    CHECK(hi == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(s.eval(1e6) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("scale limits of natural scales")
{
    const auto [lo, hi] = scale_limits(ScaleFunction::identity(Interval::real_line()));
    CHECK(lo == -kInf);
    CHECK(hi == kInf);
    const auto [l2, h2] = scale_limits(ScaleFunction::identity(Interval(0.0, 1.0, 0.5)));
    CHECK(l2 == doctest::Approx(-0.5));
    CHECK(h2 == doctest::Approx(0.5));
}

TEST_CASE("scale is strictly increasing and inverse is consistent")
{
    const ScaleFunction s = scale_from_set(cantor_R());
    double prev = s.eval(-30.0);
    for (double x = -29.5; x <= 30.0; x += 0.37) {
        const double v = s.eval(x);
        CHECK(v > prev);
        prev = v;
        // s is flat to working precision on parts of the Cantor complement, so
        // the inverse is checked by its backward error
        if (x > -8 && x < 8) CHECK(std::fabs(s.eval(s.inverse(v)) - v) <= 1e-15);
    }
}

TEST_CASE("speed measure masses")
{
    const Interval R = Interval::real_line();
    CHECK(measure_of(SpeedMeasure::lebesgue(R), 0.0, 3.0) == doctest::Approx(3.0));

    // arctan antiderivative against adaptive quadrature
    const SpeedMeasure c = SpeedMeasure::cauchy(R);
    CHECK(measure_of(c, -kInf, kInf) == doctest::Approx(M_PI).epsilon(1e-12));
    const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [](double x) { return 1.0 / (1.0 + x * x); }, -2.0, 5.0, 15, 1e-14);
    CHECK(measure_of(c, -2.0, 5.0) == doctest::Approx(q).epsilon(1e-12));

    const SpeedMeasure a = SpeedMeasure::lebesgue(R).with_atoms({{1.0, 2.0}});
    CHECK(measure_of(a, 0.0, 3.0) - 3.0 == doctest::Approx(2.0));
    CHECK(measure_of(a, 1.5, 3.0) == doctest::Approx(1.5));
    CHECK(measure_of(c, 1.0, 1.0) == 0.0);
}

TEST_CASE("boundary classification fixtures")
{
    const Interval R = Interval::real_line();
    const auto bm = boundary_classify(ScaleFunction::identity(R), SpeedMeasure::lebesgue(R), Side::Lower);
    CHECK_FALSE(bm.s_approachable);
    CHECK_FALSE(bm.s_regular);
    CHECK_FALSE(bm.finite_time_approachable);
    CHECK(bm.feller_value == kInf);

    const ScaleFunction st = scale_from_set(cantor_R());
    const auto up = boundary_classify(st, SpeedMeasure::cauchy(R), Side::Upper);
    CHECK(up.s_approachable);
    CHECK(up.s_regular);
    CHECK(up.finite_time_approachable);

    const ScaleFunction comb = scale_from_set(comb_sequence(cantor_R(), 4));
    const auto cu = boundary_classify(comb, SpeedMeasure::cauchy(R), Side::Upper);
    CHECK_FALSE(cu.s_approachable);
    CHECK_FALSE(cu.s_regular);
}

TEST_CASE("Feller integral of the fat-Cantor scale under Lebesgue speed")
{
    // int_0^inf m((0,x)) ds(x) = sum_k int_k^{k+1} x dG, each cell contributing
    // about (k + 1/2) eps_k: sum_k (k + 1/2) 2^-(k+2) = 3/4 on the upper side.
    const Interval R = Interval::real_line();
    const ScaleFunction st = scale_from_set(cantor_R());
    const double up = feller_integral(st, SpeedMeasure::lebesgue(R), Side::Upper, 0.0);
    const double lo = feller_integral(st, SpeedMeasure::lebesgue(R), Side::Lower, 0.0);
    CHECK(up == doctest::Approx(0.75).epsilon(1e-8));
    // lower: sum_{j>=1} (j - 1/2) 2^-(j+2) = 3/8
    CHECK(lo == doctest::Approx(0.375).epsilon(1e-8));
}

TEST_CASE("regular implies approachable in finite time")
{
    const Interval I(0.0, 1.0, 0.5);
    const auto c = boundary_classify(ScaleFunction::identity(I), SpeedMeasure::lebesgue(I), Side::Upper);
    CHECK(c.s_regular);
    CHECK(c.s_approachable);
    CHECK(c.finite_time_approachable);
    CHECK(c.feller_value == doctest::Approx(0.125));
}
