#include <random>

#include "catch_amalgamated.hpp"

#include "ordcirc/geometry/inversion.hpp"

using namespace ordcirc;

namespace {

Point P(Rational x, Rational y) { return Point(RealExpr(std::move(x)), RealExpr(std::move(y))); }
Point U(long a, long b, Rational r = 1) { return Point(RealExpr(r) * RealExpr::cos(Angle(a, b)), RealExpr(r) * RealExpr::sin(Angle(a, b))); }

std::array<Rational, 4> coeffs(const GeneralisedCircle& g) { return normalized(g).rational_coefficients(); }

} // namespace

TEST_CASE("inverting single points", "[geometry]")
{
    InversionSpec unit(P(0, 0), RealExpr(1));
    Point q = invert_point(unit, P(2, 0));
    CHECK(exact_rational_value(q.x) == Rational(1, 2));
    CHECK(exact_rational_value(q.y) == Rational(0));
    Point f = invert_point(unit, U(1, 8));
    CHECK(same_point(f, U(1, 8)));
    InversionSpec shifted(P(1, 0), RealExpr(1));
    Point r = invert_point(shifted, P(3, 0));
    CHECK(exact_rational_value(r.x) == Rational(3, 2));
    CHECK_THROWS_AS(invert_point(unit, P(0, 0)), Error);
    CHECK_THROWS_AS(InversionSpec(P(0, 0), RealExpr(0)), Error);
}

TEST_CASE("circle through three points", "[geometry]")
{
    CHECK(coeffs(circle_through(P(0, 0), P(1, 0), P(0, 1))) == std::array<Rational, 4>{1, -1, -1, 0});
    GeneralisedCircle line = circle_through(P(0, 0), P(1, 0), P(2, 0));
    CHECK(line.is_line());
    CHECK(coeffs(line) == std::array<Rational, 4>{0, 0, 1, 0});
    GeneralisedCircle unit = normalized(circle_through(U(0, 6), U(1, 6), U(3, 6)));
    CHECK(certified_zero(unit.t - RealExpr(1)));
    CHECK(certified_zero(unit.l0 + RealExpr(1)));
    CHECK(certified_zero(unit.l1));
    CHECK_THROWS_AS(circle_through(P(0, 0), P(0, 0), P(1, 1)), Error);
}

TEST_CASE("concyclicity and collinearity predicates", "[geometry]")
{
    CHECK(concyclic(P(0, 0), P(1, 0), P(0, 1), P(1, 1)));
    CHECK_FALSE(concyclic(P(0, 0), P(1, 0), P(2, 0), P(0, 1)));
    CHECK(concyclic(U(1, 6), U(2, 6), U(-1, 6, 3), U(-2, 6, 3)));
    CHECK(collinear(P(0, 0), P(1, 1), P(2, 2)));
    CHECK_FALSE(collinear(P(0, 0), P(1, 0), P(0, 1)));
    CHECK_FALSE(collinear(U(1, 6), U(5, 6), P(2, 0)));
}

TEST_CASE("inverting generalised circles", "[geometry]")
{
    InversionSpec unit(P(0, 0), RealExpr(1));
    GeneralisedCircle circle{RealExpr(1), RealExpr(0), RealExpr(0), RealExpr(-1)};
    CHECK(coeffs(invert_generalised_circle(unit, circle)) == coeffs(circle));
    GeneralisedCircle vertical{RealExpr(0), RealExpr(1), RealExpr(0), RealExpr(Rational(-1, 2))};
    CHECK(coeffs(invert_generalised_circle(unit, vertical)) == std::array<Rational, 4>{1, -2, 0, 0});
    GeneralisedCircle through{RealExpr(1), RealExpr(-1), RealExpr(-1), RealExpr(0)};
    CHECK(coeffs(invert_generalised_circle(unit, through)) == std::array<Rational, 4>{0, 1, 1, -1});
}

TEST_CASE("inversion is an involution on rational data", "[geometry][property]")
{
    std::mt19937_64 rng(11);
    auto r = [&] { return Rational(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 7) + 1); };
    for (int trial = 0; trial < 100; ++trial) {
        InversionSpec spec(P(r(), r()), RealExpr(Rational(static_cast<long>(rng() % 9) + 1, 4)));
        Point q = P(r(), r());
        if (same_point(q, spec.center))
            continue;
        Point back = invert_point(spec, invert_point(spec, q));
        CHECK(exact_rational_value(back.x) == exact_rational_value(q.x));
        CHECK(exact_rational_value(back.y) == exact_rational_value(q.y));
        Point a = P(r(), r()), b = P(r(), r()), c = P(r(), r());
        if (same_point(a, b) || same_point(a, c) || same_point(b, c))
            continue;
        GeneralisedCircle g = circle_through(a, b, c);
        CHECK(coeffs(invert_generalised_circle(spec, invert_generalised_circle(spec, g))) == coeffs(g));
    }
}

TEST_CASE("point-set JSON round trip", "[geometry]")
{
    PointSet s;
    s.points = {P(Rational(1, 2), 3), U(1, 5, 2)};
    s.points[1].tag = "k=1";
    PointSet back = pointset_from_json(pointset_to_json(s));
    REQUIRE(back.size() == 2);
    CHECK(same_point(back[0], s[0]));
    CHECK(same_point(back[1], s[1]));
    CHECK(back[1].tag == "k=1");
    CHECK_THROWS_AS(pointset_from_json(json::object()), Error);
}
