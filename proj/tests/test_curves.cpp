#include <random>

#include "catch_amalgamated.hpp"

#include "ordcirc/curves/circular.hpp"
#include "ordcirc/curves/fit.hpp"
#include "ordcirc/curves/invert.hpp"
#include "ordcirc/curves/singular.hpp"

using namespace ordcirc;

namespace {

Point P(Rational x, Rational y) { return Point(RealExpr(std::move(x)), RealExpr(std::move(y))); }

InversionSpec centre(Rational x, Rational y, Rational r2 = 1) { return InversionSpec(P(std::move(x), std::move(y)), RealExpr(std::move(r2))); }

// rational points on x^2 + y^2 = r^2
Point on_circle(const Rational& r, const Rational& t)
{
    Rational d = 1 + t * t;
    return P(r * (1 - t * t) / d, r * 2 * t / d);
}

CurvePoly random_curve(std::mt19937_64& rng, int degree)
{
    CurvePoly f;
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; i + j <= degree; ++j) {
            long c = static_cast<long>(rng() % 7) - 3;
            if (c != 0)
                f = f + CurvePoly::monomial(i, j, degree - i - j, c);
        }
    return f;
}

} // namespace

TEST_CASE("multiplicity at the circular points", "[curves]")
{
    CHECK(multiplicity_at_circular_points(CurvePoly::parse("x^2+y^2-z^2")) == std::pair{1, 1});
    CHECK(multiplicity_at_circular_points(CurvePoly::parse("x^4+2x^2*y^2+y^4-z^4")) == std::pair{2, 2});
    CHECK(multiplicity_at_circular_points(CurvePoly::parse("x-z")) == std::pair{0, 0});
    CHECK_THROWS_AS(multiplicity_at_circular_points(CurvePoly()), Error);
}

TEST_CASE("circular classes", "[curves]")
{
    CHECK(circular_class(CurvePoly::parse("x^2+y^2-z^2")).name() == "GeneralisedCircle");
    CHECK(circular_class(CurvePoly::parse("x-z")).name() == "GeneralisedCircle");
    CHECK(circular_class(CurvePoly::parse("x*y-z^2")).name() == "NonCircularConic");
    CHECK(circular_class(CurvePoly::parse("2x^3+2x*y^2-x^2*z-2y^2*z")).name() == "CircularCubic");
    CHECK(circular_class(CurvePoly::parse("x^4+2x^2*y^2+y^4-2x^2*z^2+2y^2*z^2")).name() == "BicircularQuartic");
    CHECK(circular_class(CurvePoly::parse("y^2*z-x^3-x*z^2")).kind == CircularClass::Other);
    CHECK_THROWS_AS(circular_class(CurvePoly::parse("x^5-y^5")), Error);
}

TEST_CASE("inverting lines and circles", "[curves]")
{
    CurvePoly img = invert_curve(centre(0, 0), CurvePoly::parse("x-z"));
    CHECK(img.canonical() == CurvePoly::parse("x^2+y^2-x*z").canonical());
    CurvePoly fixed = invert_curve(centre(0, 0), CurvePoly::parse("x^2+y^2-z^2"));
    CHECK(fixed.canonical() == CurvePoly::parse("x^2+y^2-z^2").canonical());
    CHECK(curve_case_label(invert_curve(centre(1, 0), CurvePoly::parse("x^2+y^2-z^2"))) == "Line");
}

TEST_CASE("ellipse and acnodal cubic are inverse to each other", "[curves]")
{
    CurvePoly ellipse = CurvePoly::parse("x^2-2x*z+2y^2");
    CurvePoly cubic = invert_curve(centre(0, 0), ellipse);
    CHECK(circular_class(cubic).name() == "CircularCubic");
    CHECK(invert_curve(centre(0, 0), cubic).canonical() == ellipse.canonical());
    auto sing = singular_points_cubic(cubic);
    REQUIRE(sing.size() == 1);
    CHECK(sing[0].type == "acnode");
    CHECK(sing[0].point[0] == 0);
}

TEST_CASE("inversion case battery", "[curves]")
{
    auto battery = inversion_case_battery();
    CHECK(battery.size() == 12);
    std::set<std::pair<int, int>> clauses;
    for (const auto& b : battery) {
        INFO(b.name);
        InversionCase c = verify_inversion_case_table(b.curve, centre(b.cx, b.cy));
        CHECK(c.measured == b.expected);
        clauses.insert({c.circular_degree, std::min(c.centre_multiplicity, 3)});
    }
    // every reachable cell: lines and circles have multiplicity <= 1, conics <= 2
    CHECK(clauses.size() == 9);
}

TEST_CASE("inversion is an involution on curves", "[curves][property]")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        CurvePoly f = random_curve(rng, 1 + trial % 3);
        if (f.is_zero() || f.degree() == 0)
            continue;
        InversionSpec s = centre(Rational(static_cast<long>(rng() % 9) - 4, 3), Rational(static_cast<long>(rng() % 9) - 4, 5),
                                 Rational(static_cast<long>(rng() % 4) + 1, 2));
        INFO(f.str());
        CHECK(invert_curve(s, invert_curve(s, f)).canonical() == f.canonical());
    }
}

TEST_CASE("singular points of cubics", "[curves]")
{
    auto acnode = singular_points_cubic(CurvePoly::parse("y^2*z-x^3+x^2*z"));
    REQUIRE(acnode.size() == 1);
    CHECK(acnode[0].type == "acnode");
    auto node = singular_points_cubic(CurvePoly::parse("y^2*z-x^3-x^2*z"));
    REQUIRE(node.size() == 1);
    CHECK(node[0].type == "crunode");
    auto cusp = singular_points_cubic(CurvePoly::parse("y^2*z-x^3"));
    REQUIRE(cusp.size() == 1);
    CHECK(cusp[0].type == "cusp");
    CHECK(singular_points_cubic(CurvePoly::parse("y^2*z-x^3-x*z^2")).empty());
    CHECK_THROWS_AS(singular_points_cubic(CurvePoly::parse("x^2+y^2-z^2")), Error);
}

TEST_CASE("fitting bicircular quartics", "[curves]")
{
    PointSet circle;
    for (int k = 1; k <= 12; ++k)
        circle.points.push_back(on_circle(1, Rational(k, 7)));
    FitReport a = fit_bicircular_quartic(circle, 0);
    REQUIRE(a.quartic);
    CHECK(a.inliers.size() == 12);

    PointSet rings;
    for (int k = 1; k <= 6; ++k) {
        rings.points.push_back(on_circle(1, Rational(k, 5)));
        rings.points.push_back(on_circle(3, Rational(-k, 4)));
    }
    FitReport b = fit_bicircular_quartic(rings, 0);
    REQUIRE(b.quartic);
    for (const auto& p : rings.points)
        CHECK(b.quartic->evaluate<Rational>(p.x.rational(), p.y.rational(), Rational(1)) == 0);

    std::mt19937_64 rng(3);
    int fits = 0;
    for (int trial = 0; trial < 10; ++trial) {
        PointSet r;
        for (int k = 0; k < 12; ++k)
            r.points.push_back(P(Rational(static_cast<long>(rng() % 201) - 100, 7), Rational(static_cast<long>(rng() % 201) - 100, 11)));
        fits += fit_bicircular_quartic(r, 0).quartic.has_value();
    }
    CHECK(fits == 0);

    PointSet few;
    for (int k = 0; k < 5; ++k)
        few.points.push_back(P(k, k * k));
    CHECK_THROWS_AS(fit_bicircular_quartic(few, 0), Error);
}

TEST_CASE("curve text and JSON", "[curves]")
{
    CurvePoly f = CurvePoly::parse("2x^3+2x*y^2-x^2*z-2y^2*z");
    CHECK(CurvePoly::parse(f.str()) == f);
    CHECK(curve_from_json(curve_to_json(f)) == f);
    CHECK_THROWS_AS(CurvePoly::parse("x^2+*y"), Error);
}
