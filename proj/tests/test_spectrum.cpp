#include <random>

#include "catch_amalgamated.hpp"

#include "ordcirc/constructions/constructions.hpp"
#include "ordcirc/spectrum/spectrum.hpp"

using namespace ordcirc;

namespace {

Point P(Rational x, Rational y) { return Point(RealExpr(std::move(x)), RealExpr(std::move(y))); }

PointSet set_of(std::vector<Point> pts)
{
    PointSet s;
    s.points = std::move(pts);
    return s;
}

PointSet random_rational_set(std::mt19937_64& rng, int n)
{
    PointSet s;
    while (static_cast<int>(s.size()) < n) {
        // small grid so that collinear and concyclic coincidences occur
        Point q = P(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3);
        bool dup = false;
        for (const auto& p : s.points)
            dup = dup || same_point(p, q);
        if (!dup)
            s.points.push_back(q);
    }
    return s;
}

Integer triple_sum(const CircleSpectrum& s)
{
    Integer t = 0;
    for (auto [i, v] : s.line_counts)
        t += binomial(i, 3) * v;
    for (auto [i, v] : s.circle_counts)
        t += binomial(i, 3) * v;
    return t;
}

} // namespace

TEST_CASE("square and generic quadruple", "[spectrum]")
{
    PointSet square = set_of({P(0, 0), P(1, 0), P(1, 1), P(0, 1)});
    SpectrumReport r = spectrum_naive(square);
    CHECK(r.spectrum.t(2) == 6);
    CHECK(r.spectrum.s(4) == 1);
    CHECK(r.spectrum.s(3) == 0);
    CHECK(r.spectrum.ordinary_generalised() == 0);

    PointSet generic = set_of({P(0, 0), P(3, 0), P(1, 2), P(5, 7)});
    SpectrumReport g = spectrum_naive(generic);
    CHECK(g.spectrum.s(3) == 4);
    CHECK(g.spectrum.t(2) == 6);
    CHECK(g.spectrum.ordinary_generalised() == 4);
    CHECK(spectrum_fast(generic).spectrum == g.spectrum);
}

TEST_CASE("aligned double hexagon and ellipse subgroup", "[spectrum]")
{
    PointSet hex = generate(ConstructionSpec::double_polygon(ConstructionKind::AlignedDoublePolygon, 6));
    CHECK(spectrum_naive(hex).spectrum.ordinary_generalised() == 24);
    PointSet e8 = generate(ConstructionSpec::ellipse(8));
    SpectrumReport r = spectrum_fast(e8);
    CHECK(r.spectrum.s(3) == 20);
    CHECK(r.spectrum.s(4) == 9);
    CHECK(r.undecided_predicates == 0);
}

TEST_CASE("duplicate points are rejected", "[spectrum]")
{
    PointSet dup = set_of({P(0, 0), P(1, 0), P(0, 0)});
    CHECK_THROWS_AS(spectrum_naive(dup), Error);
    CHECK_THROWS_AS(spectrum_fast(dup), Error);
}

TEST_CASE("fast counter agrees with the oracle on random sets", "[spectrum][property]")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        PointSet s = random_rational_set(rng, 5 + trial % 6);
        SpectrumReport a = spectrum_naive(s), b = spectrum_fast(s);
        CHECK(a.spectrum == b.spectrum);
        CHECK(triple_sum(a.spectrum) == binomial(static_cast<long>(s.size()), 3));
    }
}

TEST_CASE("thread count does not change the result", "[spectrum]")
{
    PointSet s = generate(ConstructionSpec::double_polygon(ConstructionKind::OffsetDoublePolygon, 5));
    SpectrumReport one = spectrum_fast(s, 1), many = spectrum_fast(s, 4);
    CHECK(one.spectrum == many.spectrum);
    CHECK(spectrum_to_json(one) == spectrum_to_json(many));
}

TEST_CASE("circles through p become lines after inverting in p", "[spectrum][property]")
{
    PointSet s = generate(ConstructionSpec::double_polygon(ConstructionKind::AlignedDoublePolygon, 5));
    auto circles = enumerate_circles(s);
    for (std::size_t i = 0; i < s.size(); i += 3) {
        InversionSpec inv(s[i], RealExpr(1));
        PointSet rest;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != i)
                rest.points.push_back(invert_point(inv, s[j]));
        CircleSpectrum img = spectrum_naive(rest).spectrum;
        CHECK(img.t(2) == circles_through_point(s, circles, s[i], CircleClass::OrdinaryGeneralised));
        CHECK(img.t(3) == circles_through_point(s, circles, s[i], CircleClass::FourPoint));
    }
}

TEST_CASE("circles through an outside point", "[spectrum]")
{
    PointSet hex = generate(ConstructionSpec::double_polygon(ConstructionKind::AlignedDoublePolygon, 6));
    CHECK(circles_through_point(hex, P(0, 0), CircleClass::OrdinaryGeneralised) <= 6);
    // on the inner circle but not in the set
    Point off(RealExpr::cos(Angle(1, 12)), RealExpr::sin(Angle(1, 12)));
    CHECK(circles_through_point(hex, off, CircleClass::OrdinaryGeneralised) == 0);
    Point outer(RealExpr(3) * RealExpr::cos(Angle(1, 12)), RealExpr(3) * RealExpr::sin(Angle(1, 12)));
    CHECK(circles_through_point(hex, outer, CircleClass::OrdinaryGeneralised) == 0);
}

TEST_CASE("stability bound", "[spectrum]")
{
    CHECK(stability_bound(10, 20, 0) == 20);
    CHECK(stability_bound(10, 20, 1) == 65);
    CHECK(stability_bound(12, 24, 2) == 168);
    CHECK_THROWS_AS(stability_bound(10, 20, -1), Error);
}

TEST_CASE("spectrum exports", "[spectrum]")
{
    PointSet square = set_of({P(0, 0), P(1, 0), P(1, 1), P(0, 1)});
    SpectrumReport r = spectrum_naive(square);
    CHECK(spectrum_to_csv(r) == "kind,i,count\nline,2,6\ncircle,4,1\n");
    json j = spectrum_to_json(r);
    CHECK(j["four_point_generalised"] == 1);
    CHECK_FALSE(j.contains("wall_time"));
}
