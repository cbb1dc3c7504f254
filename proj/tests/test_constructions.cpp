#include "catch_amalgamated.hpp"

#include "ordcirc/constructions/constructions.hpp"
#include "ordcirc/spectrum/spectrum.hpp"

using namespace ordcirc;

namespace {

ConstructionSpec dp(ConstructionKind k, int m, std::optional<int> special = std::nullopt)
{
    return ConstructionSpec::double_polygon(k, m, special);
}

void check_against_expected(const ConstructionSpec& c)
{
    PointSet P = generate(c);
    ExpectedCounts e = expected_counts(c);
    SpectrumReport r = spectrum_fast(P);
    INFO(construction_to_json(c).dump());
    REQUIRE(r.undecided_predicates == 0);
    if (e.ordinary_circles)
        CHECK(Integer(r.spectrum.ordinary_circles()) == *e.ordinary_circles);
    if (e.ordinary_generalised)
        CHECK(Integer(r.spectrum.ordinary_generalised()) == *e.ordinary_generalised);
    if (e.four_point_generalised)
        CHECK(Integer(r.spectrum.four_point_generalised()) == *e.four_point_generalised);
}

} // namespace

TEST_CASE("generated point sets", "[constructions]")
{
    PointSet a = generate(dp(ConstructionKind::AlignedDoublePolygon, 6));
    CHECK(a.size() == 12);
    PointSet s = generate(dp(ConstructionKind::AlignedDoublePolygon, 6, 1));
    // r = 1 / cos(pi/3) = 2
    CHECK(exact_rational_value(outer_radius(dp(ConstructionKind::AlignedDoublePolygon, 6, 1))) == Rational(2));
    CHECK(s.size() == 12);
    CHECK(generate(dp(ConstructionKind::InvertedDoublePolygon, 5)).size() == 9);
    CHECK(generate(dp(ConstructionKind::PuncturedDoublePolygon, 7)).size() == 13);
    CHECK(generate(ConstructionSpec::ellipse(7)).size() == 7);
    CHECK(a[0].tag.rfind("aligned:", 0) == 0);
}

TEST_CASE("invalid parameters", "[constructions]")
{
    CHECK_THROWS_AS(generate(dp(ConstructionKind::AlignedDoublePolygon, 2)), Error);
    CHECK_THROWS_AS(generate(dp(ConstructionKind::AlignedDoublePolygon, 6, 2)), Error);
    ConstructionSpec bad_r = dp(ConstructionKind::OffsetDoublePolygon, 5);
    bad_r.r = 1;
    CHECK_THROWS_AS(generate(bad_r), Error);
    CHECK_THROWS_AS(generate(ConstructionSpec::ellipse(2)), Error);
    CHECK_THROWS_AS(expected_counts(ConstructionSpec::cubic_coset("z4z2", 6, CosetVariant::HalfTimesZ2)), Error);
}

TEST_CASE("expected counts", "[constructions]")
{
    ExpectedCounts a = expected_counts(dp(ConstructionKind::AlignedDoublePolygon, 6));
    CHECK(*a.ordinary_generalised == 24);
    ExpectedCounts s = expected_counts(dp(ConstructionKind::AlignedDoublePolygon, 6, 1));
    CHECK(*s.ordinary_circles == 18);
    CHECK(*expected_counts(dp(ConstructionKind::PuncturedDoublePolygon, 7)).ordinary_generalised == 51);
    ExpectedCounts e = expected_counts(ConstructionSpec::ellipse(8));
    CHECK(*e.four_point_generalised == 9);
    CHECK(*e.ordinary_generalised == 20);
    ExpectedCounts z = expected_counts(ConstructionSpec::cubic_coset("z4z2", 8, CosetVariant::HalfTimesZ2));
    CHECK(*z.four_point_generalised == 10);
    CHECK_FALSE(z.ordinary_circles);
    CHECK(expected_to_json(z)["ordinary_circles"] == "not-specified");
}

TEST_CASE("group counting", "[constructions]")
{
    FiniteAbelianGroup c8{8, 1}, z4z2{4, 2};
    CHECK(delta_count(c8) == 2);
    CHECK(delta_count(z4z2) == 4);
    CHECK(four_point_formula(8, delta_count(c8), epsilon_count(c8)) == four_point_congruence_count(c8));
    CHECK(four_point_formula(8, delta_count(z4z2), epsilon_count(z4z2)) == four_point_congruence_count(z4z2));
    CHECK(four_point_congruence_count(z4z2) > four_point_congruence_count(c8));
}

TEST_CASE("extremal values and witnesses", "[constructions]")
{
    CHECK(theorem_value(Theorem::MinOrdinary, 12) == 18);
    CHECK(theorem_value(Theorem::MinOrdinaryGeneralised, 13) == 51);
    CHECK(theorem_value(Theorem::MaxFourPoint, 8) == 10);
    CHECK(theorem_value(Theorem::MaxFourPoint, 7) == 5);
    CHECK(theorem_from_string("1.2") == Theorem::MinOrdinaryGeneralised);
    CHECK_THROWS_AS(theorem_from_string("2.1"), Error);

    CHECK(extremal_witness(Theorem::MinOrdinary, 12).kind == ConstructionKind::AlignedDoublePolygon);
    CHECK(extremal_witness(Theorem::MinOrdinary, 11).kind == ConstructionKind::InvertedDoublePolygon);
    CHECK(extremal_witness(Theorem::MinOrdinaryGeneralised, 13).kind == ConstructionKind::PuncturedDoublePolygon);
    CHECK(extremal_witness(Theorem::MaxFourPoint, 8).kind == ConstructionKind::CubicCoset);
    try {
        extremal_witness(Theorem::MinOrdinary, 8);
        FAIL("expected NoWitnessKnown");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoWitnessKnown);
    }
}

TEST_CASE("witnesses attain the extremal values", "[constructions][slow]")
{
    struct Case { Theorem t; long n; };
    for (Case c : {Case{Theorem::MinOrdinary, 10}, Case{Theorem::MinOrdinary, 12}, Case{Theorem::MinOrdinary, 11},
                   Case{Theorem::MinOrdinaryGeneralised, 10}, Case{Theorem::MinOrdinaryGeneralised, 13},
                   Case{Theorem::MaxFourPoint, 7}, Case{Theorem::MaxFourPoint, 10}, Case{Theorem::MaxFourPoint, 8}}) {
        INFO(to_string(c.t) << " n=" << c.n);
        ConstructionSpec w = extremal_witness(c.t, c.n);
        PointSet P = generate(w);
        REQUIRE(static_cast<long>(P.size()) == c.n);
        SpectrumReport r = spectrum_fast(P);
        REQUIRE(r.undecided_predicates == 0);
        long got = c.t == Theorem::MinOrdinary              ? r.spectrum.ordinary_circles()
                   : c.t == Theorem::MinOrdinaryGeneralised ? r.spectrum.ordinary_generalised()
                                                            : r.spectrum.four_point_generalised();
        CHECK(Integer(got) == theorem_value(c.t, c.n));
    }
}

TEST_CASE("measured counts match the closed forms", "[constructions][slow]")
{
    for (int m = 4; m <= 7; ++m) {
        check_against_expected(dp(ConstructionKind::AlignedDoublePolygon, m));
        check_against_expected(dp(ConstructionKind::OffsetDoublePolygon, m));
    }
    for (int m = 6; m <= 8; ++m) {
        check_against_expected(dp(ConstructionKind::PuncturedDoublePolygon, m));
        check_against_expected(dp(ConstructionKind::InvertedDoublePolygon, m));
    }
    check_against_expected(dp(ConstructionKind::AlignedDoublePolygon, 6, 1));
    check_against_expected(dp(ConstructionKind::AlignedDoublePolygon, 7, 1));
    for (int n = 5; n <= 12; ++n)
        check_against_expected(ConstructionSpec::ellipse(n));
    ConstructionSpec ie = ConstructionSpec::ellipse(8);
    ie.kind = ConstructionKind::InvertedEllipse;
    check_against_expected(ie);
}

TEST_CASE("offset beats aligned for ordinary generalised circles", "[constructions]")
{
    for (int m = 4; m <= 10; m += 2) {
        auto off = expected_counts(dp(ConstructionKind::OffsetDoublePolygon, m)).ordinary_generalised;
        auto al = expected_counts(dp(ConstructionKind::AlignedDoublePolygon, m)).ordinary_generalised;
        CHECK(*off > *al);
        CHECK(*off == Integer(m) * m); // n^2 / 4
    }
}

TEST_CASE("inverting in a removed point preserves generalised counts", "[constructions][property]")
{
    for (int m = 6; m <= 7; ++m) {
        auto p = spectrum_fast(generate(dp(ConstructionKind::PuncturedDoublePolygon, m))).spectrum;
        auto q = spectrum_fast(generate(dp(ConstructionKind::InvertedDoublePolygon, m))).spectrum;
        CHECK(p.ordinary_generalised() == q.ordinary_generalised());
        CHECK(p.four_point_generalised() == q.four_point_generalised());
    }
}

TEST_CASE("construction JSON round trip", "[constructions]")
{
    std::vector<ConstructionSpec> specs{ConstructionSpec::ellipse(9, 3), dp(ConstructionKind::AlignedDoublePolygon, 6, 1),
                                        dp(ConstructionKind::OffsetDoublePolygon, 5),
                                        ConstructionSpec::cubic_coset("z4z2", 8, CosetVariant::HalfTimesZ2, 1)};
    for (const auto& c : specs) {
        json j = construction_to_json(c);
        CHECK(construction_to_json(construction_from_json(j)) == j);
    }
    CHECK_THROWS_AS(construction_from_json(json{{"kind", "hexagon"}, {"params", json::object()}}), Error);
}
