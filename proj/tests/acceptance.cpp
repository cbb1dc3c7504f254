// One line per acceptance criterion; nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "ordcirc/constructions/constructions.hpp"
#include "ordcirc/curves/fit.hpp"
#include "ordcirc/curves/invert.hpp"
#include "ordcirc/groups/synthesis.hpp"
#include "ordcirc/groups/validation.hpp"
#include "ordcirc/spectrum/spectrum.hpp"

using namespace ordcirc;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << "[fail: " << what << "] ";
        }
    }
};

Point P(Rational x, Rational y) { return Point(RealExpr(std::move(x)), RealExpr(std::move(y))); }

ConstructionSpec dp(ConstructionKind k, int m, std::optional<int> special = std::nullopt)
{
    return ConstructionSpec::double_polygon(k, m, special);
}

std::string spec_name(const ConstructionSpec& c) { return construction_to_json(c).dump(); }

long measured(Theorem t, const CircleSpectrum& s)
{
    switch (t) {
    case Theorem::MinOrdinary: return s.ordinary_circles();
    case Theorem::MinOrdinaryGeneralised: return s.ordinary_generalised();
    case Theorem::MaxFourPoint: return s.four_point_generalised();
    }
    return -1;
}

void theorem_table(Outcome& o, Theorem t, const std::vector<std::pair<long, long>>& table)
{
    for (auto [n, want] : table) {
        ConstructionSpec w = extremal_witness(t, n);
        SpectrumReport r = spectrum_fast(generate(w));
        long got = measured(t, r.spectrum);
        o.require(theorem_value(t, n) == want, "value n=" + std::to_string(n));
        o.require(r.undecided_predicates == 0 && got == want,
                  "n=" + std::to_string(n) + " measured " + std::to_string(got) + " want " + std::to_string(want));
        o.detail << "n=" << n << "->" << got << " ";
    }
}

Outcome criterion1()
{
    Outcome o;
    theorem_table(o, Theorem::MinOrdinary, {{9, 14}, {11, 18}, {12, 18}, {13, 33}, {15, 39}, {16, 40}});
    return o;
}

Outcome criterion2()
{
    Outcome o;
    theorem_table(o, Theorem::MinOrdinaryGeneralised, {{10, 20}, {12, 24}, {13, 51}, {15, 64}});
    return o;
}

Outcome criterion3()
{
    Outcome o;
    auto four = [&](const PointSet& S, long want, const std::string& what) {
        SpectrumReport r = spectrum_fast(S);
        long got = r.spectrum.four_point_generalised();
        o.require(r.undecided_predicates == 0, what + " undecided");
        o.require(got == want, what + " measured " + std::to_string(got));
        o.detail << what << "->" << got << " ";
    };
    four(generate(ConstructionSpec::ellipse(7)), 5, "ellipse n=7");
    four(generate(ConstructionSpec::ellipse(8)), 9, "ellipse n=8");
    ConstructionSpec ie = ConstructionSpec::ellipse(8);
    ie.kind = ConstructionKind::InvertedEllipse;
    four(generate(ie), 9, "acnodal image n=8");
    o.require(theorem_value(Theorem::MaxFourPoint, 8) == 10, "value n=8");

    // numeric synthesis on the two-component host, then exact certification
    ExactHost ex = z4z2_host();
    CubicHost h(ex.poly);
    SynthesisResult syn = synthesize_coset(h, 8, CosetVariant::HalfTimesZ2);
    o.require(syn.max_parameter_defect < 1e-9, "parameter defect");
    auto exact = rationalize(h, syn.points);
    o.require(exact.has_value(), "synthesized coset did not certify");
    if (exact) {
        for (const auto& p : exact->points)
            o.require(h.contains(Proj<Rational>{p.x.rational(), p.y.rational(), Rational(1)}), "point off host");
        four(*exact, 10, "Z4xZ2 n=8");
        o.require(spectrum_naive(*exact).spectrum.four_point_generalised() == 10, "Z4xZ2 oracle");
    }
    return o;
}

Outcome criterion4()
{
    Outcome o;
    for (int n = 5; n <= 14; ++n) {
        FiniteAbelianGroup G{n, 1};
        long ord = ordinary_congruence_count(G), fp = four_point_congruence_count(G);
        Integer formula = four_point_formula(n, delta_count(G), epsilon_count(G));
        SpectrumReport r = spectrum_fast(generate(ConstructionSpec::ellipse(n)));
        o.require(r.undecided_predicates == 0, "undecided at n=" + std::to_string(n));
        o.require(formula == fp, "formula vs congruence at n=" + std::to_string(n));
        o.require(r.spectrum.four_point_generalised() == fp, "measured 4-point at n=" + std::to_string(n));
        o.require(r.spectrum.ordinary_circles() == ord && r.spectrum.ordinary_generalised() == ord,
                  "measured ordinary at n=" + std::to_string(n));
        o.detail << n << ":" << ord << "/" << fp << " ";
    }
    return o;
}

Outcome criterion5()
{
    Outcome o;
    int ok = 0;
    for (const auto& b : inversion_case_battery()) {
        try {
            InversionCase c = verify_inversion_case_table(b.curve, InversionSpec(P(b.cx, b.cy), RealExpr(1)));
            o.require(c.measured == b.expected, b.name);
            ok += c.measured == b.expected;
        } catch (const Error& e) {
            o.require(false, b.name + ": " + e.what());
        }
    }
    CurvePoly ellipse = CurvePoly::parse("x^2-2x*z+2y^2");
    CurvePoly acnodal = acnodal_host_poly();
    InversionSpec at_origin(P(0, 0), RealExpr(1));
    bool forward = invert_curve(at_origin, ellipse).canonical() == acnodal.canonical();
    bool backward = invert_curve(at_origin, acnodal).canonical() == ellipse.canonical();
    o.require(forward && backward, "ellipse <-> acnodal pair");
    o.detail << ok << "/12 cases, ellipse<->acnodal " << (forward && backward ? "exact" : "differs");
    return o;
}

Outcome criterion6()
{
    Outcome o;
    for (const LawReport& r : {validate_ellipse_law(101, 600), validate_concentric_law(102, 600), validate_cubic_law(103, 600)}) {
        o.require(r.quadruples >= 500, r.group + " quadruples");
        o.require(r.mismatches == 0, r.group + " mismatches");
        o.require(r.tangency >= 50, r.group + " tangency cases");
        o.detail << r.group << ": " << r.quadruples << " quadruples, " << r.concyclic << " concyclic, " << r.tangency
                 << " tangency, " << r.mismatches << " mismatches; ";
    }
    return o;
}

std::vector<ConstructionSpec> constructions_up_to(int n_max)
{
    std::vector<ConstructionSpec> out;
    auto keep = [&](const ConstructionSpec& c) {
        try {
            check_domain(c);
            outer_radius(c);
            out.push_back(c);
        } catch (const Error&) {
        }
    };
    for (int n = 3; n <= n_max; ++n) {
        keep(ConstructionSpec::ellipse(n));
        ConstructionSpec ie = ConstructionSpec::ellipse(n);
        ie.kind = ConstructionKind::InvertedEllipse;
        keep(ie);
    }
    for (int m = 3; 2 * m <= n_max; ++m)
        for (auto k : {ConstructionKind::AlignedDoublePolygon, ConstructionKind::OffsetDoublePolygon}) {
            keep(dp(k, m));
            for (int sk = 1; 4 * sk < m; ++sk)
                keep(dp(k, m, sk));
        }
    for (int m = 3; 2 * m - 1 <= n_max; ++m)
        for (auto k : {ConstructionKind::PuncturedDoublePolygon, ConstructionKind::InvertedDoublePolygon})
            keep(dp(k, m));
    keep(ConstructionSpec::cubic_coset("z4z2", 8, CosetVariant::HalfTimesZ2));
    return out;
}

PointSet random_rational_set(std::mt19937_64& rng, int n, int grid)
{
    PointSet s;
    while (static_cast<int>(s.size()) < n) {
        Point q = P(static_cast<long>(rng() % grid) - grid / 2, static_cast<long>(rng() % grid) - grid / 2);
        bool dup = false;
        for (const auto& p : s.points)
            dup = dup || same_point(p, q);
        if (!dup)
            s.points.push_back(q);
    }
    return s;
}

Outcome criterion7()
{
    Outcome o;
    long sets = 0;
    for (const auto& c : constructions_up_to(14)) {
        PointSet S = generate(c);
        SpectrumReport a = spectrum_naive(S), b = spectrum_fast(S);
        o.require(a.undecided_predicates == 0 && b.undecided_predicates == 0, spec_name(c) + " undecided");
        o.require(a.spectrum == b.spectrum, spec_name(c));
        ++sets;
    }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        // small grids force collinear and concyclic coincidences
        PointSet S = random_rational_set(rng, 4 + i % 9, i % 2 ? 7 : 11);
        o.require(spectrum_naive(S).spectrum == spectrum_fast(S).spectrum, "random set " + std::to_string(i));
    }
    o.detail << sets << " constructions and 100 random sets agree";
    return o;
}

Outcome criterion8()
{
    Outcome o;
    std::vector<std::pair<std::string, PointSet>> families;
    families.push_back({"ellipse-subgroup", generate(ConstructionSpec::ellipse(12))});
    families.push_back({"aligned", generate(dp(ConstructionKind::AlignedDoublePolygon, 6))});
    families.push_back({"offset", generate(dp(ConstructionKind::OffsetDoublePolygon, 6))});
    ConstructionSpec ie = ConstructionSpec::ellipse(12);
    ie.kind = ConstructionKind::InvertedEllipse;
    families.push_back({"inverted-ellipse", generate(ie)});
    // the punctured and inverted polygons have 2m-1 points: m = 7 less one more point
    for (auto k : {ConstructionKind::PuncturedDoublePolygon, ConstructionKind::InvertedDoublePolygon}) {
        PointSet S = generate(dp(k, 7));
        S.points.pop_back();
        families.push_back({to_string(k), S});
    }
    {
        // rational points of the two-component cubic host, by chords from the exact coset
        ExactHost ex = z4z2_host();
        CubicHost h(ex.poly);
        PointSet S;
        for (const auto& p : chord_points(h, ex.coset, 12))
            S.points.push_back(affine_point(p));
        families.push_back({"cubic-coset", S});
    }
    for (auto& [name, S] : families) {
        o.require(S.size() == 12, name + " size");
        S.points.push_back(P(Rational(7, 3), Rational(-5, 11)));
        S.points.push_back(P(Rational(-13, 7), Rational(17, 5)));
        FitReport f = fit_bicircular_quartic(S, 2);
        bool ok = f.quartic.has_value() && f.inliers.size() >= 10;
        if (ok) {
            // degree 4 and double at both circular points, or a lower-degree member of the family
            auto cls = f.quartic->degree() == 4 ? circular_class(*f.quartic).kind : CircularClass::Other;
            ok = f.quartic->degree() < 4 || cls == CircularClass::BicircularQuartic;
        }
        o.require(ok, name);
        o.detail << name << ":" << f.inliers.size() << " ";
    }
    std::mt19937_64 rng(8);
    int spurious = 0;
    for (int i = 0; i < 50; ++i) {
        PointSet S;
        for (int k = 0; k < 12; ++k)
            S.points.push_back(P(Rational(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1),
                                 Rational(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 89) + 1)));
        spurious += fit_bicircular_quartic(S, 0).quartic.has_value();
    }
    o.require(spurious == 0, "random sets fitted");
    o.detail << "random fits " << spurious << "/50";
    return o;
}

Outcome criterion9()
{
    Outcome o;
    // stability under single and double edits
    std::mt19937_64 rng(9);
    std::vector<PointSet> bases{generate(dp(ConstructionKind::AlignedDoublePolygon, 5)),
                                generate(ConstructionSpec::ellipse(9)),
                                generate(dp(ConstructionKind::PuncturedDoublePolygon, 5))};
    long edits = 0, worst_slack = -1;
    for (int i = 0; i < 200; ++i) {
        PointSet S = i % 4 == 3 ? random_rational_set(rng, 8 + i % 3, 9) : bases[static_cast<std::size_t>(i % 3)];
        long s = spectrum_fast(S).spectrum.ordinary_generalised();
        const long n = static_cast<long>(S.size());
        long K = 1 + i % 2;
        PointSet T = S;
        for (long e = 0; e < K; ++e) {
            if (rng() % 2 && T.size() > 4) {
                T.points.erase(T.points.begin() + static_cast<long>(rng() % T.size()));
            } else {
                Point q;
                bool dup;
                do {
                    q = P(Rational(static_cast<long>(rng() % 41) - 20, 7), Rational(static_cast<long>(rng() % 41) - 20, 5));
                    dup = false;
                    for (const auto& p : T.points)
                        dup = dup || same_point(p, q);
                } while (dup);
                T.points.push_back(q);
            }
        }
        long t = spectrum_fast(T).spectrum.ordinary_generalised();
        Integer bound = stability_bound(n, s, K);
        o.require(Integer(t) <= bound, "edit " + std::to_string(i));
        long slack = Integer(bound - t).get_si();
        worst_slack = worst_slack < 0 ? slack : std::min(worst_slack, slack);
        ++edits;
    }
    o.detail << edits << " edits, least slack " << worst_slack << "; ";

    // points outside a double polygon lie on at most m ordinary generalised circles
    long samples = 0, worst = 0;
    for (int m = 4; m <= 8; ++m)
        for (auto k : {ConstructionKind::AlignedDoublePolygon, ConstructionKind::OffsetDoublePolygon}) {
            PointSet S = generate(dp(k, m));
            long undecided = 0;
            auto circles = enumerate_circles(S, &undecided);
            o.require(undecided == 0, "undecided circles");
            for (int a = 0; a <= 20; ++a)
                for (int b = 0; b <= 20; ++b) {
                    Point q = P(Rational(2 * a - 20, 5), Rational(2 * b - 20, 5)); // [-4, 4]^2 in steps of 2/5
                    bool in = false;
                    for (const auto& p : S.points)
                        in = in || same_point(p, q);
                    if (in)
                        continue;
                    long c = circles_through_point(S, circles, q, CircleClass::OrdinaryGeneralised);
                    worst = std::max(worst, c - m);
                    o.require(c <= m, std::string(to_string(k)) + " m=" + std::to_string(m) + " q=(" +
                                          std::to_string(2 * a - 20) + "/5," + std::to_string(2 * b - 20) + "/5) count " +
                                          std::to_string(c));
                    ++samples;
                }
        }
    o.detail << samples << " grid points, max excess over m " << worst;
    return o;
}

} // namespace

int main()
{
    std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"minimum ordinary circles table", criterion1},
        {"minimum ordinary generalised circles table", criterion2},
        {"maximum 4-point circles at n=7,8", criterion3},
        {"ellipse subgroup closed forms", criterion4},
        {"curve inversion case battery", criterion5},
        {"four-point group criteria", criterion6},
        {"fast counter vs oracle", criterion7},
        {"bicircular quartic fitter", criterion8},
        {"stability and external point bounds", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu: %s  %s (%.1fs)  %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
