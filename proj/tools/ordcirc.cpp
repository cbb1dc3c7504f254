// ordcirc: generate point configurations, count their circles, check the extremal tables.
//
// Exit codes: 0 ok, 1 failed verdict, 2 invalid input, 3 undecided predicate, 4 no witness known.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ordcirc/constructions/constructions.hpp"
#include "ordcirc/curves/circular.hpp"
#include "ordcirc/curves/fit.hpp"
#include "ordcirc/curves/invert.hpp"
#include "ordcirc/curves/singular.hpp"
#include "ordcirc/groups/validation.hpp"
#include "ordcirc/io/svg.hpp"
#include "ordcirc/spectrum/spectrum.hpp"

using namespace ordcirc;

namespace {

enum Exit { Ok = 0, Failed = 1, BadInput = 2, Undecided = 3, NoWitness = 4 };

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::PredicateUndecided:
    case ErrorKind::PrecisionExhausted: return Undecided;
    case ErrorKind::NoWitnessKnown: return NoWitness;
    case ErrorKind::Mismatch:
    case ErrorKind::CaseMismatch:
    case ErrorKind::ToleranceExceeded: return Failed;
    default: return BadInput;
    }
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::InvalidParameters, "cannot write '" + path + "'");
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

CurvePoly read_curve(const std::string& path)
{
    json j = read_json(path);
    if (j.is_object() && j.contains("curve"))
        return curve_from_json(j["curve"]);
    return curve_from_json(j);
}

std::pair<Rational, Rational> parse_pair(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw Error(ErrorKind::ParseError, "expected 'x,y' but got '" + s + "'");
    return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

json check_line(const std::string& claim, const std::string& expected, const std::string& measured, bool pass)
{
    return json{{"claim", claim}, {"expected", expected}, {"measured", measured}, {"verdict", pass ? "pass" : "fail"}};
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    ~Timer()
    {
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << "wall_time " << s << " s\n";
    }
};

// ---------------------------------------------------------------------------

struct GenerateArgs {
    std::string kind;
    int n = 0, m = 0, removed = 0, h = 0;
    std::string r, s, t, host = "z4z2", variant = "cyclic", curve_file;
    std::optional<int> special_k;
    std::string out;
};

ConstructionSpec spec_from_args(const GenerateArgs& a)
{
    ConstructionSpec c;
    c.kind = construction_kind_from_string(a.kind);
    c.n = a.n;
    c.m = a.m;
    if (!a.r.empty())
        c.r = parse_rational(a.r);
    if (!a.s.empty())
        c.s = parse_rational(a.s);
    if (!a.t.empty())
        c.t = parse_rational(a.t);
    c.special_k = a.special_k;
    c.removed = a.removed;
    c.host = a.host;
    if (!a.curve_file.empty()) {
        c.host = "custom";
        c.curve = read_curve(a.curve_file);
    }
    if (a.variant == "cyclic")
        c.variant = CosetVariant::Cyclic;
    else if (a.variant == "half-times-z2")
        c.variant = CosetVariant::HalfTimesZ2;
    else
        throw Error(ErrorKind::InvalidParameters, "unknown variant '" + a.variant + "'");
    c.h = a.h;
    return c;
}

int cmd_generate(const GenerateArgs& a)
{
    PointSet P = generate(spec_from_args(a));
    write_text(a.out, dump(pointset_to_json(P)));
    return Ok;
}

struct SpectrumArgs {
    std::string file, backend = "fast", format = "json";
    unsigned threads = 0;
};

int cmd_spectrum(const SpectrumArgs& a)
{
    PointSet P = pointset_from_json(read_json(a.file));
    SpectrumReport r;
    if (a.backend == "naive")
        r = spectrum_naive(P);
    else if (a.backend == "fast")
        r = spectrum_fast(P, a.threads);
    else
        throw Error(ErrorKind::InvalidParameters, "unknown backend '" + a.backend + "'");
    if (a.format == "csv")
        std::cout << spectrum_to_csv(r);
    else if (a.format == "json")
        std::cout << dump(spectrum_to_json(r));
    else
        throw Error(ErrorKind::InvalidParameters, "unknown format '" + a.format + "'");
    std::cerr << "wall_time " << r.wall_time << " s\n";
    if (r.undecided_predicates > 0) {
        std::cerr << "error: " << r.undecided_predicates << " predicates undecided\n";
        return Undecided;
    }
    return Ok;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string theorem, construction;
    long n = 0;
    bool inversion_table = false, group_laws = false;
    long count = 500;
    std::uint64_t seed = 1;
};

// measured vs expected for every specified count; 3 when some predicate stayed undecided
int verify_counts(const ConstructionSpec& spec, const ExpectedCounts& e, json& checks, long* undecided_out)
{
    PointSet P = generate(spec);
    SpectrumReport r = spectrum_fast(P);
    *undecided_out = r.undecided_predicates;
    const std::string name = construction_to_json(spec).dump();
    auto add = [&](const char* what, const std::optional<Integer>& want, long got) {
        if (!want)
            return;
        bool pass = r.undecided_predicates == 0 && *want == got;
        checks.push_back(check_line(std::string(what) + " of " + name, want->get_str(),
                                    r.undecided_predicates ? "undecided" : std::to_string(got), pass));
    };
    add("ordinary circles", e.ordinary_circles, r.spectrum.ordinary_circles());
    add("ordinary generalised circles", e.ordinary_generalised, r.spectrum.ordinary_generalised());
    add("4-point generalised circles", e.four_point_generalised, r.spectrum.four_point_generalised());
    return r.undecided_predicates ? Undecided : Ok;
}

int finish(const json& checks)
{
    bool all = true;
    for (const auto& c : checks)
        all = all && c["verdict"] == "pass";
    std::cout << dump(json{{"checks", checks}, {"verdict", all ? "pass" : "fail"}});
    return all ? Ok : Failed;
}

int cmd_verify(const VerifyArgs& a)
{
    json checks = json::array();
    int undecided = Ok;
    if (!a.theorem.empty()) {
        Theorem t = theorem_from_string(a.theorem);
        ConstructionSpec w = extremal_witness(t, a.n);
        Integer want = theorem_value(t, a.n);
        ExpectedCounts e;
        switch (t) {
        case Theorem::MinOrdinary: e.ordinary_circles = want; break;
        case Theorem::MinOrdinaryGeneralised: e.ordinary_generalised = want; break;
        case Theorem::MaxFourPoint: e.four_point_generalised = want; break;
        }
        long und = 0;
        undecided = verify_counts(w, e, checks, &und);
        checks.back()["claim"] = std::string(describe(t)) + " at n = " + std::to_string(a.n) + " via " +
                                 construction_to_json(w).dump();
    } else if (!a.construction.empty()) {
        ConstructionSpec c = construction_from_json(read_json(a.construction));
        long und = 0;
        undecided = verify_counts(c, expected_counts(c), checks, &und);
    } else if (a.inversion_table) {
        for (const auto& b : inversion_case_battery()) {
            InversionSpec spec(Point(RealExpr(b.cx), RealExpr(b.cy)), RealExpr(1));
            std::string measured;
            try {
                measured = verify_inversion_case_table(b.curve, spec).measured;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::CaseMismatch)
                    throw;
                measured = curve_case_label(invert_curve(spec, b.curve));
            }
            checks.push_back(check_line(b.name, b.expected, measured, measured == b.expected));
        }
        InversionSpec origin(Point(RealExpr(0), RealExpr(0)), RealExpr(1));
        CurvePoly ellipse = CurvePoly::parse("x^2-2x*z+2y^2"), acnodal = acnodal_host_poly();
        CurvePoly fwd = invert_curve(origin, ellipse), back = invert_curve(origin, acnodal);
        checks.push_back(check_line("ellipse inverted at the origin", acnodal.canonical().str(), fwd.str(),
                                    fwd == acnodal.canonical()));
        checks.push_back(check_line("acnodal cubic inverted at its acnode", ellipse.canonical().str(), back.str(),
                                    back == ellipse.canonical()));
    } else if (a.group_laws) {
        for (const auto& r : {validate_ellipse_law(a.seed, a.count), validate_concentric_law(a.seed + 1, a.count),
                              validate_cubic_law(a.seed + 2, a.count)}) {
            json c = check_line(r.group + " four-point criterion", "0 mismatches", std::to_string(r.mismatches) + " mismatches",
                                r.passed());
            c["details"] = law_report_to_json(r);
            checks.push_back(c);
        }
    } else {
        throw Error(ErrorKind::InvalidParameters,
                    "verify needs one of --theorem, --construction, --inversion-table, --group-laws");
    }
    int rc = finish(checks);
    return rc == Ok ? undecided : (undecided == Undecided ? Undecided : rc);
}

// ---------------------------------------------------------------------------

struct CurveArgs {
    std::string action, file, center, radius2 = "1";
    long max_outliers = 0;
};

int cmd_curve(const CurveArgs& a)
{
    if (a.action == "fit") {
        PointSet P = pointset_from_json(read_json(a.file));
        FitReport r = fit_bicircular_quartic(P, static_cast<std::size_t>(a.max_outliers));
        json j{{"found", r.quartic.has_value()},
               {"inliers", r.inliers},
               {"outliers", r.outliers},
               {"residual_certified", r.residual_certified}};
        if (r.quartic)
            j["quartic"] = curve_to_json(*r.quartic);
        std::cout << dump(j);
        return Ok;
    }
    CurvePoly f = read_curve(a.file);
    if (a.action == "invert") {
        if (a.center.empty())
            throw Error(ErrorKind::InvalidParameters, "invert needs --center x,y");
        auto [x, y] = parse_pair(a.center);
        InversionSpec spec(Point(RealExpr(x), RealExpr(y)), RealExpr(parse_rational(a.radius2)));
        CurvePoly g = invert_curve(spec, f);
        json j = curve_to_json(g);
        j["polynomial"] = g.str();
        j["class"] = curve_case_label(g);
        std::cout << dump(j);
    } else if (a.action == "classify") {
        CircularClass c = circular_class(f);
        std::cout << dump(json{{"class", c.name()},
                               {"degree", c.degree},
                               {"mult_alpha", c.mult_alpha},
                               {"mult_beta", c.mult_beta},
                               {"circular_degree", circular_degree(f)}});
    } else if (a.action == "singular") {
        if (f.degree() != 3)
            throw Error(ErrorKind::UnsupportedDegree, "singular points are computed for cubics");
        json pts = json::array();
        for (const auto& s : singular_points_cubic(f))
            pts.push_back(json{{"point", {format_rational(s.point[0]), format_rational(s.point[1]), format_rational(s.point[2])}},
                               {"type", s.type}});
        std::cout << dump(json{{"singular_points", pts}});
    } else {
        throw Error(ErrorKind::InvalidParameters, "unknown curve action '" + a.action + "'");
    }
    return Ok;
}

struct PlotArgs {
    std::string file, out, show = "none";
    int size = 600;
};

int cmd_plot(const PlotArgs& a)
{
    PointSet P = pointset_from_json(read_json(a.file));
    if (P.size() > 200)
        throw Error(ErrorKind::InvalidParameters, "plot supports at most 200 points");
    std::vector<GeneralisedCircle> circles;
    if (a.show == "ordinary")
        circles = circles_with_members(P, 3);
    else if (a.show == "4point")
        circles = circles_with_members(P, 4);
    else if (a.show != "none")
        throw Error(ErrorKind::InvalidParameters, "unknown overlay '" + a.show + "'");
    SvgOptions opt;
    opt.size = a.size;
    write_text(a.out, render_svg(P, circles, opt));
    return Ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ordinary and 4-point circles of planar point sets"};
    app.require_subcommand(1);

    GenerateArgs ga;
    auto* gen = app.add_subcommand("generate", "Generate a construction as a point-set JSON");
    gen->add_option("kind", ga.kind, "ellipse-subgroup | cubic-coset | aligned | offset | punctured | inverted | inverted-ellipse")
        ->required();
    gen->add_option("--n", ga.n, "number of points (ellipse and cubic families)");
    gen->add_option("--m", ga.m, "polygon size (double polygons)");
    gen->add_option("--r", ga.r, "outer radius p/q");
    gen->add_option("--special-k", ga.special_k, "use r = 1/cos(2 pi k/m)");
    gen->add_option("--s", ga.s, "ellipse semi-axis");
    gen->add_option("--t", ga.t, "inversion centre parameter on the ellipse");
    gen->add_option("--removed", ga.removed, "removed index on the inner circle");
    gen->add_option("--host", ga.host, "z4z2 | acnodal | inverted-ellipse");
    gen->add_option("--curve", ga.curve_file, "custom circular cubic host (curve JSON)");
    gen->add_option("--variant", ga.variant, "cyclic | half-times-z2");
    gen->add_option("--h-index", ga.h, "index of h in the subgroup");
    gen->add_option("--out", ga.out, "output file (default stdout)");

    SpectrumArgs sa;
    auto* spec = app.add_subcommand("spectrum", "Count lines and circles by number of points");
    spec->add_option("file", sa.file)->required();
    spec->add_option("--backend", sa.backend, "naive | fast");
    spec->add_option("--format", sa.format, "json | csv");
    spec->add_option("--threads", sa.threads, "worker threads (0 = hardware)");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "Check extremal values, construction counts, inversion cases or group laws");
    ver->add_option("--theorem", va.theorem, "1.1 | 1.2 | 1.3");
    ver->add_option("--n", va.n, "number of points");
    ver->add_option("--construction", va.construction, "construction JSON file");
    ver->add_flag("--inversion-table", va.inversion_table, "curve inversion case battery");
    ver->add_flag("--group-laws", va.group_laws, "randomized four-point criteria");
    ver->add_option("--count", va.count, "quadruples per group");
    ver->add_option("--seed", va.seed, "random seed");

    CurveArgs ca;
    auto* cur = app.add_subcommand("curve", "Curve algebra");
    cur->add_option("action", ca.action, "invert | classify | singular | fit")->required();
    cur->add_option("file", ca.file, "curve JSON (point-set JSON for fit)")->required();
    cur->add_option("--center", ca.center, "inversion centre x,y");
    cur->add_option("--radius2", ca.radius2, "squared inversion radius");
    cur->add_option("--max-outliers", ca.max_outliers, "outliers allowed by fit");

    PlotArgs pa;
    auto* plot = app.add_subcommand("plot", "Render a point set as SVG");
    plot->add_option("file", pa.file)->required();
    plot->add_option("--out", pa.out, "output SVG (default stdout)");
    plot->add_option("--show-circles", pa.show, "ordinary | 4point | none");
    plot->add_option("--size", pa.size, "viewport in pixels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : BadInput;
    }

    try {
        if (*gen) {
            Timer t;
            return cmd_generate(ga);
        }
        if (*spec)
            return cmd_spectrum(sa);
        if (*ver) {
            Timer t;
            return cmd_verify(va);
        }
        if (*cur) {
            Timer t;
            return cmd_curve(ca);
        }
        if (*plot) {
            Timer t;
            return cmd_plot(pa);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BadInput;
    }
    return Ok;
}
