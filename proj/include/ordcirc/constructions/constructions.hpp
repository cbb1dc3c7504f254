#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordcirc/groups/ellipse.hpp"
#include "ordcirc/groups/hosts.hpp"
#include "ordcirc/groups/synthesis.hpp"

namespace ordcirc {

enum class ConstructionKind {
    EllipseSubgroup,
    CubicCoset,
    AlignedDoublePolygon,
    OffsetDoublePolygon,
    PuncturedDoublePolygon,
    InvertedDoublePolygon,
    InvertedEllipse,
};

inline const char* to_string(ConstructionKind k)
{
    switch (k) {
    case ConstructionKind::EllipseSubgroup: return "ellipse-subgroup";
    case ConstructionKind::CubicCoset: return "cubic-coset";
    case ConstructionKind::AlignedDoublePolygon: return "aligned";
    case ConstructionKind::OffsetDoublePolygon: return "offset";
    case ConstructionKind::PuncturedDoublePolygon: return "punctured";
    case ConstructionKind::InvertedDoublePolygon: return "inverted";
    case ConstructionKind::InvertedEllipse: return "inverted-ellipse";
    }
    return "unknown";
}

inline ConstructionKind construction_kind_from_string(const std::string& s)
{
    for (auto k : {ConstructionKind::EllipseSubgroup, ConstructionKind::CubicCoset, ConstructionKind::AlignedDoublePolygon,
                   ConstructionKind::OffsetDoublePolygon, ConstructionKind::PuncturedDoublePolygon,
                   ConstructionKind::InvertedDoublePolygon, ConstructionKind::InvertedEllipse})
        if (s == to_string(k))
            return k;
    throw Error(ErrorKind::InvalidParameters, "unknown construction kind '" + s + "'");
}

// Unused fields are ignored by the kind that does not need them.
// n: point count for ellipse/cubic families; m: polygon size for the double polygons.
struct ConstructionSpec {
    ConstructionKind kind = ConstructionKind::EllipseSubgroup;
    int n = 0;
    int m = 0;
    Rational s{2};                 // ellipse x^2 + (y/s)^2 = 1
    Rational r{3};                 // outer radius when special_k is unset
    std::optional<int> special_k;  // r = 1/cos(2 pi k/m)
    int removed = 0;               // index on the inner circle
    Rational t{1, 2};              // inversion centre ((1-t^2)/(1+t^2), 2st/(1+t^2)) on the ellipse
    std::string host = "z4z2";     // z4z2 | acnodal | inverted-ellipse | custom
    std::optional<CurvePoly> curve; // used when host == "custom"
    CosetVariant variant = CosetVariant::Cyclic;
    int h = 0;

    static ConstructionSpec ellipse(int n, Rational s = 2)
    {
        ConstructionSpec c;
        c.kind = ConstructionKind::EllipseSubgroup;
        c.n = n;
        c.s = std::move(s);
        return c;
    }
    static ConstructionSpec double_polygon(ConstructionKind k, int m, std::optional<int> special = std::nullopt)
    {
        ConstructionSpec c;
        c.kind = k;
        c.m = m;
        c.special_k = special;
        return c;
    }
    static ConstructionSpec cubic_coset(std::string host, int n, CosetVariant v, int h = 0)
    {
        ConstructionSpec c;
        c.kind = ConstructionKind::CubicCoset;
        c.host = std::move(host);
        c.n = n;
        c.variant = v;
        c.h = h;
        return c;
    }
};

inline bool is_double_polygon(ConstructionKind k)
{
    return k == ConstructionKind::AlignedDoublePolygon || k == ConstructionKind::OffsetDoublePolygon ||
           k == ConstructionKind::PuncturedDoublePolygon || k == ConstructionKind::InvertedDoublePolygon;
}

inline json construction_to_json(const ConstructionSpec& c)
{
    json p = json::object();
    if (is_double_polygon(c.kind)) {
        p["m"] = c.m;
        if (c.special_k)
            p["special_k"] = *c.special_k;
        else
            p["r"] = format_rational(c.r);
        if (c.kind == ConstructionKind::PuncturedDoublePolygon || c.kind == ConstructionKind::InvertedDoublePolygon)
            p["removed"] = c.removed;
    } else if (c.kind == ConstructionKind::CubicCoset) {
        p["n"] = c.n;
        p["host"] = c.host;
        if (c.host == "custom" && c.curve)
            p["curve"] = curve_to_json(*c.curve);
        p["variant"] = c.variant == CosetVariant::Cyclic ? "cyclic" : "half-times-z2";
        p["h"] = c.h;
    } else {
        p["n"] = c.n;
        p["s"] = format_rational(c.s);
        if (c.kind == ConstructionKind::InvertedEllipse)
            p["t"] = format_rational(c.t);
    }
    return json{{"kind", to_string(c.kind)}, {"params", p}};
}

inline ConstructionSpec construction_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("kind"))
        throw Error(ErrorKind::ParseError, "construction needs a 'kind'");
    ConstructionSpec c;
    c.kind = construction_kind_from_string(j["kind"].get<std::string>());
    const json p = j.value("params", json::object());
    auto rat = [&](const char* key, const Rational& def) -> Rational {
        if (!p.contains(key))
            return def;
        const auto& v = p[key];
        return v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>());
    };
    c.n = p.value("n", 0);
    c.m = p.value("m", 0);
    c.s = rat("s", Rational(2));
    c.r = rat("r", Rational(3));
    c.t = rat("t", Rational(1, 2));
    if (p.contains("special_k"))
        c.special_k = p["special_k"].get<int>();
    c.removed = p.value("removed", 0);
    c.host = p.value("host", std::string("z4z2"));
    if (p.contains("curve"))
        c.curve = curve_from_json(p["curve"]);
    std::string v = p.value("variant", std::string("cyclic"));
    if (v == "cyclic")
        c.variant = CosetVariant::Cyclic;
    else if (v == "half-times-z2")
        c.variant = CosetVariant::HalfTimesZ2;
    else
        throw Error(ErrorKind::InvalidParameters, "unknown coset variant '" + v + "'");
    c.h = p.value("h", 0);
    return c;
}

// ---------------------------------------------------------------------------
// Generation

inline RealExpr outer_radius(const ConstructionSpec& c)
{
    if (c.special_k) {
        int k = *c.special_k;
        RealExpr cs = RealExpr::cos(Angle(k, c.m));
        if (decide(cs) != Sign::Positive)
            throw Error(ErrorKind::InvalidParameters, "special radius needs cos(2 pi k/m) > 0");
        return RealExpr(1) / cs;
    }
    if (c.r <= 1)
        throw Error(ErrorKind::InvalidParameters, "outer radius must exceed 1");
    // generic: no tangent line at an inner vertex through two outer points
    for (int k = 1; k < c.m; ++k)
        if (certified_zero(RealExpr(c.r) * RealExpr::cos(Angle(k, c.m)) - RealExpr(1)))
            throw Error(ErrorKind::InvalidParameters,
                        "r = " + format_rational(c.r) + " is the special radius 1/cos(2 pi " + std::to_string(k) + "/" +
                            std::to_string(c.m) + ")");
    return RealExpr(c.r);
}

inline void check_domain(const ConstructionSpec& c)
{
    auto bad = [](const std::string& w) { throw Error(ErrorKind::InvalidParameters, w); };
    switch (c.kind) {
    case ConstructionKind::EllipseSubgroup:
    case ConstructionKind::InvertedEllipse:
        if (c.n < 4)
            bad("ellipse subgroup needs n >= 4");
        if (c.s == 0 || c.s == 1 || c.s == -1)
            bad("ellipse semi-axis must differ from 0 and 1");
        break;
    case ConstructionKind::CubicCoset:
        if (c.n < 4)
            bad("cubic coset needs n >= 4");
        break;
    case ConstructionKind::AlignedDoublePolygon:
    case ConstructionKind::OffsetDoublePolygon:
        if (c.m < 3)
            bad("double polygon needs m >= 3");
        break;
    case ConstructionKind::PuncturedDoublePolygon:
    case ConstructionKind::InvertedDoublePolygon:
        if (c.m < 3)
            bad("double polygon needs m >= 3");
        if (c.removed < 0 || c.removed >= c.m)
            bad("removed index out of range");
        break;
    }
}

inline CurvePoly cubic_host_poly(const ConstructionSpec& c)
{
    if (c.host == "z4z2")
        return z4z2_host().poly;
    if (c.host == "acnodal")
        return acnodal_host_poly();
    if (c.host == "inverted-ellipse")
        return inverted_ellipse_host_poly();
    if (c.host == "custom" && c.curve)
        return *c.curve;
    throw Error(ErrorKind::InvalidParameters, "unknown cubic host '" + c.host + "'");
}

inline PointSet generate(const ConstructionSpec& c)
{
    check_domain(c);
    PointSet out;
    out.meta = json{{"construction", construction_to_json(c)}};
    const std::string name = to_string(c.kind);

    switch (c.kind) {
    case ConstructionKind::EllipseSubgroup:
    case ConstructionKind::InvertedEllipse: {
        EllipseHost host(c.s);
        for (int k = 0; k < c.n; ++k) {
            Point p = host.embed(Angle(k, c.n));
            p.tag = name + ":k=" + std::to_string(k);
            out.points.push_back(std::move(p));
        }
        if (c.kind == ConstructionKind::InvertedEllipse) {
            Rational d = 1 + c.t * c.t;
            Point centre(RealExpr(Rational((1 - c.t * c.t) / d)), RealExpr(Rational(2 * c.s * c.t / d)));
            InversionSpec inv(centre, RealExpr(1));
            for (auto& p : out.points)
                p = invert_point(inv, p);
        }
        return out;
    }
    case ConstructionKind::CubicCoset: {
        CubicHost host(cubic_host_poly(c));
        SynthesisResult res = synthesize_coset(host, c.n, c.variant, c.h);
        PointSet pts = res.points;
        if (auto exact = rationalize(host, pts))
            pts = *exact;
        for (auto& p : pts.points)
            p.tag = name + ":" + p.tag;
        out.points = std::move(pts.points);
        out.meta["coset"] = pts.meta;
        out.meta["max_parameter_defect"] = res.max_parameter_defect;
        return out;
    }
    default: break;
    }

    // double polygons
    RealExpr r = outer_radius(c);
    const bool offset = c.kind == ConstructionKind::OffsetDoublePolygon;
    for (int k = 0; k < c.m; ++k) {
        if ((c.kind == ConstructionKind::PuncturedDoublePolygon || c.kind == ConstructionKind::InvertedDoublePolygon) &&
            k == c.removed)
            continue;
        Angle a(k, c.m);
        out.points.push_back({RealExpr::cos(a), RealExpr::sin(a), name + ":circle=1,k=" + std::to_string(k)});
    }
    for (int k = 0; k < c.m; ++k) {
        Angle a = offset ? Angle(-(2 * k - 1), 2 * c.m) : Angle(k, c.m);
        out.points.push_back({r * RealExpr::cos(a), r * RealExpr::sin(a), name + ":circle=2,k=" + std::to_string(k)});
    }
    if (c.kind == ConstructionKind::InvertedDoublePolygon) {
        Angle a(c.removed, c.m);
        InversionSpec inv(Point(RealExpr::cos(a), RealExpr::sin(a)), RealExpr(1));
        for (auto& p : out.points)
            p = invert_point(inv, p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Congruence counts

// Z_c x Z_e written additively, element i = (i mod c, i / c).
struct FiniteAbelianGroup {
    int c = 1;
    int e = 1;

    int size() const { return c * e; }
    int add(int a, int b) const { return (a % c + b % c) % c + ((a / c + b / c) % e) * c; }
    int mul(int a, int k) const
    {
        int r = 0;
        for (int i = 0; i < k; ++i)
            r = add(r, a);
        return r;
    }
};

// number of solutions of k x = h
inline long solutions_count(const FiniteAbelianGroup& G, int k, int h)
{
    long n = 0;
    for (int x = 0; x < G.size(); ++x)
        n += G.mul(x, k) == h;
    return n;
}

inline long delta_count(const FiniteAbelianGroup& G, int h = 0) { return solutions_count(G, 2, h); }
inline long epsilon_count(const FiniteAbelianGroup& G, int h = 0) { return solutions_count(G, 4, h); }

// 1/2 |{(a,b,c) distinct : 2a + b + c = h}|
inline long ordinary_congruence_count(const FiniteAbelianGroup& G, int h = 0)
{
    long n = 0;
    const int N = G.size();
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            if (b == a)
                continue;
            for (int c = 0; c < N; ++c)
                if (c != a && c != b && G.add(G.mul(a, 2), G.add(b, c)) == h)
                    ++n;
        }
    return n / 2;
}

// 4-subsets with sum h
inline long four_point_congruence_count(const FiniteAbelianGroup& G, int h = 0)
{
    long n = 0;
    const int N = G.size();
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            for (int c = b + 1; c < N; ++c)
                for (int d = c + 1; d < N; ++d)
                    n += G.add(G.add(a, b), G.add(c, d)) == h;
    return n;
}

// (n^3 - 6n^2 + (8 + 3 delta) n - 6 eps) / 24
inline Integer four_point_formula(long n, long delta, long eps)
{
    Integer v = Integer(n) * n * n - 6 * Integer(n) * n + (8 + 3 * delta) * Integer(n) - 6 * eps;
    if (v % 24 != 0)
        throw Error(ErrorKind::Mismatch, "four-point formula is not integral");
    return v / 24;
}

// |{(k1,k2,k3) in Z_m^3 : 2k1 + k2 + k3 = t, k2 != k3}|
inline long double_polygon_triple_count(int m, int t)
{
    long n = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                n += b != c && ((2 * a + b + c - t) % m + m) % m == 0;
    return n;
}

// 1/4 |{(k1..k4) in Z_m^4 : k1 + k2 + k3 + k4 = 0, k1 != k2, k3 != k4}|
inline long aligned_four_point_count(int m)
{
    long n = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int d = 0; d < m; ++d)
                    n += a != b && c != d && (a + b + c + d) % m == 0;
    return n / 4;
}

// ---------------------------------------------------------------------------
// Expected counts

struct ExpectedCounts {
    std::optional<Integer> ordinary_circles;
    std::optional<Integer> ordinary_generalised;
    std::optional<Integer> four_point_generalised;
    std::optional<long> delta;
    std::optional<long> epsilon;
};

inline json expected_to_json(const ExpectedCounts& e)
{
    auto f = [](const std::optional<Integer>& v) -> json { return v ? json(v->get_str()) : json("not-specified"); };
    json j{{"ordinary_circles", f(e.ordinary_circles)},
           {"ordinary_generalised", f(e.ordinary_generalised)},
           {"four_point_generalised", f(e.four_point_generalised)}};
    if (e.delta)
        j["delta"] = *e.delta;
    if (e.epsilon)
        j["epsilon"] = *e.epsilon;
    return j;
}

inline FiniteAbelianGroup coset_group(const ConstructionSpec& c)
{
    if (c.kind == ConstructionKind::CubicCoset && c.variant == CosetVariant::HalfTimesZ2)
        return {c.n / 2, 2};
    return {c.n, 1};
}

inline ExpectedCounts expected_counts(const ConstructionSpec& c)
{
    check_domain(c);
    ExpectedCounts e;
    const long m = c.m;
    switch (c.kind) {
    case ConstructionKind::EllipseSubgroup:
    case ConstructionKind::InvertedEllipse:
    case ConstructionKind::CubicCoset: {
        if (c.kind == ConstructionKind::CubicCoset && c.variant == CosetVariant::HalfTimesZ2 && c.n % 4 != 0)
            throw Error(ErrorKind::InvalidParameters, "the Z2 variant needs n divisible by 4");
        FiniteAbelianGroup G = coset_group(c);
        if (c.h < 0 || c.h >= G.size())
            throw Error(ErrorKind::InvalidParameters, "h index out of range");
        int h = c.kind == ConstructionKind::CubicCoset ? c.h : 0;
        e.delta = delta_count(G, h);
        e.epsilon = epsilon_count(G, h);
        e.four_point_generalised = four_point_formula(c.n, *e.delta, *e.epsilon);
        e.ordinary_generalised = Integer(ordinary_congruence_count(G, h));
        // no three points of a conic are collinear
        if (c.kind == ConstructionKind::EllipseSubgroup)
            e.ordinary_circles = e.ordinary_generalised;
        return e;
    }
    case ConstructionKind::AlignedDoublePolygon: {
        outer_radius(c);
        if (m < 4)
            return e;
        e.ordinary_generalised = Integer(m % 2 == 0 ? m * (m - 2) : m * (m - 1));
        e.ordinary_circles = *e.ordinary_generalised - (c.special_k ? m : 0);
        // for m = 4 the two circles are themselves 4-point circles
        e.four_point_generalised = Integer(aligned_four_point_count(c.m) + (m == 4 ? 2 : 0));
        return e;
    }
    case ConstructionKind::OffsetDoublePolygon: {
        outer_radius(c);
        if (m < 4 || c.special_k)
            return e;
        e.ordinary_generalised = Integer(m % 2 == 0 ? m * m : m * (m - 1));
        e.ordinary_circles = e.ordinary_generalised;
        return e;
    }
    case ConstructionKind::PuncturedDoublePolygon:
    case ConstructionKind::InvertedDoublePolygon: {
        outer_radius(c);
        if (c.special_k)
            return e;
        if (m >= 6) {
            // 3/2 m^2 - 7/2 m + 2 (m odd), 3/2 m^2 - 9/2 m + 4 (m even)
            Integer twice = m % 2 == 1 ? Integer(3 * m * m - 7 * m + 4) : Integer(3 * m * m - 9 * m + 8);
            e.ordinary_generalised = twice / 2;
        }
        if (c.kind == ConstructionKind::InvertedDoublePolygon && m >= 5)
            e.ordinary_circles = m % 2 == 1 ? Integer((m - 1) * (2 * m - 3) / 2) : Integer((m - 2) * (2 * m - 3) / 2);
        return e;
    }
    }
    return e;
}

// ---------------------------------------------------------------------------
// Extremal values

enum class Theorem { MinOrdinary, MinOrdinaryGeneralised, MaxFourPoint };

inline const char* to_string(Theorem t)
{
    switch (t) {
    case Theorem::MinOrdinary: return "1.1";
    case Theorem::MinOrdinaryGeneralised: return "1.2";
    case Theorem::MaxFourPoint: return "1.3";
    }
    return "?";
}

inline const char* describe(Theorem t)
{
    switch (t) {
    case Theorem::MinOrdinary: return "minimum number of ordinary circles";
    case Theorem::MinOrdinaryGeneralised: return "minimum number of ordinary generalised circles";
    case Theorem::MaxFourPoint: return "maximum number of 4-point generalised circles";
    }
    return "?";
}

inline Theorem theorem_from_string(const std::string& s)
{
    if (s == "1.1")
        return Theorem::MinOrdinary;
    if (s == "1.2")
        return Theorem::MinOrdinaryGeneralised;
    if (s == "1.3")
        return Theorem::MaxFourPoint;
    throw Error(ErrorKind::InvalidParameters, "unknown theorem '" + s + "' (expected 1.1, 1.2 or 1.3)");
}

// Piecewise extremal value; the "n sufficiently large" threshold is not enforced.
inline Integer theorem_value(Theorem which, long n)
{
    const Rational N(n);
    auto q = [](long a, long b) { return Rational(a, b); };
    Rational v;
    switch (which) {
    case Theorem::MinOrdinary:
        switch (n % 4) {
        case 0: v = q(1, 4) * N * N - q(3, 2) * N; break;
        case 1: v = q(1, 4) * N * N - q(3, 4) * N + q(1, 2); break;
        case 2: v = q(1, 4) * N * N - N; break;
        default: v = q(1, 4) * N * N - q(5, 4) * N + q(3, 2); break;
        }
        break;
    case Theorem::MinOrdinaryGeneralised:
        switch (n % 4) {
        case 0: v = q(1, 4) * N * N - N; break;
        case 1: v = q(3, 8) * N * N - N + q(5, 8); break;
        case 2: v = q(1, 4) * N * N - q(1, 2) * N; break;
        default: v = q(3, 8) * N * N - q(3, 2) * N + q(17, 8); break;
        }
        break;
    case Theorem::MaxFourPoint: {
        Rational base = N * N * N / 24 - N * N / 4;
        if (n % 2 == 1)
            v = base + q(11, 24) * N - q(1, 4);
        else if (n % 8 == 0)
            v = base + q(5, 6) * N - 2;
        else if (n % 8 == 4)
            v = base + q(5, 6) * N - 1;
        else
            v = base + q(7, 12) * N - q(1, 2);
        break;
    }
    }
    if (v.get_den() != 1)
        throw Error(ErrorKind::Mismatch, "theorem value is not integral");
    return v.get_num();
}

// A construction attaining theorem_value(which, n).
inline ConstructionSpec extremal_witness(Theorem which, long n)
{
    auto none = [&] {
        return Error(ErrorKind::NoWitnessKnown,
                     "no witness for the " + std::string(describe(which)) + " at n = " + std::to_string(n));
    };
    const int in = static_cast<int>(n);
    switch (which) {
    case Theorem::MinOrdinary:
        if (n % 2 == 0) {
            // special radius k = 1 needs m > 4
            if (n / 2 <= 4)
                throw none();
            return ConstructionSpec::double_polygon(ConstructionKind::AlignedDoublePolygon, in / 2, 1);
        }
        if (n < 9)
            throw none();
        return ConstructionSpec::double_polygon(ConstructionKind::InvertedDoublePolygon, (in + 1) / 2);
    case Theorem::MinOrdinaryGeneralised:
        if (n % 2 == 0) {
            if (n < 8)
                throw none();
            return ConstructionSpec::double_polygon(ConstructionKind::AlignedDoublePolygon, in / 2);
        }
        if (n < 11)
            throw none();
        return ConstructionSpec::double_polygon(ConstructionKind::PuncturedDoublePolygon, (in + 1) / 2);
    case Theorem::MaxFourPoint:
        if (n < 5)
            throw none();
        if (n % 4 != 0)
            return ConstructionSpec::ellipse(in);
        return ConstructionSpec::cubic_coset("z4z2", in, CosetVariant::HalfTimesZ2);
    }
    throw none();
}

} // namespace ordcirc
