#pragma once

#include <map>
#include <string>
#include <utility>

#include "ordcirc/curves/circular.hpp"
#include "ordcirc/geometry/inversion.hpp"

namespace ordcirc {

namespace detail {

// Affine polynomial in two variables.
using AffPoly = std::map<std::pair<int, int>, Rational>;

inline void aff_add(AffPoly& p, std::pair<int, int> m, const Rational& c)
{
    if (c == 0)
        return;
    auto& s = p[m];
    s += c;
    if (s == 0)
        p.erase(m);
}

inline AffPoly aff_mul(const AffPoly& a, const AffPoly& b)
{
    AffPoly r;
    for (const auto& [m1, c1] : a)
        for (const auto& [m2, c2] : b)
            aff_add(r, {m1.first + m2.first, m1.second + m2.second}, c1 * c2);
    return r;
}

inline AffPoly aff_pow(const AffPoly& a, int e)
{
    AffPoly r{{{0, 0}, Rational(1)}};
    for (int i = 0; i < e; ++i)
        r = aff_mul(r, a);
    return r;
}

// p(X + a, Y + b)
inline AffPoly aff_shift(const AffPoly& p, const Rational& a, const Rational& b)
{
    AffPoly xs{{{1, 0}, Rational(1)}}, ys{{{0, 1}, Rational(1)}};
    if (a != 0)
        xs[{0, 0}] = a;
    if (b != 0)
        ys[{0, 0}] = b;
    AffPoly r;
    for (const auto& [m, c] : p)
        for (const auto& [m2, c2] : aff_mul(aff_pow(xs, m.first), aff_pow(ys, m.second)))
            aff_add(r, m2, c * c2);
    return r;
}

inline int aff_degree(const AffPoly& p)
{
    int d = -1;
    for (const auto& [m, c] : p)
        d = std::max(d, m.first + m.second);
    return d;
}

// Exact division by X^2 + Y^2 when possible.
inline std::optional<AffPoly> aff_div_rho(AffPoly p)
{
    AffPoly q;
    int maxx = 0;
    for (const auto& [m, c] : p)
        maxx = std::max(maxx, m.first);
    for (int i = maxx; i >= 2; --i) {
        std::vector<std::pair<std::pair<int, int>, Rational>> row;
        for (const auto& [m, c] : p)
            if (m.first == i)
                row.push_back({m, c});
        for (const auto& [m, c] : row) {
            aff_add(q, {i - 2, m.second}, c);
            aff_add(p, {i, m.second}, -c);
            aff_add(p, {i - 2, m.second + 2}, -c);
        }
    }
    if (!p.empty())
        return std::nullopt;
    return q;
}

inline AffPoly dehomogenize(const CurvePoly& f)
{
    AffPoly r;
    for (const auto& [m, c] : f.terms())
        aff_add(r, {m[0], m[1]}, c);
    return r;
}

inline CurvePoly homogenize(const AffPoly& p)
{
    int d = std::max(aff_degree(p), 0);
    CurvePoly f(d);
    for (const auto& [m, c] : p)
        f.add_term({m.first, m.second, d - m.first - m.second}, c);
    return f;
}

} // namespace detail

// Image of the curve under I_{p,r}, with the introduced (x^2+y^2) factors removed.
inline CurvePoly invert_curve(const InversionSpec& spec, const CurvePoly& f)
{
    if (!spec.is_rational())
        throw Error(ErrorKind::InvalidParameters, "curve inversion needs a rational centre and radius");
    if (f.is_zero())
        throw Error(ErrorKind::InvalidParameters, "zero polynomial");
    const Rational a = spec.center.x.rational(), b = spec.center.y.rational();
    const Rational r2 = spec.radius_squared.rational();
    using detail::AffPoly;
    AffPoly h = detail::aff_shift(detail::dehomogenize(f), a, b);
    int d = detail::aff_degree(h);
    AffPoly rho{{{2, 0}, Rational(1)}, {{0, 2}, Rational(1)}};
    AffPoly n;
    for (int k = 0; k <= d; ++k) {
        AffPoly hk;
        for (const auto& [m, c] : h)
            if (m.first + m.second == k)
                hk[m] = c;
        if (hk.empty())
            continue;
        Rational s = 1;
        for (int i = 0; i < k; ++i)
            s *= r2;
        for (const auto& [m, c] : detail::aff_mul(hk, detail::aff_pow(rho, d - k)))
            detail::aff_add(n, m, c * s);
    }
    while (auto q = detail::aff_div_rho(n)) {
        if (q->empty())
            break;
        n = std::move(*q);
    }
    return detail::homogenize(detail::aff_shift(n, -a, -b)).canonical();
}

inline std::string curve_case_label(const CurvePoly& g)
{
    auto [ma, mb] = multiplicity_at_circular_points(g);
    int m = std::min(ma, mb);
    switch (g.degree()) {
    case 1: return "Line";
    case 2: return m >= 1 ? "Circle" : "NonCircularConic";
    case 3: return m >= 1 ? "CircularCubic" : "NonCircularCubic";
    case 4:
        if (m >= 2)
            return "BicircularQuartic";
        if (m == 1)
            return "CircularQuartic";
        break;
    case 5:
        if (m == 2)
            return "TwoCircularQuintic";
        break;
    case 6:
        if (m == 3)
            return "ThreeCircularSextic";
        break;
    default: break;
    }
    return "Other(" + std::to_string(g.degree()) + "," + std::to_string(m) + ")";
}

struct InversionCase {
    int circular_degree = 0;
    int centre_multiplicity = 0;
    std::string predicted;
    std::string measured;
    CurvePoly image;
};

inline std::string predicted_inversion_case(int k, int mu)
{
    static const char* table[3][4] = {
        {"Circle", "Line", "Line", "Line"},
        {"BicircularQuartic", "CircularCubic", "NonCircularConic", "NonCircularConic"},
        {"ThreeCircularSextic", "TwoCircularQuintic", "CircularQuartic", "NonCircularCubic"},
    };
    return table[k - 1][std::min(mu, 3)];
}

// Predicts the image class from circular degree and centre multiplicity, then checks it.
inline InversionCase verify_inversion_case_table(const CurvePoly& f, const InversionSpec& spec)
{
    if (!spec.is_rational())
        throw Error(ErrorKind::InvalidParameters, "case table needs a rational centre");
    InversionCase c;
    c.circular_degree = circular_degree(f);
    if (c.circular_degree > 3)
        throw Error(ErrorKind::InvalidParameters, "circular degree above 3");
    const Rational a = spec.center.x.rational(), b = spec.center.y.rational();
    c.centre_multiplicity = multiplicity_at<Rational>(f, a, b, Rational(1));
    c.predicted = predicted_inversion_case(c.circular_degree, c.centre_multiplicity);
    c.image = invert_curve(spec, f);
    c.measured = curve_case_label(c.image);
    if (c.measured != c.predicted)
        throw Error(ErrorKind::CaseMismatch, "predicted " + c.predicted + ", got " + c.measured);
    return c;
}

struct InversionBatteryCase {
    std::string name;
    CurvePoly curve;
    Rational cx, cy;
    std::string expected;
};

// Fixed (curve, centre) pairs covering every row of the case table.
inline std::vector<InversionBatteryCase> inversion_case_battery()
{
    auto c = [](std::string name, const char* f, Rational x, Rational y, std::string e) {
        return InversionBatteryCase{std::move(name), CurvePoly::parse(f), std::move(x), std::move(y), std::move(e)};
    };
    const char* ellipse = "x^2-2x*z+2y^2";
    const char* acnodal = "2x^3+2x*y^2-x^2*z-2y^2*z";
    const char* smooth3 = "y^2*z-x^3-x*z^2";
    return {
        c("circle, centre off", "x^2+y^2-z^2", 2, 0, "Circle"),
        c("circle, centre on", "x^2+y^2-z^2", 1, 0, "Line"),
        c("line, centre off", "x-z", 0, 0, "Circle"),
        c("line, centre on", "y", 1, 0, "Line"),
        c("ellipse, centre on", ellipse, 0, 0, "CircularCubic"),
        c("ellipse, centre off", ellipse, 3, 0, "BicircularQuartic"),
        c("acnodal cubic, centre at acnode", acnodal, 0, 0, "NonCircularConic"),
        c("lemniscate, centre at node", "x^4+2x^2*y^2+y^4-2x^2*z^2+2y^2*z^2", 0, 0, "NonCircularConic"),
        c("non-circular cubic, centre off", smooth3, 5, 0, "ThreeCircularSextic"),
        c("non-circular cubic, centre on", smooth3, 0, 0, "TwoCircularQuintic"),
        c("nodal cubic, centre at node", "y^2*z-x^3-x^2*z", 0, 0, "CircularQuartic"),
        c("three concurrent lines, centre at triple point", "x^3-2y^3", 0, 0, "NonCircularCubic"),
    };
}

} // namespace ordcirc
