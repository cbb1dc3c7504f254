#pragma once

#include <array>
#include <optional>
#include <string>

#include "ordcirc/geometry/predicates.hpp"

namespace ordcirc {

// Zero set of t(x^2+y^2) + l1 x + l2 y + l0.
struct GeneralisedCircle {
    RealExpr t, l1, l2, l0;

    bool is_rational() const { return t.is_rational() && l1.is_rational() && l2.is_rational() && l0.is_rational(); }
    bool is_line() const { return decide(t) == Sign::Zero; }

    RealExpr evaluate(const Point& q) const { return t * (q.x * q.x + q.y * q.y) + l1 * q.x + l2 * q.y + l0; }
    bool contains(const Point& q) const { return decide(evaluate(q)) == Sign::Zero; }

    std::array<Rational, 4> rational_coefficients() const
    {
        if (!is_rational())
            throw Error(ErrorKind::InvalidParameters, "circle has irrational coefficients");
        return {t.rational(), l1.rational(), l2.rational(), l0.rational()};
    }

    bool operator==(const GeneralisedCircle& o) const
    {
        if (is_rational() && o.is_rational())
            return rational_coefficients() == o.rational_coefficients();
        // proportional coefficient vectors
        const RealExpr a[4] = {t, l1, l2, l0};
        const RealExpr b[4] = {o.t, o.l1, o.l2, o.l0};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (decide(a[i] * b[j] - a[j] * b[i]) != Sign::Zero)
                    return false;
        return true;
    }
};

// First nonzero of (t,l1,l2,l0) positive; rational vectors become coprime integers.
inline GeneralisedCircle normalized(const GeneralisedCircle& g)
{
    if (g.is_rational()) {
        auto c = g.rational_coefficients();
        Integer l = 1, gg = 0;
        for (const auto& q : c)
            l = lcm(l, q.get_den());
        std::array<Integer, 4> z;
        for (int i = 0; i < 4; ++i) {
            Rational v = c[i] * l;
            z[i] = v.get_num();
            gg = gcd(gg, z[i]);
        }
        if (gg == 0)
            throw Error(ErrorKind::InvalidParameters, "zero coefficient vector");
        int s = 0;
        for (const auto& v : z)
            if (v != 0) {
                s = sgn(v);
                break;
            }
        for (auto& v : z)
            v = v / gg * s;
        return {RealExpr(Rational(z[0])), RealExpr(Rational(z[1])), RealExpr(Rational(z[2])), RealExpr(Rational(z[3]))};
    }
    const RealExpr c[4] = {g.t, g.l1, g.l2, g.l0};
    for (int i = 0; i < 4; ++i) {
        if (decide(c[i]) == Sign::Zero)
            continue;
        RealExpr out[4];
        for (int j = 0; j < 4; ++j) {
            if (j < i)
                out[j] = RealExpr(0);
            else if (j == i)
                out[j] = RealExpr(1);
            else {
                out[j] = c[j] / c[i];
                if (auto q = exact_rational_value(out[j]))
                    out[j] = RealExpr(*q);
            }
        }
        GeneralisedCircle r{out[0], out[1], out[2], out[3]};
        return r.is_rational() ? normalized(r) : r;
    }
    throw Error(ErrorKind::InvalidParameters, "zero coefficient vector");
}

inline void check_generalised_circle(const GeneralisedCircle& g)
{
    if (decide(g.t) == Sign::Zero) {
        if (decide(g.l1) == Sign::Zero && decide(g.l2) == Sign::Zero)
            throw Error(ErrorKind::InvalidParameters, "not a generalised circle");
        return;
    }
    if (decide(g.l1 * g.l1 + g.l2 * g.l2 - RealExpr(4) * g.t * g.l0) != Sign::Positive)
        throw Error(ErrorKind::InvalidParameters, "circle has no real points or radius zero");
}

inline GeneralisedCircle circle_through(const Point& a, const Point& b, const Point& c)
{
    if (same_point(a, b) || same_point(a, c) || same_point(b, c))
        throw Error(ErrorKind::DegenerateTriple, "circle through coincident points");
    RealExpr sa = a.x * a.x + a.y * a.y, sb = b.x * b.x + b.y * b.y, sc = c.x * c.x + c.y * c.y;
    RealExpr one(1);
    GeneralisedCircle g{
        det3(a.x, a.y, one, b.x, b.y, one, c.x, c.y, one),
        -det3(sa, a.y, one, sb, b.y, one, sc, c.y, one),
        det3(sa, a.x, one, sb, b.x, one, sc, c.x, one),
        -det3(sa, a.x, a.y, sb, b.x, b.y, sc, c.x, c.y),
    };
    return normalized(g);
}

inline json circle_to_json(const GeneralisedCircle& g)
{
    if (g.is_rational()) {
        auto c = g.rational_coefficients();
        return json{{"t", format_rational(c[0])}, {"l1", format_rational(c[1])},
                    {"l2", format_rational(c[2])}, {"l0", format_rational(c[3])}};
    }
    return json{{"t", expr_to_json(g.t)}, {"l1", expr_to_json(g.l1)}, {"l2", expr_to_json(g.l2)}, {"l0", expr_to_json(g.l0)}};
}

inline GeneralisedCircle circle_from_json(const json& j)
{
    for (const char* k : {"t", "l1", "l2", "l0"})
        if (!j.contains(k))
            throw Error(ErrorKind::ParseError, std::string("circle is missing '") + k + "'");
    GeneralisedCircle g{expr_from_json(j["t"]), expr_from_json(j["l1"]), expr_from_json(j["l2"]), expr_from_json(j["l0"])};
    check_generalised_circle(g);
    return normalized(g);
}

} // namespace ordcirc
