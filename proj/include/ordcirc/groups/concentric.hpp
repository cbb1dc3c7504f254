#pragma once

#include <array>

#include "ordcirc/groups/ellipse.hpp"

namespace ordcirc {

// sigma_1 = unit circle, sigma_2 = circle of radius r traversed clockwise.
struct ConcentricHost {
    RealExpr r{2};

    explicit ConcentricHost(RealExpr r_ = RealExpr(2)) : r(std::move(r_))
    {
        if (certified_sign(r - RealExpr(1)).sign != Sign::Positive)
            throw Error(ErrorKind::InvalidParameters, "outer radius must exceed 1");
    }

    Point embed(int eps, const Angle& t) const
    {
        if (eps == 0)
            return {RealExpr::cos(t), RealExpr::sin(t), "eps=0,t=" + t.str()};
        return {r * RealExpr::cos(t), -(r * RealExpr::sin(t)), "eps=1,t=" + t.str()};
    }
};

struct ConcentricGroupElement {
    int eps = 0;
    Angle t;
};

inline ConcentricGroupElement concentric_add(const ConcentricGroupElement& a, const ConcentricGroupElement& b)
{
    return {(a.eps + b.eps) % 2, a.t + b.t};
}

inline ConcentricGroupElement concentric_neg(const ConcentricGroupElement& a) { return {a.eps, -a.t}; }

inline bool operator==(const ConcentricGroupElement& a, const ConcentricGroupElement& b) { return a.eps == b.eps && a.t == b.t; }

// a, b on sigma_1 and c, d on sigma_2.
inline GroupCheck concentric_concyclic_check(const ConcentricHost& host, const std::array<ConcentricGroupElement, 4>& q)
{
    if (q[0].eps != 0 || q[1].eps != 0 || q[2].eps != 1 || q[3].eps != 1)
        throw Error(ErrorKind::InvalidParameters, "expected two points on each circle");
    ConcentricGroupElement sum = concentric_add(concentric_add(q[0], q[1]), concentric_add(q[2], q[3]));
    bool algebraic = sum == ConcentricGroupElement{0, Angle(0, 1)};
    std::array<Point, 4> p;
    for (int i = 0; i < 4; ++i)
        p[i] = host.embed(q[i].eps, q[i].t);
    bool repeated = q[0] == q[1] || q[2] == q[3];
    bool geometric;
    if (!repeated) {
        geometric = concyclic(p[0], p[1], p[2], p[3]);
    } else if (auto r = exact_rational_value(host.r)) {
        // sigma_1 in z = e^(2 pi i t), sigma_2 in w; both intersections are quadratics
        std::int64_t m = 1;
        for (const auto& e : q)
            m = std::lcm<std::int64_t>(m, e.t.den());
        const CyclotomicField& F = detail::field(static_cast<int>(detail::contact_order(m)));
        QPoly i = F.zeta_power(F.order() / 4);
        QPoly ih = qpoly::scale(i, Rational(1, 2)), irh = qpoly::scale(i, *r / 2);
        detail::ContactPoly c1, c2;
        c1[0] = {{}, F.constant(1), {}};
        c1[1] = {F.constant(Rational(1, 2)), {}, F.constant(Rational(1, 2))};
        c1[2] = {ih, {}, F.neg(ih)};
        c1[3] = {{}, F.constant(1), {}};
        c2[0] = {{}, F.constant(*r * *r), {}};
        c2[1] = {F.constant(*r / 2), {}, F.constant(*r / 2)};
        c2[2] = {F.neg(irh), {}, irh};
        c2[3] = {{}, F.constant(1), {}};
        std::vector<std::array<QPoly, 4>> rows;
        if (q[0] == q[1]) {
            detail::contact_rows(F, c1, q[0].t, 2, rows);
        } else {
            detail::contact_rows(F, c1, q[0].t, 1, rows);
            detail::contact_rows(F, c1, q[1].t, 1, rows);
        }
        if (q[2] == q[3]) {
            detail::contact_rows(F, c2, q[2].t, 2, rows);
        } else {
            detail::contact_rows(F, c2, q[2].t, 1, rows);
            detail::contact_rows(F, c2, q[3].t, 1, rows);
        }
        geometric = detail::rows_dependent(F, rows);
    } else {
        if (q[0] == q[1] && q[2] == q[3])
            throw Error(ErrorKind::InvalidParameters, "double tangency needs a rational outer radius");
        int rep = q[0] == q[1] ? 0 : 2;
        int o1 = rep == 0 ? 2 : 0;
        GeneralisedCircle g = circle_through(p[rep], p[o1], p[o1 + 1]);
        geometric = detail::tangent_at(g, p[rep], p[rep].x, p[rep].y);
    }
    if (algebraic != geometric)
        throw Error(ErrorKind::Mismatch, "concentric four-point criterion disagrees with the embedded predicate");
    return {algebraic, geometric, repeated};
}

inline bool concentric_concyclic(const ConcentricHost& host, const std::array<ConcentricGroupElement, 4>& q)
{
    return concentric_concyclic_check(host, q).algebraic;
}

} // namespace ordcirc
