#pragma once

#include "ordcirc/geometry/point.hpp"

namespace ordcirc {

inline RealExpr det3(const RealExpr& a, const RealExpr& b, const RealExpr& c,
                     const RealExpr& d, const RealExpr& e, const RealExpr& f,
                     const RealExpr& g, const RealExpr& h, const RealExpr& i)
{
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

inline RealExpr orientation_expr(const Point& a, const Point& b, const Point& c)
{
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Zero iff a, b, c, d lie on one generalised circle.
inline RealExpr incircle_expr(const Point& a, const Point& b, const Point& c, const Point& d)
{
    RealExpr ax = a.x - d.x, ay = a.y - d.y;
    RealExpr bx = b.x - d.x, by = b.y - d.y;
    RealExpr cx = c.x - d.x, cy = c.y - d.y;
    return det3(ax, ay, ax * ax + ay * ay,
                bx, by, bx * bx + by * by,
                cx, cy, cx * cx + cy * cy);
}

inline Sign decide(const RealExpr& e)
{
    try {
        return certified_sign(e).sign;
    } catch (const Error& err) {
        if (err.kind() == ErrorKind::PrecisionExhausted)
            throw Error(ErrorKind::PredicateUndecided, err.what());
        throw;
    }
}

inline bool same_point(const Point& a, const Point& b)
{
    return decide(a.x - b.x) == Sign::Zero && decide(a.y - b.y) == Sign::Zero;
}

inline bool collinear(const Point& a, const Point& b, const Point& c)
{
    return decide(orientation_expr(a, b, c)) == Sign::Zero;
}

inline int orientation(const Point& a, const Point& b, const Point& c)
{
    return static_cast<int>(decide(orientation_expr(a, b, c)));
}

inline bool concyclic(const Point& a, const Point& b, const Point& c, const Point& d)
{
    return decide(incircle_expr(a, b, c, d)) == Sign::Zero;
}

} // namespace ordcirc
