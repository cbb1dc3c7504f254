#pragma once

#include "ordcirc/geometry/circle.hpp"

namespace ordcirc {

struct InversionSpec {
    Point center;
    RealExpr radius_squared = RealExpr(1);

    InversionSpec() = default;
    InversionSpec(Point c, RealExpr r2) : center(std::move(c)), radius_squared(std::move(r2))
    {
        if (decide(radius_squared) != Sign::Positive)
            throw Error(ErrorKind::InvalidParameters, "inversion radius must be positive");
    }

    bool is_rational() const { return center.is_rational() && radius_squared.is_rational(); }
};

// p + r^2 (q - p) / |q - p|^2
inline Point invert_point(const InversionSpec& s, const Point& q)
{
    RealExpr dx = q.x - s.center.x, dy = q.y - s.center.y;
    RealExpr rho = dx * dx + dy * dy;
    if (decide(rho) == Sign::Zero)
        throw Error(ErrorKind::CenterInversion, "point coincides with the inversion centre");
    RealExpr k = s.radius_squared / rho;
    return Point(s.center.x + k * dx, s.center.y + k * dy, q.tag);
}

inline GeneralisedCircle invert_generalised_circle(const InversionSpec& s, const GeneralisedCircle& g)
{
    const RealExpr& a = s.center.x;
    const RealExpr& b = s.center.y;
    const RealExpr& r2 = s.radius_squared;
    // coefficients in coordinates centred at p
    RealExpr L1 = g.l1 + RealExpr(2) * g.t * a;
    RealExpr L2 = g.l2 + RealExpr(2) * g.t * b;
    RealExpr L0 = g.evaluate(s.center);
    RealExpr T = L0, M1 = r2 * L1, M2 = r2 * L2, M0 = g.t * r2 * r2;
    GeneralisedCircle out{
        T,
        M1 - RealExpr(2) * a * T,
        M2 - RealExpr(2) * b * T,
        T * (a * a + b * b) - M1 * a - M2 * b + M0,
    };
    return normalized(out);
}

} // namespace ordcirc
