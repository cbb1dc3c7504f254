#pragma once

#include <optional>
#include <vector>

#include "ordcirc/curves/invert.hpp"
#include "ordcirc/groups/cubic.hpp"

namespace ordcirc {

// (2x - z)(x^2 + y^2) - y^2 z: acnode at the origin.
inline CurvePoly acnodal_host_poly() { return CurvePoly::parse("2x^3+2x*y^2-x^2*z-2y^2*z"); }

// 4x^2 + y^2 = 4z^2 inverted in its point (3/5, 8/5): acnodal, omega differs from o.
inline CurvePoly inverted_ellipse_host_poly()
{
    InversionSpec spec(Point(RealExpr(Rational(3, 5)), RealExpr(Rational(8, 5))), RealExpr(1));
    return invert_curve(spec, CurvePoly::parse("4x^2+y^2-4z^2"));
}

namespace detail {

// y^2 = x (x + a)(x + b) over Q(i); nullopt is the point at infinity.
struct Weierstrass {
    Rational a, b;
    using Pt = std::optional<std::array<Gaussian, 2>>;

    Pt add(const Pt& p, const Pt& q) const
    {
        if (!p)
            return q;
        if (!q)
            return p;
        const auto& [x1, y1] = *p;
        const auto& [x2, y2] = *q;
        Gaussian l;
        if (x1 == x2) {
            if ((y1 + y2).is_zero())
                return std::nullopt;
            l = (Gaussian(3) * x1 * x1 + Gaussian(2 * (a + b)) * x1 + Gaussian(a * b)) / (Gaussian(2) * y1);
        } else {
            l = (y2 - y1) / (x2 - x1);
        }
        Gaussian x3 = l * l - Gaussian(a + b) - x1 - x2;
        Gaussian y3 = -(y1 + l * (x3 - x1));
        return std::array<Gaussian, 2>{x3, y3};
    }

    Pt neg(const Pt& p) const
    {
        if (!p)
            return p;
        return std::array<Gaussian, 2>{(*p)[0], -(*p)[1]};
    }

    Pt mul(Pt p, long k) const
    {
        if (k < 0)
            return mul(neg(p), -k);
        Pt r;
        for (long i = 0; i < k; ++i)
            r = add(r, p);
        return r;
    }
};

} // namespace detail

struct ExactHost {
    CurvePoly poly;
    std::vector<Proj<Rational>> coset; // exact Z4 x Z2 coset points
};

// Smooth two-component circular cubic with a rational Z4 x Z2 coset H + x, 4x = omega:
// y^2 = x(x+4)(x+81), x0 = (3, 42), twist point (-256, 3360 i), sent by a real projectivity to circular form.
inline ExactHost z4z2_host()
{
    detail::Weierstrass E{Rational(4), Rational(81)};
    using Pt = detail::Weierstrass::Pt;
    Pt X = std::array<Gaussian, 2>{Gaussian(3), Gaussian(42)};
    Pt tau = std::array<Gaussian, 2>{Gaussian(-256), Gaussian(0, 3360)};
    Pt alpha = E.add(E.neg(E.mul(X, 2)), tau);
    const auto& al = *alpha;
    // columns B = Im(alpha), A = Re(alpha), w
    std::array<std::array<Rational, 3>, 3> N{};
    std::array<Rational, 3> A{al[0].re, al[1].re, Rational(1)}, B{al[0].im, al[1].im, Rational(0)};
    std::array<Rational, 3> w{0, 0, 1};
    auto det = [&](const std::array<Rational, 3>& c2) -> Rational {
        return B[0] * (A[1] * c2[2] - A[2] * c2[1]) - A[0] * (B[1] * c2[2] - B[2] * c2[1]) + c2[0] * (B[1] * A[2] - B[2] * A[1]);
    };
    if (det(w) == 0)
        w = {1, 0, 0};
    for (int r = 0; r < 3; ++r) {
        N[r][0] = B[r];
        N[r][1] = A[r];
        N[r][2] = w[r];
    }
    // old = N new
    std::array<CurvePoly, 3> lin;
    for (int r = 0; r < 3; ++r) {
        lin[r] = CurvePoly(1);
        lin[r].add_term({1, 0, 0}, N[r][0]);
        lin[r].add_term({0, 1, 0}, N[r][1]);
        lin[r].add_term({0, 0, 1}, N[r][2]);
    }
    const CurvePoly &x = lin[0], &y = lin[1], &z = lin[2];
    CurvePoly f = y * y * z - x * (x + z * E.a) * (x + z * E.b);
    ExactHost out{f.canonical(), {}};
    // new = N^{-1} old via Cramer
    Rational d = det(w);
    auto solve = [&](const std::array<Rational, 3>& v) {
        std::array<std::array<Rational, 3>, 3> cols{B, A, w};
        Proj<Rational> r;
        for (int c = 0; c < 3; ++c) {
            auto m = cols;
            m[static_cast<std::size_t>(c)] = v;
            r[static_cast<std::size_t>(c)] = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                                             m[1][0] * (m[0][1] * m[2][2] - m[0][2] * m[2][1]) +
                                             m[2][0] * (m[0][1] * m[1][2] - m[0][2] * m[1][1]);
            r[static_cast<std::size_t>(c)] /= d;
        }
        return detail::proj_normalize(r);
    };
    Pt P4 = std::array<Gaussian, 2>{Gaussian(18), Gaussian(198)};
    Pt T = std::array<Gaussian, 2>{Gaussian(-4), Gaussian(0)};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) {
            Pt s = E.add(E.add(E.mul(P4, i), E.mul(T, j)), X);
            out.coset.push_back(solve({(*s)[0].re, (*s)[1].re, Rational(1)}));
        }
    return out;
}

} // namespace ordcirc
