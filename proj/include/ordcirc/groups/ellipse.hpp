#pragma once

#include <array>
#include <map>
#include <vector>

#include "ordcirc/exact/cyclotomic.hpp"
#include "ordcirc/geometry/circle.hpp"
#include "ordcirc/geometry/predicates.hpp"

namespace ordcirc {

// x^2 + (y/s)^2 = 1, identity (1, 0), group law adds eccentric angles.
struct EllipseHost {
    Rational s{2};

    explicit EllipseHost(Rational s_ = 2) : s(std::move(s_))
    {
        if (s == 0 || s == 1 || s == -1)
            throw Error(ErrorKind::InvalidParameters, "ellipse semi-axis must differ from 0 and 1");
    }

    Point embed(const Angle& theta) const
    {
        return {RealExpr::cos(theta), RealExpr(s) * RealExpr::sin(theta), "theta=" + theta.str()};
    }

    RealExpr equation(const Point& p) const { return p.x * p.x + p.y * p.y / RealExpr(s * s) - RealExpr(1); }
};

struct EllipseGroupElement {
    Angle theta;
};

inline EllipseGroupElement ellipse_add(const EllipseGroupElement& a, const EllipseGroupElement& b) { return {a.theta + b.theta}; }
inline EllipseGroupElement ellipse_neg(const EllipseGroupElement& a) { return {-a.theta}; }

namespace detail {

// Unknowns (t, l1, l2, l0); poly[u][k] is the z^k coefficient contributed by unknown u.
using ContactPoly = std::array<std::vector<QPoly>, 4>;

// Rows Q^(j)(z_p) = 0 for j < multiplicity.
inline void contact_rows(const CyclotomicField& F, const ContactPoly& q, const Angle& theta, int mult,
                         std::vector<std::array<QPoly, 4>>& rows)
{
    long k0 = static_cast<long>(theta.num() * (F.order() / theta.den()));
    for (int j = 0; j < mult; ++j) {
        std::array<QPoly, 4> row;
        for (int u = 0; u < 4; ++u)
            for (std::size_t k = static_cast<std::size_t>(j); k < q[u].size(); ++k) {
                if (q[u][k].empty())
                    continue;
                Rational fall = 1;
                for (int i = 0; i < j; ++i)
                    fall *= static_cast<long>(k) - i;
                QPoly term = F.mul(q[u][k], F.zeta_power(k0 * static_cast<long>(k - j)));
                row[u] = F.add(row[u], qpoly::scale(term, fall));
            }
        rows.push_back(row);
    }
}

inline bool rows_dependent(const CyclotomicField& F, std::vector<std::array<QPoly, 4>> m)
{
    std::size_t rank = 0;
    for (int c = 0; c < 4 && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c].empty())
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[rank]);
        QPoly iv = *F.inv(m[rank][c]);
        for (std::size_t r = rank + 1; r < m.size(); ++r) {
            if (m[r][c].empty())
                continue;
            QPoly f = F.mul(m[r][c], iv);
            for (int k = c; k < 4; ++k)
                m[r][k] = F.sub(m[r][k], F.mul(f, m[rank][k]));
        }
        ++rank;
    }
    return rank < 4;
}

// Circle and conic with gradient (gx, gy) at p touch there.
inline bool tangent_at(const GeneralisedCircle& g, const Point& p, const RealExpr& gx, const RealExpr& gy)
{
    RealExpr cx = RealExpr(2) * g.t * p.x + g.l1;
    RealExpr cy = RealExpr(2) * g.t * p.y + g.l2;
    return decide(g.evaluate(p)) == Sign::Zero && decide(cx * gy - cy * gx) == Sign::Zero;
}

inline std::int64_t contact_order(std::int64_t m) { return std::lcm<std::int64_t>(m, 4); }

} // namespace detail

struct GroupCheck {
    bool algebraic;
    bool geometric;
    bool tangency; // repeated point present
};

inline GroupCheck ellipse_concyclic_check(const EllipseHost& host, const std::array<EllipseGroupElement, 4>& q)
{
    bool algebraic = (q[0].theta + q[1].theta + q[2].theta + q[3].theta).is_zero();
    std::map<Angle, int> mult;
    for (const auto& e : q)
        ++mult[e.theta];
    bool geometric;
    if (mult.size() == 4) {
        std::array<Point, 4> p;
        for (int i = 0; i < 4; ++i)
            p[i] = host.embed(q[i].theta);
        geometric = concyclic(p[0], p[1], p[2], p[3]);
    } else {
        // intersection with the circle as a quartic in z = e^(2 pi i theta)
        std::int64_t m = 1;
        for (const auto& [a, k] : mult)
            m = std::lcm<std::int64_t>(m, a.den());
        const CyclotomicField& F = detail::field(static_cast<int>(detail::contact_order(m)));
        QPoly i = F.zeta_power(F.order() / 4);
        Rational s2 = host.s * host.s;
        detail::ContactPoly cq;
        cq[0] = {F.constant((1 - s2) / 4), {}, F.constant((1 + s2) / 2), {}, F.constant((1 - s2) / 4)};
        cq[1] = {{}, F.constant(Rational(1, 2)), {}, F.constant(Rational(1, 2)), {}};
        QPoly is2 = qpoly::scale(i, host.s / 2);
        cq[2] = {{}, is2, {}, F.neg(is2), {}};
        cq[3] = {{}, {}, F.constant(1), {}, {}};
        std::vector<std::array<QPoly, 4>> rows;
        for (const auto& [a, k] : mult)
            detail::contact_rows(F, cq, a, k, rows);
        geometric = detail::rows_dependent(F, rows);
    }
    if (algebraic != geometric)
        throw Error(ErrorKind::Mismatch, "ellipse four-point criterion disagrees with the embedded predicate");
    return {algebraic, geometric, mult.size() < 4};
}

inline bool ellipse_concyclic(const EllipseHost& host, const std::array<EllipseGroupElement, 4>& q)
{
    return ellipse_concyclic_check(host, q).algebraic;
}

} // namespace ordcirc
