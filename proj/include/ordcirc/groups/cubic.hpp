#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ordcirc/curves/singular.hpp"
#include "ordcirc/geometry/circle.hpp"

namespace ordcirc {

template <class K>
using Proj = std::array<K, 3>;

namespace detail {

inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const Gaussian& g) { return g.is_zero(); }

template <class K>
bool proj_equal(const Proj<K>& a, const Proj<K>& b)
{
    return is_zero(a[1] * b[2] - a[2] * b[1]) && is_zero(a[2] * b[0] - a[0] * b[2]) && is_zero(a[0] * b[1] - a[1] * b[0]);
}

template <class K>
bool proj_is_null(const Proj<K>& a)
{
    return is_zero(a[0]) && is_zero(a[1]) && is_zero(a[2]);
}

// Scale so the last nonzero coordinate is 1.
template <class K>
Proj<K> proj_normalize(Proj<K> a)
{
    for (int i = 2; i >= 0; --i)
        if (!is_zero(a[i])) {
            K s = a[i];
            for (auto& c : a)
                c = c / s;
            return a;
        }
    return a;
}

} // namespace detail

// Circular cubic (u x + v y)(x^2 + y^2) + q z, irreducible over Q.
class CubicHost {
public:
    explicit CubicHost(CurvePoly f) : f_(std::move(f))
    {
        if (f_.degree() != 3)
            throw Error(ErrorKind::InvalidParameters, "host must be a cubic");
        Rational a = f_.coeff(3, 0, 0), b = f_.coeff(2, 1, 0), c = f_.coeff(1, 2, 0), d = f_.coeff(0, 3, 0);
        if (a != c || b != d || (a == 0 && b == 0))
            throw Error(ErrorKind::InvalidParameters, "host is not a circular cubic");
        if (rational_linear_factor(f_))
            throw Error(ErrorKind::LineInCurve, "host has a rational line component");
        for (int v = 0; v < 3; ++v)
            grad_[v] = f_.derivative(v);
        o_ = {b, -a, Rational(0)};
        singular_ = singular_points_cubic(f_);
        omega_ = star(o_, o_);
    }

    const CurvePoly& poly() const { return f_; }
    const Proj<Rational>& identity() const { return o_; }
    const Proj<Rational>& omega() const { return omega_; }
    const std::vector<SingularPoint>& singular_points() const { return singular_; }
    bool is_acnodal() const { return !singular_.empty() && singular_[0].type == "acnode"; }

    static Proj<Gaussian> alpha() { return {Gaussian(0, 1), Gaussian(1), Gaussian(0)}; }
    static Proj<Gaussian> beta() { return {Gaussian(0, -1), Gaussian(1), Gaussian(0)}; }

    template <class K>
    K evaluate(const Proj<K>& p) const
    {
        return f_.evaluate<K>(p[0], p[1], p[2]);
    }

    template <class K>
    bool contains(const Proj<K>& p) const
    {
        return detail::is_zero(evaluate(p));
    }

    template <class K>
    Proj<K> gradient(const Proj<K>& p) const
    {
        return {grad_[0].evaluate<K>(p[0], p[1], p[2]), grad_[1].evaluate<K>(p[0], p[1], p[2]),
                grad_[2].evaluate<K>(p[0], p[1], p[2])};
    }

    template <class K>
    bool is_singular(const Proj<K>& p) const
    {
        auto g = gradient(p);
        return detail::proj_is_null(g);
    }

    // Third intersection of the line ab (tangent if a = b).
    template <class K>
    Proj<K> star(const Proj<K>& a, const Proj<K>& b) const
    {
        if (!contains(a) || !contains(b))
            throw Error(ErrorKind::InvalidParameters, "point not on host");
        if (is_singular(a) || is_singular(b))
            throw Error(ErrorKind::SingularHit, "singular point is not in the group");
        Proj<K> r;
        if (!detail::proj_equal(a, b)) {
            // f(l a + m b) = l m (c2 l + c1 m)
            K gp = evaluate<K>({a[0] + b[0], a[1] + b[1], a[2] + b[2]});
            K gm = evaluate<K>({a[0] - b[0], a[1] - b[1], a[2] - b[2]});
            K c1 = (gp + gm) / K(2), c2 = (gp - gm) / K(2);
            if (detail::is_zero(c1) && detail::is_zero(c2))
                throw Error(ErrorKind::LineInCurve, "line through the points lies on the host");
            for (int i = 0; i < 3; ++i)
                r[i] = c1 * a[i] - c2 * b[i];
        } else {
            Proj<K> g = gradient(a);
            // second point on the tangent line
            Proj<K> d;
            for (int e = 0; e < 3; ++e) {
                Proj<K> basis{K(0), K(0), K(0)};
                basis[e] = K(1);
                d = {g[1] * basis[2] - g[2] * basis[1], g[2] * basis[0] - g[0] * basis[2], g[0] * basis[1] - g[1] * basis[0]};
                if (!detail::proj_is_null(d) && !detail::proj_equal(d, a))
                    break;
            }
            // f(l a + m d) = m^2 (c1 l + c0 m)
            K c0 = evaluate(d);
            K gp = evaluate<K>({a[0] + d[0], a[1] + d[1], a[2] + d[2]});
            K c1 = gp - c0;
            if (detail::is_zero(c1) && detail::is_zero(c0))
                throw Error(ErrorKind::LineInCurve, "tangent line lies on the host");
            for (int i = 0; i < 3; ++i)
                r[i] = c0 * a[i] - c1 * d[i];
        }
        if (is_singular(r))
            throw Error(ErrorKind::SingularHit, "third intersection is the singular point");
        return detail::proj_normalize(r);
    }

    template <class K>
    Proj<K> lift(const Proj<Rational>& p) const
    {
        return {K(p[0]), K(p[1]), K(p[2])};
    }

    template <class K>
    Proj<K> add(const Proj<K>& a, const Proj<K>& b) const
    {
        return star(star(a, b), lift<K>(o_));
    }

    template <class K>
    Proj<K> neg(const Proj<K>& a) const
    {
        return star(a, lift<K>(omega_));
    }

    template <class K>
    Proj<K> multiple(Proj<K> a, long k) const
    {
        if (k < 0)
            return multiple(neg(a), -k);
        Proj<K> r = lift<K>(o_);
        while (k) {
            if (k & 1)
                r = add(r, a);
            a = add(a, a);
            k >>= 1;
        }
        return r;
    }

    template <class K>
    bool equal(const Proj<K>& a, const Proj<K>& b) const
    {
        return detail::proj_equal(a, b);
    }

private:
    CurvePoly f_;
    std::array<CurvePoly, 3> grad_;
    Proj<Rational> o_, omega_;
    std::vector<SingularPoint> singular_;
};

inline Point affine_point(const Proj<Rational>& p)
{
    if (p[2] == 0)
        throw Error(ErrorKind::InvalidParameters, "point at infinity has no affine embedding");
    return {RealExpr(p[0] / p[2]), RealExpr(p[1] / p[2])};
}

// Returns a+b+c+d = omega and asserts it matches the embedded predicate.
inline bool cubic_concyclicity_check(const CubicHost& h, const std::array<Proj<Rational>, 4>& q)
{
    auto sum = h.add(h.add(q[0], q[1]), h.add(q[2], q[3]));
    bool algebraic = h.equal(sum, h.omega());
    std::array<Point, 4> p;
    for (int i = 0; i < 4; ++i)
        p[i] = affine_point(q[i]);
    std::vector<std::pair<int, int>> repeats;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (h.equal(q[i], q[j]))
                repeats.push_back({i, j});
    bool geometric;
    if (repeats.empty()) {
        geometric = concyclic(p[0], p[1], p[2], p[3]);
    } else if (repeats.size() == 1) {
        // generalised circle through the three distinct points, tangent to the host at the repeated one
        auto [i, j] = repeats[0];
        std::vector<int> rest;
        for (int k = 0; k < 4; ++k)
            if (k != i && k != j)
                rest.push_back(k);
        const Point &a = p[i], &b = p[rest[0]], &c = p[rest[1]];
        if (collinear(a, b, c)) {
            geometric = false; // the fourth intersection of a line is o
        } else {
            GeneralisedCircle g = circle_through(a, b, c);
            Proj<Rational> grad = h.gradient(detail::proj_normalize<Rational>(q[i]));
            RealExpr cx = RealExpr(2) * g.t * a.x + g.l1, cy = RealExpr(2) * g.t * a.y + g.l2;
            geometric = decide(cx * RealExpr(grad[1]) - cy * RealExpr(grad[0])) == Sign::Zero;
        }
    } else {
        throw Error(ErrorKind::InvalidParameters, "at most one repeated pair is supported");
    }
    if (algebraic != geometric)
        throw Error(ErrorKind::Mismatch, "cubic four-point criterion disagrees with the embedded predicate");
    return algebraic;
}

inline bool cubic_collinearity_check(const CubicHost& h, const std::array<Proj<Rational>, 3>& q)
{
    bool algebraic = h.equal(h.add(h.add(q[0], q[1]), q[2]), h.omega());
    bool geometric = collinear(affine_point(q[0]), affine_point(q[1]), affine_point(q[2]));
    if (algebraic != geometric)
        throw Error(ErrorKind::Mismatch, "cubic collinearity criterion disagrees with the embedded predicate");
    return algebraic;
}

// Second intersection of the line of slope m through a rational singular point.
inline Proj<Rational> point_through_singularity(const CubicHost& h, const Rational& m)
{
    if (h.singular_points().empty())
        throw Error(ErrorKind::HostUnsupported, "host has no rational singular point");
    const auto& s = h.singular_points()[0].point;
    Proj<Rational> d{Rational(1), m, Rational(0)};
    // f(s + l d) = l^2 (c2 + c3 l) since s is a double point
    Rational v1 = h.evaluate<Rational>({s[0] + d[0], s[1] + d[1], s[2] + d[2]});
    Rational vm = h.evaluate<Rational>({s[0] - d[0], s[1] - d[1], s[2] - d[2]});
    Rational c2 = (v1 + vm) / 2, c3 = (v1 - vm) / 2;
    if (c3 == 0)
        throw Error(ErrorKind::SingularHit, "line meets the host only at the singular point");
    return detail::proj_normalize<Rational>({s[0] * c3 - c2 * d[0], s[1] * c3 - c2 * d[1], s[2] * c3 - c2 * d[2]});
}

// Rational points by repeated chords from seeds; stops after `count` affine points.
inline std::vector<Proj<Rational>> chord_points(const CubicHost& h, std::vector<Proj<Rational>> seeds, std::size_t count)
{
    std::vector<Proj<Rational>> out;
    auto push = [&](const Proj<Rational>& p) {
        if (p[2] == 0)
            return;
        for (const auto& q : out)
            if (h.equal(p, q))
                return;
        out.push_back(p);
    };
    for (const auto& s : seeds)
        push(s);
    for (std::size_t i = 0; i < out.size() && out.size() < count; ++i)
        for (std::size_t j = 0; j <= i && out.size() < count; ++j) {
            try {
                push(h.star(out[i], out[j]));
                push(h.add(out[i], out[j]));
            } catch (const Error&) {
            }
        }
    if (out.size() > count)
        out.resize(count);
    return out;
}

} // namespace ordcirc
