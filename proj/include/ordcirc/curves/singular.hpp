#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ordcirc/curves/circular.hpp"
#include "ordcirc/curves/univariate.hpp"

namespace ordcirc {

using ProjPoint = std::array<Rational, 3>;

namespace detail {

// f restricted to the line through origin-free parametrisation: coefficient list in t of f(sub(t)).
inline QPoly restrict_binary(const CurvePoly& f, int zero_var, int t_var)
{
    // set zero_var = 0 and the remaining variable to 1; t_var becomes t
    QPoly r;
    for (const auto& [m, c] : f.terms()) {
        if (m[zero_var] != 0)
            continue;
        std::size_t e = static_cast<std::size_t>(m[t_var]);
        if (r.size() <= e)
            r.resize(e + 1);
        r[e] += c;
    }
    qpoly::trim(r);
    return r;
}

inline bool form_is_zero_on(const CurvePoly& f, int v) { return restrict_binary(f, v, (v + 1) % 3).empty() && restrict_binary(f, v, (v + 2) % 3).empty(); }

// Projective points of the binary form f(.., 0 at zero_var, ..) as (a:b) over Q.
inline std::vector<std::array<Rational, 2>> binary_rational_roots(const std::vector<QPoly>& forms, int degree)
{
    // form as polynomial in t = u/w; root at w = 0 iff top coefficient vanishes
    std::vector<std::array<Rational, 2>> out;
    bool infinite = true;
    for (const auto& p : forms)
        if (static_cast<int>(p.size()) - 1 == degree)
            infinite = false;
    QPoly g;
    for (const auto& p : forms)
        g = g.empty() ? p : (p.empty() ? g : qpoly::gcd(g, p));
    if (infinite)
        out.push_back({Rational(1), Rational(0)});
    if (!g.empty())
        for (const auto& r : rational_roots(g))
            out.push_back({r, Rational(1)});
    return out;
}

inline bool vanishes(const CurvePoly& f, const ProjPoint& p) { return f.evaluate<Rational>(p[0], p[1], p[2]) == 0; }

inline bool divides_linear(const CurvePoly& f, const std::array<Rational, 3>& l)
{
    // substitute the variable with nonzero coefficient
    int v = l[0] != 0 ? 0 : (l[1] != 0 ? 1 : 2);
    int a = (v + 1) % 3, b = (v + 2) % 3;
    // x_v = -(l_a x_a + l_b x_b)/l_v ; check f vanishes identically via evaluation at deg+1 points
    for (int s = 0; s <= f.degree() + 1; ++s) {
        std::array<Rational, 3> p;
        p[a] = 1;
        p[b] = s;
        p[v] = -(l[a] * p[a] + l[b] * p[b]) / l[v];
        if (f.evaluate<Rational>(p[0], p[1], p[2]) != 0)
            return false;
    }
    return true;
}

} // namespace detail

// A rational linear factor, if any (cubic forms only need degree-1 factors).
inline std::optional<std::array<Rational, 3>> rational_linear_factor(const CurvePoly& f)
{
    for (int v = 0; v < 3; ++v)
        if (detail::form_is_zero_on(f, v)) {
            std::array<Rational, 3> l{0, 0, 0};
            l[v] = 1;
            return l;
        }
    // l restricted to z = 0 divides f(x, y, 0): candidate (a:b); then x = 0 gives (b:c)
    auto binary_factors = [&](int zero_var, int t_var) {
        std::vector<std::array<Rational, 2>> out;
        QPoly p = detail::restrict_binary(f, zero_var, t_var);
        for (const auto& r : detail::binary_rational_roots({p}, f.degree()))
            out.push_back(r);
        return out;
    };
    // roots (t_var : other) of the restriction correspond to factors other*t_var - t*other
    auto xy = binary_factors(2, 0); // points [x:1:0] with x = r  -> factor (1, -r, *) ; [1:0:0] -> y factor
    auto xz = binary_factors(1, 0); // points [x:0:1]
    auto yz = binary_factors(0, 1); // points [0:y:1]
    std::vector<std::array<Rational, 3>> cands;
    // line l = a x + b y + c z with zero (x0:y0:0) on z = 0, (x1:0:z1) on y = 0, (0:y2:z2) on x = 0
    for (const auto& p : xy) {
        // a p0 + b p1 = 0
        Rational a, b;
        if (p[1] == 0) {
            a = 0;
            b = 1;
        } else {
            a = 1;
            b = -p[0] / p[1];
        }
        for (const auto& q : xz) {
            // a q0 + c q1 = 0 with q = (x:z)
            if (q[1] == 0) {
                if (a * q[0] == 0)
                    cands.push_back({a, b, 0});
                continue;
            }
            cands.push_back({a, b, -a * q[0] / q[1]});
        }
        for (const auto& q : yz) {
            if (q[1] == 0) {
                if (b * q[0] == 0)
                    cands.push_back({a, b, 0});
                continue;
            }
            cands.push_back({a, b, -b * q[0] / q[1]});
        }
    }
    // lines through [0:0:1] restricted to z = 0 are covered above; lines z = c... (a = b = 0) is z itself
    for (auto& l : cands)
        if ((l[0] != 0 || l[1] != 0 || l[2] != 0) && detail::divides_linear(f, l))
            return l;
    return std::nullopt;
}

struct SingularPoint {
    ProjPoint point;
    std::string type; // acnode, crunode, cusp, triple
};

inline std::string classify_double_point(const CurvePoly& f, const ProjPoint& p)
{
    int chart = p[2] != 0 ? 2 : (p[1] != 0 ? 1 : 0);
    int u = (chart + 1) % 3, v = (chart + 2) % 3;
    auto at = [&](const CurvePoly& g) { return g.evaluate<Rational>(p[0], p[1], p[2]); };
    Rational fuu = at(f.derivative(u).derivative(u));
    Rational fuv = at(f.derivative(u).derivative(v));
    Rational fvv = at(f.derivative(v).derivative(v));
    if (fuu == 0 && fuv == 0 && fvv == 0)
        return "triple";
    Rational disc = fuv * fuv - fuu * fvv;
    if (disc < 0)
        return "acnode";
    if (disc > 0)
        return "crunode";
    return "cusp";
}

inline std::vector<SingularPoint> singular_points_cubic(const CurvePoly& f)
{
    if (f.degree() != 3)
        throw Error(ErrorKind::InvalidParameters, "singular_points_cubic needs a cubic");
    if (rational_linear_factor(f))
        throw Error(ErrorKind::InvalidParameters, "cubic is reducible over the rationals");
    const CurvePoly fx = f.derivative(0), fy = f.derivative(1), fz = f.derivative(2);
    std::vector<ProjPoint> found;
    auto singular = [&](const ProjPoint& p) {
        return detail::vanishes(fx, p) && detail::vanishes(fy, p) && detail::vanishes(fz, p);
    };
    // line at infinity: points [t:1:0] and [1:0:0]
    {
        std::vector<QPoly> forms{detail::restrict_binary(fx, 2, 0), detail::restrict_binary(fy, 2, 0),
                                 detail::restrict_binary(fz, 2, 0)};
        for (const auto& r : detail::binary_rational_roots(forms, 2)) {
            ProjPoint p{r[0], r[1], Rational(0)};
            if (singular(p))
                found.push_back(p);
        }
    }
    // affine part: eliminate y between two of the partials
    auto in_y = [](const CurvePoly& g) {
        // coefficients in y, each a polynomial in x (z = 1)
        std::vector<QPoly> c;
        for (const auto& [m, v] : g.terms()) {
            std::size_t j = static_cast<std::size_t>(m[1]), i = static_cast<std::size_t>(m[0]);
            if (c.size() <= j)
                c.resize(j + 1);
            if (c[j].size() <= i)
                c[j].resize(i + 1);
            c[j][i] += v;
        }
        for (auto& q : c)
            qpoly::trim(q);
        while (!c.empty() && c.back().empty())
            c.pop_back();
        return c;
    };
    auto resultant = [](std::vector<QPoly> a, std::vector<QPoly> b) -> QPoly {
        int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
        if (m < 0 || n < 0)
            return {};
        if (m == 0 && n == 0)
            return {};
        int s = m + n;
        std::vector<std::vector<QPoly>> M(s, std::vector<QPoly>(s));
        for (int r = 0; r < n; ++r)
            for (int k = 0; k <= m; ++k)
                M[r][r + k] = a[m - k];
        for (int r = 0; r < m; ++r)
            for (int k = 0; k <= n; ++k)
                M[n + r][r + k] = b[n - k];
        std::function<QPoly(std::vector<int>, int)> det = [&](std::vector<int> cols, int row) -> QPoly {
            if (row == s)
                return {Rational(1)};
            QPoly acc;
            for (std::size_t ci = 0; ci < cols.size(); ++ci) {
                const QPoly& e = M[row][cols[ci]];
                if (e.empty())
                    continue;
                std::vector<int> rest = cols;
                rest.erase(rest.begin() + static_cast<long>(ci));
                QPoly term = qpoly::mul(e, det(rest, row + 1));
                acc = (ci % 2 == 0) ? qpoly::add(acc, term) : qpoly::sub(acc, term);
            }
            return acc;
        };
        std::vector<int> cols(s);
        std::iota(cols.begin(), cols.end(), 0);
        return det(cols, 0);
    };
    std::vector<CurvePoly> polys{fx, fy, fz};
    QPoly R;
    bool any = false;
    for (int i = 0; i < 3 && !any; ++i)
        for (int j = i + 1; j < 3 && !any; ++j) {
            auto a = in_y(polys[i]), b = in_y(polys[j]);
            if (a.empty() || b.empty())
                continue;
            if (a.size() == 1 && b.size() == 1) {
                R = qpoly::gcd(a[0], b[0]);
                any = !R.empty();
                continue;
            }
            if (a.size() == 1 || b.size() == 1) {
                R = a.size() == 1 ? a[0] : b[0];
                any = !R.empty();
                continue;
            }
            R = resultant(a, b);
            any = !R.empty();
        }
    if (!any)
        throw Error(ErrorKind::IrrationalSingularity, "elimination degenerated");
    for (const auto& x0 : rational_roots(R)) {
        std::vector<QPoly> ys;
        for (const auto& g : polys) {
            QPoly u;
            for (const auto& [m, v] : g.terms()) {
                std::size_t j = static_cast<std::size_t>(m[1]);
                if (u.size() <= j)
                    u.resize(j + 1);
                Rational t = v;
                for (int k = 0; k < m[0]; ++k)
                    t *= x0;
                u[j] += t;
            }
            qpoly::trim(u);
            if (!u.empty())
                ys.push_back(u);
        }
        if (ys.empty())
            continue;
        QPoly g = ys[0];
        for (std::size_t k = 1; k < ys.size(); ++k)
            g = qpoly::gcd(g, ys[k]);
        for (const auto& y0 : rational_roots(g)) {
            ProjPoint p{x0, y0, Rational(1)};
            if (singular(p))
                found.push_back(p);
        }
    }
    std::vector<SingularPoint> out;
    for (const auto& p : found)
        out.push_back({p, classify_double_point(f, p)});
    return out;
}

} // namespace ordcirc
