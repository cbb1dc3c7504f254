#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ordcirc/curves/poly.hpp"
#include "ordcirc/exact/real_expr.hpp"
#include "ordcirc/geometry/point.hpp"

namespace ordcirc {

struct FitReport {
    std::optional<CurvePoly> quartic;
    std::vector<std::size_t> inliers;
    std::vector<std::size_t> outliers;
    bool residual_certified = false;
};

namespace detail {

struct RationalOps {
    using T = Rational;
    T zero() const { return 0; }
    T from(const Rational& q) const { return q; }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T inv(const T& a) const { return 1 / a; }
    bool is_zero(const T& a) const { return a == 0; }
    std::optional<Rational> rational(const T& a) const { return a; }
};

struct CyclotomicOps {
    using T = QPoly;
    const CyclotomicField* f;
    T zero() const { return {}; }
    T from(const Rational& q) const { return f->constant(q); }
    T add(const T& a, const T& b) const { return f->add(a, b); }
    T sub(const T& a, const T& b) const { return f->sub(a, b); }
    T mul(const T& a, const T& b) const { return f->mul(a, b); }
    T inv(const T& a) const { return *f->inv(a); }
    bool is_zero(const T& a) const { return a.empty(); }
    std::optional<Rational> rational(const T& a) const { return CyclotomicField::as_rational(a); }
};

// t (x^2+y^2)^2 + (u x + v y)(x^2+y^2) z + q(x, y, z) z^2
constexpr int kQuarticParams = 9;

template <class Ops>
std::vector<typename Ops::T> quartic_row(const Ops& F, const typename Ops::T& x, const typename Ops::T& y)
{
    auto r2 = F.add(F.mul(x, x), F.mul(y, y));
    return {F.mul(r2, r2), F.mul(x, r2), F.mul(y, r2), F.mul(x, x), F.mul(x, y), F.mul(y, y), x, y, F.from(1)};
}

inline CurvePoly quartic_from_params(const std::vector<Rational>& c)
{
    CurvePoly r2 = CurvePoly::x().pow(2) + CurvePoly::y().pow(2);
    CurvePoly z = CurvePoly::z();
    CurvePoly q(2);
    q.add_term({2, 0, 0}, c[3]);
    q.add_term({1, 1, 0}, c[4]);
    q.add_term({0, 2, 0}, c[5]);
    q.add_term({1, 0, 1}, c[6]);
    q.add_term({0, 1, 1}, c[7]);
    q.add_term({0, 0, 2}, c[8]);
    CurvePoly lin(1);
    lin.add_term({1, 0, 0}, c[1]);
    lin.add_term({0, 1, 0}, c[2]);
    return r2.pow(2) * c[0] + lin * r2 * z + q * z.pow(2);
}

// Basis of the right nullspace, one vector per free column.
template <class Ops>
std::vector<std::vector<typename Ops::T>> nullspace(const Ops& F, std::vector<std::vector<typename Ops::T>> m, int cols)
{
    using T = typename Ops::T;
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (int c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && F.is_zero(m[p][c]))
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[row]);
        T iv = F.inv(m[row][c]);
        for (int k = c; k < cols; ++k)
            m[row][k] = F.mul(m[row][k], iv);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || F.is_zero(m[r][c]))
                continue;
            T f = m[r][c];
            for (int k = c; k < cols; ++k)
                m[r][k] = F.sub(m[r][k], F.mul(f, m[row][k]));
        }
        pivot_col.push_back(c);
        ++row;
    }
    std::vector<std::vector<T>> basis;
    for (int free = 0; free < cols; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end())
            continue;
        std::vector<T> v(cols, F.zero());
        v[free] = F.from(1);
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = F.sub(F.zero(), m[r][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class Ops>
FitReport fit_quartic_rows(const Ops& F, const std::vector<std::vector<typename Ops::T>>& rows, std::size_t max_outliers)
{
    const std::size_t n = rows.size();
    FitReport best;
    std::mt19937_64 rng(0);
    std::vector<std::size_t> idx(n);
    for (int trial = 0; trial < 200; ++trial) {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (std::size_t k = 0; k < kQuarticParams; ++k) {
            std::uniform_int_distribution<std::size_t> pick(k, n - 1);
            std::swap(idx[k], idx[pick(rng)]);
        }
        std::vector<std::vector<typename Ops::T>> sample;
        for (std::size_t k = 0; k < kQuarticParams; ++k)
            sample.push_back(rows[idx[k]]);
        for (const auto& v : nullspace(F, sample, kQuarticParams)) {
            std::vector<Rational> c;
            for (const auto& e : v) {
                auto q = F.rational(e);
                if (!q)
                    break;
                c.push_back(*q);
            }
            if (c.size() != kQuarticParams)
                continue;
            FitReport rep;
            for (std::size_t i = 0; i < n; ++i) {
                typename Ops::T s = F.zero();
                for (int k = 0; k < kQuarticParams; ++k)
                    if (c[k] != 0)
                        s = F.add(s, F.mul(F.from(c[k]), rows[i][k]));
                (F.is_zero(s) ? rep.inliers : rep.outliers).push_back(i);
            }
            if (rep.inliers.size() + max_outliers >= n) {
                rep.quartic = quartic_from_params(c).canonical();
                rep.residual_certified = true;
                return rep;
            }
        }
    }
    best.outliers.resize(n);
    std::iota(best.outliers.begin(), best.outliers.end(), std::size_t{0});
    return best;
}

} // namespace detail

// Points may be rational or lie in a common cyclotomic field.
inline FitReport fit_bicircular_quartic(const PointSet& P, std::size_t max_outliers)
{
    const std::size_t n = P.size();
    if (n < 10)
        throw Error(ErrorKind::InvalidParameters, "fitting needs at least 10 points");
    bool rational = std::all_of(P.points.begin(), P.points.end(), [](const Point& p) { return p.is_rational(); });
    if (rational) {
        detail::RationalOps F;
        std::vector<std::vector<Rational>> rows;
        for (const auto& p : P.points)
            rows.push_back(detail::quartic_row(F, p.x.rational(), p.y.rational()));
        return detail::fit_quartic_rows(F, rows, max_outliers);
    }
    std::int64_t m = 4;
    for (const auto& p : P.points)
        for (const RealExpr* c : {&p.x, &p.y}) {
            if (c->node()->has_ball)
                throw Error(ErrorKind::InvalidParameters, "fitting needs exact coordinates");
            m = std::lcm<std::int64_t>(m, c->node()->trig_lcm);
        }
    if (m > 4096)
        throw Error(ErrorKind::InvalidParameters, "coordinate field too large");
    detail::CyclotomicOps F{&detail::field(static_cast<int>(m))};
    std::vector<std::vector<QPoly>> rows;
    for (const auto& p : P.points) {
        auto x = detail::cyc_eval(*p.x.node(), *F.f);
        auto y = detail::cyc_eval(*p.y.node(), *F.f);
        if (!x || !y)
            throw Error(ErrorKind::InvalidParameters, "coordinates leave the cyclotomic field");
        rows.push_back(detail::quartic_row(F, *x, *y));
    }
    return detail::fit_quartic_rows(F, rows, max_outliers);
}

} // namespace ordcirc
