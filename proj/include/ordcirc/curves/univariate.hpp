#pragma once

#include <algorithm>
#include <vector>

#include "ordcirc/exact/cyclotomic.hpp"

namespace ordcirc {

namespace qpoly {

inline QPoly derivative(const QPoly& p)
{
    QPoly r;
    for (std::size_t i = 1; i < p.size(); ++i)
        r.push_back(p[i] * static_cast<long>(i));
    trim(r);
    return r;
}

inline Rational eval(const QPoly& p, const Rational& x)
{
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;)
        acc = acc * x + p[i];
    return acc;
}

inline QPoly gcd(const QPoly& a, const QPoly& b) { return gcd_ext(a, b).first; }

inline int sign_at(const QPoly& p, const Rational& x) { return sgn(eval(p, x)); }

} // namespace qpoly

// Simplest rational (smallest denominator) in [lo, hi].
inline Rational simplest_between(Rational lo, Rational hi)
{
    if (lo > hi)
        std::swap(lo, hi);
    if (lo <= 0 && hi >= 0)
        return 0;
    if (hi < 0)
        return -simplest_between(-hi, -lo);
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (Rational(fl) == lo)
        return lo;
    if (Rational(fl + 1) <= hi)
        return Rational(fl + 1);
    Rational frac = simplest_between(1 / (hi - fl), 1 / (lo - fl));
    return Rational(fl) + 1 / frac;
}

// Distinct rational roots in increasing order.
inline std::vector<Rational> rational_roots(QPoly p)
{
    qpoly::trim(p);
    std::vector<Rational> out;
    if (p.size() <= 1)
        return out;
    // square-free part
    QPoly g = qpoly::gcd(p, qpoly::derivative(p));
    if (g.size() > 1)
        p = qpoly::divmod(p, g).first;
    if (p.size() == 2) {
        out.push_back(-p[0] / p[1]);
        return out;
    }
    // primitive integer form, lead coefficient bounds denominators
    Integer l = 1;
    for (auto& c : p)
        l = lcm(l, c.get_den());
    std::vector<Integer> zc;
    for (auto& c : p) {
        Rational v = c * l;
        zc.push_back(v.get_num());
    }
    Integer lead = abs(zc.back());
    Rational bound = 1;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        bound = std::max(bound, Rational(abs(p[i] / p.back())));
    bound += 1;
    // Sturm chain
    std::vector<QPoly> chain{p, qpoly::derivative(p)};
    while (chain.back().size() > 1) {
        QPoly r = qpoly::mod(chain[chain.size() - 2], chain.back());
        if (r.empty())
            break;
        chain.push_back(qpoly::scale(r, Rational(-1)));
    }
    auto changes = [&](const Rational& x) {
        int c = 0, last = 0;
        for (const auto& q : chain) {
            int s = qpoly::sign_at(q, x);
            if (s == 0)
                continue;
            if (last != 0 && s != last)
                ++c;
            last = s;
        }
        return c;
    };
    Rational eps = Rational(1, 2) / Rational(lead * lead);
    std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        int k = changes(a) - changes(b); // roots in (a, b]
        if (k == 0)
            continue;
        if (k == 1 && b - a < eps) {
            Rational r = simplest_between(a, b);
            if (qpoly::eval(p, r) == 0)
                out.push_back(r);
            else if (qpoly::eval(p, b) == 0)
                out.push_back(b);
            continue;
        }
        Rational m = (a + b) / 2;
        stack.push_back({a, m});
        stack.push_back({m, b});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace ordcirc
