#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <vector>

#include "ordcirc/exact/rational.hpp"

namespace ordcirc {

// Dense univariate polynomial over Q, lowest degree first.
using QPoly = std::vector<Rational>;

namespace qpoly {

inline void trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline QPoly add(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] += b[i];
    trim(r);
    return r;
}

inline QPoly sub(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    trim(r);
    return r;
}

inline QPoly mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

inline QPoly scale(const QPoly& a, const Rational& s)
{
    if (s == 0)
        return {};
    QPoly r = a;
    for (auto& c : r)
        c *= s;
    return r;
}

// a = q*b + r
inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b)
{
    trim(a);
    if (a.size() < b.size())
        return {{}, a};
    QPoly q(a.size() - b.size() + 1);
    const Rational& lead = b.back();
    const std::size_t db = b.size() - 1;
    for (std::size_t k = a.size(); k-- > db;) {
        Rational c = a[k] / lead;
        q[k - db] = c;
        if (c != 0)
            for (std::size_t j = 0; j < b.size(); ++j)
                a[k - db + j] -= c * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline QPoly mod(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

// Returns (g, s) with s*a = g (mod b), g monic gcd.
inline std::pair<QPoly, QPoly> gcd_ext(QPoly a, QPoly b)
{
    QPoly s0{Rational(1)}, s1{};
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        QPoly s2 = sub(s0, mul(q, s1));
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (!a.empty()) {
        Rational l = a.back();
        a = scale(a, 1 / l);
        s0 = scale(s0, 1 / l);
    }
    return {a, s0};
}

} // namespace qpoly

inline const QPoly& cyclotomic_polynomial(int n)
{
    static std::recursive_mutex mu;
    static std::map<int, std::unique_ptr<QPoly>> cache;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end())
        return *it->second;
    // x^n - 1 divided by Phi_d for every proper divisor d
    QPoly p(n + 1);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d)
            continue;
        p = qpoly::divmod(p, cyclotomic_polynomial(d)).first;
    }
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<QPoly>(p);
    return *slot;
}

// Q(zeta_M) as Q[x]/Phi_M(x).
class CyclotomicField {
public:
    using Element = QPoly; // reduced, degree < phi(M)

    explicit CyclotomicField(int m) : m_(m), phi_(cyclotomic_polynomial(m)) {}

    int order() const { return m_; }
    std::size_t degree() const { return phi_.size() - 1; }

    Element constant(const Rational& q) const
    {
        if (q == 0)
            return {};
        return {q};
    }
    Element zeta_power(long k) const
    {
        k %= m_;
        if (k < 0)
            k += m_;
        QPoly p(static_cast<std::size_t>(k) + 1);
        p[static_cast<std::size_t>(k)] = 1;
        return qpoly::mod(p, phi_);
    }
    // cos(2*pi*a/b) = (z^k + z^-k)/2 with k = a*M/b
    Element cos_of(const Angle& a) const
    {
        long k = static_cast<long>(a.num() * (m_ / a.den()));
        return qpoly::scale(qpoly::add(zeta_power(k), zeta_power(-k)), Rational(1, 2));
    }
    // sin(t) = (z^k - z^-k)/(2i), i = z^(M/4), 1/i = z^(3M/4)
    Element sin_of(const Angle& a) const
    {
        long k = static_cast<long>(a.num() * (m_ / a.den()));
        long q = 3L * m_ / 4;
        return qpoly::scale(qpoly::sub(zeta_power(k + q), zeta_power(q - k)), Rational(1, 2));
    }

    Element add(const Element& a, const Element& b) const { return qpoly::add(a, b); }
    Element sub(const Element& a, const Element& b) const { return qpoly::sub(a, b); }
    Element neg(const Element& a) const { return qpoly::scale(a, Rational(-1)); }
    Element mul(const Element& a, const Element& b) const { return qpoly::mod(qpoly::mul(a, b), phi_); }
    std::optional<Element> inv(const Element& a) const
    {
        if (a.empty())
            return std::nullopt;
        auto [g, s] = qpoly::gcd_ext(a, phi_);
        if (g.size() != 1)
            return std::nullopt;
        return qpoly::mod(s, phi_);
    }

    static bool is_zero(const Element& a) { return a.empty(); }
    static std::optional<Rational> as_rational(const Element& a)
    {
        if (a.empty())
            return Rational(0);
        if (a.size() == 1)
            return a[0];
        return std::nullopt;
    }

private:
    int m_;
    QPoly phi_;
};

} // namespace ordcirc
