#pragma once

#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordcirc/exact/expr_json.hpp"
#include "ordcirc/exact/rational.hpp"

namespace ordcirc {

struct Gaussian {
    Rational re, im;

    Gaussian() = default;
    Gaussian(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
    Gaussian(long v) : re(v), im(0) {}

    friend Gaussian operator+(const Gaussian& a, const Gaussian& b) { return {a.re + b.re, a.im + b.im}; }
    friend Gaussian operator-(const Gaussian& a, const Gaussian& b) { return {a.re - b.re, a.im - b.im}; }
    friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
    friend Gaussian operator*(const Gaussian& a, const Gaussian& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Gaussian operator/(const Gaussian& a, const Gaussian& b)
    {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0)
            throw Error(ErrorKind::DivisionNearZero, "Gaussian division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Gaussian conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }
    bool operator==(const Gaussian& o) const { return re == o.re && im == o.im; }
    Gaussian& operator+=(const Gaussian& o) { return *this = *this + o; }
    Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }
};

using Monomial = std::array<int, 3>;

// Homogeneous polynomial in x, y, z; begin() is the lex-largest monomial.
class CurvePoly {
public:
    using Terms = std::map<Monomial, Rational, std::greater<Monomial>>;

    CurvePoly() = default;
    explicit CurvePoly(int degree) : degree_(degree) {}

    static CurvePoly monomial(int i, int j, int k, const Rational& c = 1)
    {
        CurvePoly p(i + j + k);
        p.add_term({i, j, k}, c);
        return p;
    }
    static CurvePoly x() { return monomial(1, 0, 0); }
    static CurvePoly y() { return monomial(0, 1, 0); }
    static CurvePoly z() { return monomial(0, 0, 1); }
    static CurvePoly constant(const Rational& c) { return monomial(0, 0, 0, c); }

    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(int i, int j, int k) const
    {
        auto it = terms_.find({i, j, k});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c)
    {
        if (m[0] + m[1] + m[2] != degree_)
            throw Error(ErrorKind::InvalidParameters, "monomial degree does not match polynomial degree");
        if (c == 0)
            return;
        auto& slot = terms_[m];
        slot += c;
        if (slot == 0)
            terms_.erase(m);
    }

    friend CurvePoly operator+(const CurvePoly& a, const CurvePoly& b)
    {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        if (a.degree_ != b.degree_)
            throw Error(ErrorKind::InvalidParameters, "adding forms of different degree");
        CurvePoly r = a;
        for (const auto& [m, c] : b.terms_)
            r.add_term(m, c);
        return r;
    }
    friend CurvePoly operator-(const CurvePoly& a) { return a * Rational(-1); }
    friend CurvePoly operator-(const CurvePoly& a, const CurvePoly& b) { return a + (-b); }
    friend CurvePoly operator*(const CurvePoly& a, const Rational& s)
    {
        CurvePoly r(a.degree_);
        if (s != 0)
            for (const auto& [m, c] : a.terms_)
                r.terms_[m] = c * s;
        return r;
    }
    friend CurvePoly operator*(const Rational& s, const CurvePoly& a) { return a * s; }
    friend CurvePoly operator*(const CurvePoly& a, const CurvePoly& b)
    {
        CurvePoly r(a.degree_ + b.degree_);
        for (const auto& [m1, c1] : a.terms_)
            for (const auto& [m2, c2] : b.terms_)
                r.add_term({m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]}, c1 * c2);
        return r;
    }
    CurvePoly pow(int e) const
    {
        CurvePoly r = constant(1);
        for (int i = 0; i < e; ++i)
            r = r * *this;
        return r;
    }
    bool operator==(const CurvePoly& o) const
    {
        return terms_ == o.terms_ && (terms_.empty() || degree_ == o.degree_);
    }

    // d/dx_v
    CurvePoly derivative(int v) const
    {
        CurvePoly r(std::max(degree_ - 1, 0));
        for (const auto& [m, c] : terms_) {
            if (m[v] == 0)
                continue;
            Monomial n = m;
            n[v] -= 1;
            r.add_term(n, c * m[v]);
        }
        return r;
    }

    template <class T>
    T evaluate(const T& x, const T& y, const T& z) const
    {
        T acc = T(0);
        for (const auto& [m, c] : terms_) {
            T t;
            if constexpr (std::is_same_v<T, double>)
                t = c.get_d();
            else
                t = T(c);
            for (int i = 0; i < m[0]; ++i)
                t = t * x;
            for (int i = 0; i < m[1]; ++i)
                t = t * y;
            for (int i = 0; i < m[2]; ++i)
                t = t * z;
            acc = acc + t;
        }
        return acc;
    }

    // Integer coprime coefficients, leading coefficient positive.
    CurvePoly canonical() const
    {
        if (terms_.empty())
            return *this;
        Integer l = 1, g = 0;
        for (const auto& [m, c] : terms_)
            l = lcm(l, c.get_den());
        for (const auto& [m, c] : terms_) {
            Rational v = c * l;
            g = gcd(g, v.get_num());
        }
        Rational s = Rational(l) / Rational(g);
        if (terms_.begin()->second < 0)
            s = -s;
        return *this * s;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = abs(c);
            bool neg = c < 0;
            out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
            first = false;
            bool unit = a == 1;
            bool constant = m[0] + m[1] + m[2] == 0;
            if (!unit || constant)
                out += a.get_str();
            const char* names = "xyz";
            bool need_star = !unit || constant;
            for (int v = 0; v < 3; ++v) {
                if (m[v] == 0)
                    continue;
                if (need_star)
                    out += "*";
                out += names[v];
                if (m[v] > 1)
                    out += "^" + std::to_string(m[v]);
                need_star = true;
            }
        }
        return out;
    }

    // Parses sums of terms like "3/2*x^2*y - z^3"; a non-homogeneous input is homogenised with z.
    static CurvePoly parse(const std::string& src)
    {
        struct Term {
            Rational c;
            Monomial m;
        };
        std::vector<Term> terms;
        std::size_t i = 0;
        auto skip = [&] {
            while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i])))
                ++i;
        };
        auto fail = [&](const std::string& why) {
            return Error(ErrorKind::ParseError, why + " at offset " + std::to_string(i) + " in '" + src + "'");
        };
        auto number = [&]() {
            std::size_t s = i;
            while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '/'))
                ++i;
            return parse_rational(src.substr(s, i - s));
        };
        skip();
        bool first = true;
        while (i < src.size()) {
            Rational sign = 1;
            skip();
            if (src[i] == '+' || src[i] == '-') {
                sign = src[i] == '-' ? -1 : 1;
                ++i;
            } else if (!first) {
                throw fail("expected + or -");
            }
            first = false;
            skip();
            Term t{sign, {0, 0, 0}};
            bool any = false;
            for (;;) {
                skip();
                if (i >= src.size())
                    break;
                char ch = src[i];
                if (std::isdigit(static_cast<unsigned char>(ch))) {
                    t.c *= number();
                } else if (ch == 'x' || ch == 'y' || ch == 'z') {
                    ++i;
                    int e = 1;
                    skip();
                    if (i < src.size() && src[i] == '^') {
                        ++i;
                        skip();
                        std::size_t s = i;
                        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
                            ++i;
                        if (s == i)
                            throw fail("missing exponent");
                        e = std::stoi(src.substr(s, i - s));
                    }
                    t.m[ch - 'x'] += e;
                } else if (ch == '(') {
                    throw fail("parentheses are not supported");
                } else {
                    break;
                }
                any = true;
                skip();
                if (i < src.size() && src[i] == '*')
                    ++i;
                else if (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == 'x' ||
                                            src[i] == 'y' || src[i] == 'z'))
                    continue;
                else
                    break;
            }
            if (!any)
                throw fail("empty term");
            terms.push_back(t);
            skip();
        }
        int d = 0;
        for (auto& t : terms)
            d = std::max(d, t.m[0] + t.m[1] + t.m[2]);
        CurvePoly p(d);
        for (auto& t : terms) {
            t.m[2] += d - (t.m[0] + t.m[1] + t.m[2]);
            p.add_term(t.m, t.c);
        }
        return p;
    }

private:
    int degree_ = 0;
    Terms terms_;
};

inline json curve_to_json(const CurvePoly& f)
{
    json cs = json::array();
    for (const auto& [m, c] : f.terms())
        cs.push_back(json{{"i", m[0]}, {"j", m[1]}, {"k", m[2]}, {"c", format_rational(c)}});
    return json{{"degree", f.degree()}, {"coeffs", cs}};
}

inline CurvePoly curve_from_json(const json& j)
{
    if (j.is_string())
        return CurvePoly::parse(j.get<std::string>());
    if (!j.is_object() || !j.contains("degree") || !j.contains("coeffs"))
        throw Error(ErrorKind::ParseError, "curve needs 'degree' and 'coeffs'");
    CurvePoly f(j["degree"].get<int>());
    for (const auto& c : j["coeffs"]) {
        Monomial m{c.at("i").get<int>(), c.at("j").get<int>(), c.at("k").get<int>()};
        if (m[0] < 0 || m[1] < 0 || m[2] < 0)
            throw Error(ErrorKind::ParseError, "negative exponent");
        const auto& cv = c.at("c");
        f.add_term(m, cv.is_string() ? parse_rational(cv.get<std::string>()) : Rational(cv.get<long>()));
    }
    if (f.is_zero())
        throw Error(ErrorKind::ParseError, "zero polynomial");
    return f;
}

} // namespace ordcirc
