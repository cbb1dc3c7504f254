#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "ordcirc/error.hpp"

namespace ordcirc {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p" or "p/q" with optional sign.
inline Rational parse_rational(const std::string& s)
{
    if (s.empty())
        throw Error(ErrorKind::ParseError, "empty rational");
    auto check = [&](const std::string& part) {
        std::size_t i = (part.size() > 0 && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i == part.size())
            throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    if (!num.empty() && num[0] == '+')
        num.erase(0, 1);
    check(num);
    Rational r;
    if (slash == std::string::npos) {
        r = Rational(Integer(num));
    } else {
        std::string den = s.substr(slash + 1);
        check(den);
        Integer d(den);
        if (d == 0)
            throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
        r = Rational(Integer(num), d);
        r.canonicalize();
    }
    return r;
}

// Always "p/q", including q = 1.
inline std::string format_rational(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline int sign(const Rational& r) { return sgn(r); }

inline std::optional<Rational> rational_sqrt(const Rational& r)
{
    if (r < 0)
        return std::nullopt;
    Integer a = sqrt(r.get_num());
    Integer b = sqrt(r.get_den());
    if (a * a != r.get_num() || b * b != r.get_den())
        return std::nullopt;
    return Rational(a, b);
}

inline Integer binomial(long n, long k)
{
    if (k < 0 || n < k)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// Fraction of a full turn: the angle 2*pi*num/den, 0 <= num < den.
class Angle {
public:
    Angle() = default;
    Angle(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Angle operator+(const Angle& o) const
    {
        std::int64_t l = std::lcm(den_, o.den_);
        return Angle(num_ * (l / den_) + o.num_ * (l / o.den_), l);
    }
    Angle operator-() const { return Angle(-num_, den_); }
    Angle operator-(const Angle& o) const { return *this + (-o); }
    Angle operator*(std::int64_t k) const { return Angle(num_ * k, den_); }
    bool operator==(const Angle& o) const = default;
    bool operator<(const Angle& o) const { return std::pair(num_, den_) < std::pair(o.num_, o.den_); }
    bool is_zero() const { return num_ == 0; }

    Rational fraction() const { return Rational(static_cast<long>(num_), static_cast<unsigned long>(den_)); }
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    static Angle parse(const std::string& s)
    {
        Rational r = parse_rational(s);
        if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
            throw Error(ErrorKind::ParseError, "angle out of range '" + s + "'");
        return Angle(r.get_num().get_si(), r.get_den().get_si());
    }

private:
    void normalize()
    {
        if (den_ == 0)
            throw Error(ErrorKind::InvalidParameters, "angle with zero denominator");
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        num_ %= den_;
        if (num_ < 0)
            num_ += den_;
        std::int64_t g = std::gcd(num_, den_);
        if (g == 0)
            g = 1;
        num_ /= g;
        den_ /= g;
        if (num_ == 0)
            den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace ordcirc
