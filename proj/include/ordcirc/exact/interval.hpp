#pragma once

#include <algorithm>
#include <string>
#include <utility>

#include <mpfr.h>

#include "ordcirc/exact/rational.hpp"

namespace ordcirc {

// Closed interval with MPFR (dyadic) endpoints; all operations round outward.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64) : prec_(prec)
    {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Interval(const Interval& o) : prec_(o.prec_)
    {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval(Interval&& o) noexcept : Interval(o.prec_) { swap(o); }
    Interval& operator=(Interval o) noexcept
    {
        swap(o);
        return *this;
    }
    ~Interval()
    {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    void swap(Interval& o) noexcept
    {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }

    static Interval from_rational(const Rational& q, mpfr_prec_t prec)
    {
        Interval r(prec);
        mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    // [mid - rad, mid + rad]
    static Interval ball(const Rational& mid, const Rational& rad, mpfr_prec_t prec)
    {
        Rational a = mid - rad, b = mid + rad;
        Interval r(prec);
        mpfr_set_q(r.lo_, a.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, b.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    // cos or sin of 2*pi*num/den, widened by 2^-(prec-8).
    static Interval trig(const Angle& a, bool is_sin, mpfr_prec_t prec)
    {
        mpfr_prec_t w = prec + 16;
        mpfr_t x, v;
        mpfr_init2(x, w);
        mpfr_init2(v, w);
        mpfr_const_pi(x, MPFR_RNDN);
        mpfr_mul_si(x, x, 2 * a.num(), MPFR_RNDN);
        mpfr_div_si(x, x, a.den(), MPFR_RNDN);
        if (is_sin)
            mpfr_sin(v, x, MPFR_RNDN);
        else
            mpfr_cos(v, x, MPFR_RNDN);
        Interval r(prec);
        mpfr_set(r.lo_, v, MPFR_RNDD);
        mpfr_set(r.hi_, v, MPFR_RNDU);
        mpfr_t eps;
        mpfr_init2(eps, 32);
        mpfr_set_ui_2exp(eps, 1, -(prec - 8), MPFR_RNDU);
        mpfr_sub(r.lo_, r.lo_, eps, MPFR_RNDD);
        mpfr_add(r.hi_, r.hi_, eps, MPFR_RNDU);
        mpfr_clamp(r, -1, 1);
        mpfr_clear(eps);
        mpfr_clear(x);
        mpfr_clear(v);
        return r;
    }

    mpfr_prec_t precision() const { return prec_; }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }
    mpfr_t& lo() { return lo_; }
    mpfr_t& hi() { return hi_; }

    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    // +1, -1, or 0 when the interval straddles (or touches) zero.
    int certain_sign() const
    {
        if (mpfr_sgn(lo_) > 0)
            return 1;
        if (mpfr_sgn(hi_) < 0)
            return -1;
        return 0;
    }

    Rational lo_rational() const { return to_rational(lo_); }
    Rational hi_rational() const { return to_rational(hi_); }
    double mid_double() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }

    // log2 of the width, or a large negative number for a point interval.
    long width_exponent() const
    {
        mpfr_t w;
        mpfr_init2(w, prec_ + 2);
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        long e = mpfr_zero_p(w) ? -(1L << 40) : mpfr_get_exp(w);
        mpfr_clear(w);
        return e;
    }
    // exponent of max(|lo|, |hi|), at least 0
    long magnitude_exponent() const
    {
        long e = 0;
        if (!mpfr_zero_p(lo_))
            e = std::max(e, static_cast<long>(mpfr_get_exp(lo_)));
        if (!mpfr_zero_p(hi_))
            e = std::max(e, static_cast<long>(mpfr_get_exp(hi_)));
        return e;
    }

    bool subset_of(const Interval& o) const
    {
        return mpfr_greaterequal_p(lo_, o.lo_) && mpfr_lessequal_p(hi_, o.hi_);
    }

    friend Interval operator-(const Interval& a)
    {
        Interval r(a.prec_);
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval add(const Interval& a, const Interval& b, mpfr_prec_t prec)
    {
        Interval r(prec);
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval mul(const Interval& a, const Interval& b, mpfr_prec_t prec)
    {
        Interval r(prec);
        mpfr_t t;
        mpfr_init2(t, prec);
        bool first = true;
        const mpfr_t* xs[2] = {&a.lo_, &a.hi_};
        const mpfr_t* ys[2] = {&b.lo_, &b.hi_};
        for (auto x : xs)
            for (auto y : ys) {
                mpfr_mul(t, *x, *y, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_))
                    mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_mul(t, *x, *y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_))
                    mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        mpfr_clear(t);
        return r;
    }
    // Caller guarantees b excludes zero.
    friend Interval div(const Interval& a, const Interval& b, mpfr_prec_t prec)
    {
        Interval r(prec);
        mpfr_t t;
        mpfr_init2(t, prec);
        bool first = true;
        const mpfr_t* xs[2] = {&a.lo_, &a.hi_};
        const mpfr_t* ys[2] = {&b.lo_, &b.hi_};
        for (auto x : xs)
            for (auto y : ys) {
                mpfr_div(t, *x, *y, MPFR_RNDD);
                if (first || mpfr_less_p(t, r.lo_))
                    mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_div(t, *x, *y, MPFR_RNDU);
                if (first || mpfr_greater_p(t, r.hi_))
                    mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        mpfr_clear(t);
        return r;
    }
    // Negative parts of the argument are clamped to zero.
    friend Interval sqrt(const Interval& a, mpfr_prec_t prec)
    {
        Interval r(prec);
        if (mpfr_sgn(a.lo_) <= 0)
            mpfr_set_zero(r.lo_, 1);
        else
            mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
        if (mpfr_sgn(a.hi_) <= 0)
            mpfr_set_zero(r.hi_, 1);
        else
            mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    // Round outward onto the grid 2^e and pad by `pad` grid steps.
    Interval snapped(long e, int pad, mpfr_prec_t prec) const
    {
        Interval r(prec);
        mpfr_t s;
        mpfr_init2(s, prec_ + 8);
        mpfr_mul_2si(s, lo_, -e, MPFR_RNDD);
        mpfr_floor(s, s);
        mpfr_sub_si(s, s, pad, MPFR_RNDD);
        mpfr_mul_2si(r.lo_, s, e, MPFR_RNDD);
        mpfr_mul_2si(s, hi_, -e, MPFR_RNDU);
        mpfr_ceil(s, s);
        mpfr_add_si(s, s, pad, MPFR_RNDU);
        mpfr_mul_2si(r.hi_, s, e, MPFR_RNDU);
        mpfr_clear(s);
        return r;
    }

    std::string str(int digits = 20) const
    {
        char buf[256];
        mpfr_snprintf(buf, sizeof buf, "[%.*Rg, %.*Rg]", digits, lo_, digits, hi_);
        return buf;
    }

private:
    static Rational to_rational(const mpfr_t& v)
    {
        mpz_t m;
        mpz_init(m);
        mpfr_exp_t e = mpfr_get_z_2exp(m, v);
        Rational r{Integer(m)};
        mpz_clear(m);
        if (e > 0)
            mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
        else if (e < 0)
            mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
        return r;
    }

    static void mpfr_clamp(Interval& r, long a, long b)
    {
        if (mpfr_cmp_si(r.lo_, a) < 0)
            mpfr_set_si(r.lo_, a, MPFR_RNDD);
        if (mpfr_cmp_si(r.hi_, b) > 0)
            mpfr_set_si(r.hi_, b, MPFR_RNDU);
    }

    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

} // namespace ordcirc
