#include <random>

#include "catch_amalgamated.hpp"

#include "ordcirc/exact/expr_json.hpp"
#include "ordcirc/exact/real_expr.hpp"

using namespace ordcirc;

namespace {

Rational lo(const Interval& i) { return i.lo_rational(); }
Rational hi(const Interval& i) { return i.hi_rational(); }

RealExpr c(long a, long b) { return RealExpr::cos(Angle(a, b)); }
RealExpr s(long a, long b) { return RealExpr::sin(Angle(a, b)); }

} // namespace

TEST_CASE("rational literal encloses its value", "[exact]")
{
    Interval i = eval_interval(RealExpr(Rational(1, 3)), 53);
    CHECK(lo(i) <= Rational(1, 3));
    CHECK(hi(i) >= Rational(1, 3));
    CHECK(hi(i) - lo(i) <= Rational(1, 1L << 52));
}

TEST_CASE("cos of a sixth turn is one half", "[exact]")
{
    Interval i = eval_interval(c(1, 6), 200);
    CHECK(lo(i) <= Rational(1, 2));
    CHECK(hi(i) >= Rational(1, 2));
    CHECK(exact_rational_value(c(1, 6)) == Rational(1, 2));
}

TEST_CASE("cos 45 minus sin 45 is symbolically zero", "[exact]")
{
    RealExpr e = c(1, 8) - s(1, 8);
    for (long p : {64L, 256L, 1024L})
        CHECK(eval_interval(e, p).contains_zero());
    SignCertificate cert = certified_sign(e);
    CHECK(cert.sign == Sign::Zero);
    CHECK(cert.method == SignMethod::SymbolicZero);
}

TEST_CASE("certified signs", "[exact]")
{
    CHECK(certified_sign(RealExpr(Rational(0))).sign == Sign::Zero);
    CHECK(certified_sign(RealExpr(Rational(0))).method == SignMethod::ExactRational);
    SignCertificate neg = certified_sign(c(1, 12) * RealExpr(-2));
    CHECK(neg.sign == Sign::Negative);
    CHECK(neg.method == SignMethod::IntervalAtPrecision);
    CHECK(certified_sign(RealExpr::sqrt(RealExpr(2)) - RealExpr(Rational(141, 100))).sign == Sign::Positive);
}

TEST_CASE("regular octagon concyclicity determinant vanishes exactly", "[exact]")
{
    auto row = [](long k) {
        RealExpr x = c(k, 8), y = s(k, 8);
        return std::array<RealExpr, 4>{x * x + y * y, x, y, RealExpr(1)};
    };
    std::array<std::array<RealExpr, 4>, 4> m{row(0), row(1), row(3), row(6)};
    // Laplace expansion along the first row
    auto det3 = [](const RealExpr& a, const RealExpr& b, const RealExpr& c_, const RealExpr& d, const RealExpr& e,
                   const RealExpr& f, const RealExpr& g, const RealExpr& h, const RealExpr& i) {
        return a * (e * i - f * h) - b * (d * i - f * g) + c_ * (d * h - e * g);
    };
    RealExpr det(0);
    for (int col = 0; col < 4; ++col) {
        std::array<RealExpr, 9> minor;
        int k = 0;
        for (int r = 1; r < 4; ++r)
            for (int cc = 0; cc < 4; ++cc)
                if (cc != col)
                    minor[static_cast<std::size_t>(k++)] = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)];
        RealExpr term = m[0][static_cast<std::size_t>(col)] *
                        det3(minor[0], minor[1], minor[2], minor[3], minor[4], minor[5], minor[6], minor[7], minor[8]);
        det = col % 2 ? det - term : det + term;
    }
    SignCertificate cert = certified_sign(det);
    CHECK(cert.sign == Sign::Zero);
    CHECK(cert.method == SignMethod::SymbolicZero);
}

TEST_CASE("exact rational values", "[exact]")
{
    CHECK(exact_rational_value(RealExpr(1) / c(1, 6)) == Rational(2));
    CHECK_FALSE(exact_rational_value(c(1, 8)).has_value());
    CHECK(exact_rational_value(RealExpr(Rational(1, 2)) + RealExpr(Rational(1, 3))) == Rational(5, 6));
}

TEST_CASE("refinement is monotone", "[exact][property]")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        long a = static_cast<long>(rng() % 24), b = 24;
        RealExpr e = c(a, b) * RealExpr(Rational(static_cast<long>(rng() % 7) - 3, 5)) + s(a + 1, b) -
                     RealExpr::sqrt(RealExpr(Rational(static_cast<long>(rng() % 9) + 1, 3)));
        Interval prev = eval_interval(e, 32);
        for (long p : {64L, 128L, 256L, 512L}) {
            Interval cur = eval_interval(e, p);
            CHECK(cur.subset_of(prev));
            prev = cur;
        }
    }
}

TEST_CASE("division by zero and negative square roots are rejected", "[exact]")
{
    CHECK_THROWS_AS(RealExpr(1) / (c(1, 8) - s(1, 8)), Error);
    CHECK_THROWS_AS(RealExpr::sqrt(RealExpr(-1)), Error);
}

TEST_CASE("precision cap is read from the environment", "[exact]")
{
    CHECK(precision_cap() >= 64);
}

TEST_CASE("expression JSON round trip", "[exact]")
{
    RealExpr e = (c(1, 5) + RealExpr(Rational(2, 3))) / s(1, 7) - RealExpr::sqrt(RealExpr(3));
    RealExpr back = expr_from_json(expr_to_json(e));
    CHECK(back.str() == e.str());
    RealExpr f = (c(1, 5) + RealExpr(Rational(2, 3))) * s(1, 7);
    CHECK(certified_zero(expr_from_json(expr_to_json(f)) - f));
    CHECK(expr_to_json(RealExpr(Rational(3, 4))) == json{{"rat", "3/4"}});
    CHECK_THROWS_AS(expr_from_json(json{{"bogus", 1}}), Error);
}

TEST_CASE("angles are kept in lowest terms modulo one turn", "[exact]")
{
    CHECK(Angle(3, 6) == Angle(1, 2));
    CHECK(Angle(-1, 4) == Angle(3, 4));
    CHECK((Angle(1, 3) + Angle(2, 3)).is_zero());
    CHECK(Angle::parse("5/4") == Angle(1, 4));
}
