#pragma once

#include <random>
#include <string>

#include "ordcirc/groups/concentric.hpp"
#include "ordcirc/groups/cubic.hpp"
#include "ordcirc/groups/ellipse.hpp"
#include "ordcirc/groups/hosts.hpp"

namespace ordcirc {

// Randomized cross-validation of an algebraic four-point criterion against the geometric predicate.
struct LawReport {
    std::string group;
    long quadruples = 0;
    long concyclic = 0;
    long tangency = 0;
    long mismatches = 0;
    long skipped = 0;

    bool passed() const { return mismatches == 0; }
};

inline json law_report_to_json(const LawReport& r)
{
    return json{{"group", r.group},         {"quadruples", r.quadruples}, {"concyclic", r.concyclic},
                {"tangency", r.tangency},   {"mismatches", r.mismatches}, {"skipped", r.skipped},
                {"verdict", r.passed() ? "pass" : "fail"}};
}

namespace detail {

// Quarter of the draws repeat a point, half close the sum to zero.
struct QuadrupleDraw {
    std::mt19937_64 rng;
    explicit QuadrupleDraw(std::uint64_t seed) : rng(seed) {}
    int uniform(int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); }
    bool coin(int one_in) { return uniform(one_in) == 0; }
};

} // namespace detail

inline LawReport validate_ellipse_law(std::uint64_t seed, long count, Rational s = 2)
{
    LawReport rep{"ellipse"};
    EllipseHost host(std::move(s));
    detail::QuadrupleDraw d(seed);
    const int N = 12;
    for (long i = 0; i < count; ++i) {
        std::array<int, 4> k{d.uniform(N), d.uniform(N), d.uniform(N), d.uniform(N)};
        if (d.coin(4))
            k[1] = k[0];
        if (d.coin(2))
            k[3] = ((-(k[0] + k[1] + k[2])) % N + N) % N;
        std::array<EllipseGroupElement, 4> q;
        for (int j = 0; j < 4; ++j)
            q[static_cast<std::size_t>(j)] = {Angle(k[static_cast<std::size_t>(j)], N)};
        ++rep.quadruples;
        try {
            GroupCheck c = ellipse_concyclic_check(host, q);
            rep.concyclic += c.algebraic;
            rep.tangency += c.tangency;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Mismatch)
                throw;
            ++rep.mismatches;
        }
    }
    return rep;
}

inline LawReport validate_concentric_law(std::uint64_t seed, long count, Rational r = 3)
{
    LawReport rep{"concentric"};
    ConcentricHost host{RealExpr(std::move(r))};
    detail::QuadrupleDraw d(seed);
    const int N = 8;
    for (long i = 0; i < count; ++i) {
        std::array<int, 4> k{d.uniform(N), d.uniform(N), d.uniform(N), d.uniform(N)};
        bool repeat = d.coin(4);
        if (repeat) {
            if (d.coin(2))
                k[1] = k[0];
            else
                k[3] = k[2];
        }
        if (d.coin(2)) {
            // close the sum with whichever entry is not part of the repeated pair
            int free = repeat && k[3] == k[2] ? 1 : 3;
            int other = 0;
            for (int j = 0; j < 4; ++j)
                if (j != free)
                    other += k[static_cast<std::size_t>(j)];
            k[static_cast<std::size_t>(free)] = ((-other) % N + N) % N;
        }
        std::array<ConcentricGroupElement, 4> q;
        for (int j = 0; j < 4; ++j)
            q[static_cast<std::size_t>(j)] = {j < 2 ? 0 : 1, Angle(k[static_cast<std::size_t>(j)], N)};
        ++rep.quadruples;
        try {
            GroupCheck c = concentric_concyclic_check(host, q);
            rep.concyclic += c.algebraic;
            rep.tangency += c.tangency;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Mismatch)
                throw;
            ++rep.mismatches;
        }
    }
    return rep;
}

// Rational points on the acnodal host, cut out by lines through the acnode.
inline LawReport validate_cubic_law(std::uint64_t seed, long count)
{
    LawReport rep{"cubic"};
    CubicHost host(acnodal_host_poly());
    detail::QuadrupleDraw d(seed);
    std::vector<Proj<Rational>> pool;
    for (int a = -6; a <= 6; ++a)
        for (int b = 1; b <= 3; ++b) {
            if (std::gcd(a, b) != 1)
                continue;
            try {
                Proj<Rational> p = point_through_singularity(host, Rational(a, b));
                if (p[2] != 0)
                    pool.push_back(p);
            } catch (const Error&) {
            }
        }
    const int P = static_cast<int>(pool.size());
    for (long i = 0; i < count; ++i) {
        auto a = pool[static_cast<std::size_t>(d.uniform(P))];
        auto b = pool[static_cast<std::size_t>(d.uniform(P))];
        auto c = pool[static_cast<std::size_t>(d.uniform(P))];
        if (d.coin(4))
            b = a;
        try {
            Proj<Rational> e = d.coin(2) ? host.add(host.omega(), host.neg(host.add(host.add(a, b), c)))
                                         : pool[static_cast<std::size_t>(d.uniform(P))];
            if (e[2] == 0 || host.is_singular(e)) {
                ++rep.skipped;
                continue;
            }
            std::array<Proj<Rational>, 4> q{a, b, c, e};
            bool tangent = false;
            for (int x = 0; x < 4; ++x)
                for (int y = x + 1; y < 4; ++y)
                    tangent = tangent || host.equal(q[static_cast<std::size_t>(x)], q[static_cast<std::size_t>(y)]);
            bool on = cubic_concyclicity_check(host, q);
            ++rep.quadruples;
            rep.concyclic += on;
            rep.tangency += tangent;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Mismatch) {
                ++rep.quadruples;
                ++rep.mismatches;
            } else {
                ++rep.skipped; // singular hits or more than one repeated pair
            }
        }
    }
    return rep;
}

} // namespace ordcirc
