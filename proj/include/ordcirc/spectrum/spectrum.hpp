#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "ordcirc/geometry/inversion.hpp"

namespace ordcirc {

struct CircleSpectrum {
    std::size_t n = 0;
    std::map<int, long> line_counts;   // i -> t_i, i >= 2
    std::map<int, long> circle_counts; // i -> s_i, i >= 3

    long t(int i) const
    {
        auto it = line_counts.find(i);
        return it == line_counts.end() ? 0 : it->second;
    }
    long s(int i) const
    {
        auto it = circle_counts.find(i);
        return it == circle_counts.end() ? 0 : it->second;
    }
    long ordinary_circles() const { return s(3); }
    long ordinary_generalised() const { return t(3) + s(3); }
    long four_point_generalised() const { return t(4) + s(4); }

    bool operator==(const CircleSpectrum&) const = default;
};

enum class Backend { NaiveOracle, InversionFast };

inline const char* to_string(Backend b) { return b == Backend::NaiveOracle ? "naive" : "fast"; }

struct SpectrumReport {
    CircleSpectrum spectrum;
    Backend backend = Backend::NaiveOracle;
    long undecided_predicates = 0;
    double wall_time = 0; // seconds
};

// A generalised circle spanned by the set, with its members in increasing order.
struct CircleRecord {
    bool is_line = false;
    std::vector<int> members;
};

namespace detail {

inline void check_distinct(const PointSet& P)
{
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = i + 1; j < P.size(); ++j)
            if (same_point(P[i], P[j]))
                throw Error(ErrorKind::DuplicatePoints,
                            "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

inline long choose2(long k) { return k * (k - 1) / 2; }
inline long choose3(long k) { return k * (k - 1) * (k - 2) / 6; }

inline void finish_spectrum(CircleSpectrum& s, bool check_triples)
{
    long n = static_cast<long>(s.n);
    long pairs = choose2(n), triples = 0;
    for (auto& [k, c] : s.line_counts) {
        pairs -= choose2(k) * c;
        triples += choose3(k) * c;
    }
    for (auto& [k, c] : s.circle_counts)
        triples += choose3(k) * c;
    if (pairs > 0)
        s.line_counts[2] = pairs;
    if (check_triples && triples != choose3(n))
        throw Error(ErrorKind::Mismatch, "triple identity violated: " + std::to_string(triples) +
                                             " != C(n,3) = " + std::to_string(choose3(n)));
}

} // namespace detail

// Every generalised circle with >= 3 points, each reported once via its lexicographically smallest triple.
inline std::vector<CircleRecord> enumerate_circles(const PointSet& P, long* undecided = nullptr)
{
    const int n = static_cast<int>(P.size());
    std::vector<char> covered(static_cast<std::size_t>(n) * n * n, 0);
    auto at = [n](int i, int j, int k) { return (static_cast<std::size_t>(i) * n + j) * n + k; };
    std::vector<CircleRecord> out;
    long bad = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                if (covered[at(i, j, k)])
                    continue;
                CircleRecord rec;
                try {
                    rec.is_line = collinear(P[i], P[j], P[k]);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::PredicateUndecided)
                        throw;
                    ++bad;
                    covered[at(i, j, k)] = 1;
                    continue;
                }
                for (int l = 0; l < n; ++l) {
                    if (l == i || l == j || l == k) {
                        rec.members.push_back(l);
                        continue;
                    }
                    try {
                        bool on = rec.is_line ? collinear(P[i], P[j], P[l]) : concyclic(P[i], P[j], P[k], P[l]);
                        if (on)
                            rec.members.push_back(l);
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::PredicateUndecided)
                            throw;
                        ++bad;
                    }
                }
                const auto& m = rec.members;
                for (std::size_t a = 0; a < m.size(); ++a)
                    for (std::size_t b = a + 1; b < m.size(); ++b)
                        for (std::size_t c = b + 1; c < m.size(); ++c)
                            covered[at(m[a], m[b], m[c])] = 1;
                out.push_back(std::move(rec));
            }
    if (undecided)
        *undecided += bad;
    return out;
}

inline SpectrumReport spectrum_naive(const PointSet& P)
{
    auto start = std::chrono::steady_clock::now();
    if (P.size() < 3)
        throw Error(ErrorKind::InvalidParameters, "spectrum needs at least 3 points");
    detail::check_distinct(P);
    SpectrumReport r;
    r.backend = Backend::NaiveOracle;
    r.spectrum.n = P.size();
    for (const auto& c : enumerate_circles(P, &r.undecided_predicates)) {
        int k = static_cast<int>(c.members.size());
        (c.is_line ? r.spectrum.line_counts : r.spectrum.circle_counts)[k] += 1;
    }
    detail::finish_spectrum(r.spectrum, r.undecided_predicates == 0);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace detail {

struct CentreTally {
    std::map<int, long> lines, circles; // generalised circle size -> incidences at this centre
    long undecided = 0;
};

// Lines spanned by the inverted set are the generalised circles through the centre.
inline CentreTally tally_centre(const PointSet& P, int c)
{
    CentreTally out;
    const int n = static_cast<int>(P.size());
    InversionSpec spec(P[c], RealExpr(1));
    std::vector<Point> inv(n);
    for (int j = 0; j < n; ++j)
        if (j != c)
            inv[j] = invert_point(spec, P[j]);
    struct Dir {
        int idx;
        RealExpr dx, dy;
    };
    try {
        for (int a = 0; a < n; ++a) {
            if (a == c)
                continue;
            std::vector<Dir> dirs;
            for (int b = 0; b < n; ++b) {
                if (b == c || b == a)
                    continue;
                RealExpr dx = inv[b].x - inv[a].x, dy = inv[b].y - inv[a].y;
                Sign sy = decide(dy);
                if (sy == Sign::Negative || (sy == Sign::Zero && decide(dx) == Sign::Negative)) {
                    dx = -dx;
                    dy = -dy;
                }
                dirs.push_back({b, dx, dy});
            }
            auto cross = [](const Dir& u, const Dir& v) { return decide(u.dx * v.dy - u.dy * v.dx); };
            std::sort(dirs.begin(), dirs.end(), [&](const Dir& u, const Dir& v) { return cross(u, v) == Sign::Positive; });
            for (std::size_t s = 0; s < dirs.size();) {
                std::size_t e = s + 1;
                while (e < dirs.size() && cross(dirs[s], dirs[e]) == Sign::Zero)
                    ++e;
                int lowest = a;
                for (std::size_t t = s; t < e; ++t)
                    lowest = std::min(lowest, dirs[t].idx);
                if (lowest == a) {
                    int k = static_cast<int>(e - s) + 2;
                    bool line = collinear(P[c], P[a], P[dirs[s].idx]);
                    (line ? out.lines : out.circles)[k] += 1;
                }
                s = e;
            }
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::PredicateUndecided)
            throw;
        out.undecided += 1;
    }
    return out;
}

inline unsigned worker_count(unsigned requested, std::size_t jobs)
{
    unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(jobs, 1)));
}

} // namespace detail

inline SpectrumReport spectrum_fast(const PointSet& P, unsigned threads = 0)
{
    auto start = std::chrono::steady_clock::now();
    if (P.size() < 3)
        throw Error(ErrorKind::InvalidParameters, "spectrum needs at least 3 points");
    detail::check_distinct(P);
    const int n = static_cast<int>(P.size());
    std::vector<detail::CentreTally> tallies(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<int> next{0};
    auto work = [&]() {
        for (int c; (c = next.fetch_add(1)) < n;) {
            try {
                tallies[c] = detail::tally_centre(P, c);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        }
    };
    unsigned nt = detail::worker_count(threads, P.size());
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t)
        pool.emplace_back(work);
    work();
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    SpectrumReport r;
    r.backend = Backend::InversionFast;
    r.spectrum.n = P.size();
    std::map<int, long> lines, circles;
    for (const auto& t : tallies) {
        for (auto [k, v] : t.lines)
            lines[k] += v;
        for (auto [k, v] : t.circles)
            circles[k] += v;
        r.undecided_predicates += t.undecided;
    }
    auto divide = [&](const std::map<int, long>& from, std::map<int, long>& to) {
        for (auto [k, v] : from) {
            if (v % k != 0 && r.undecided_predicates == 0)
                throw Error(ErrorKind::Mismatch, "incidence count not divisible by circle size");
            to[k] = v / k;
        }
    };
    divide(lines, r.spectrum.line_counts);
    divide(circles, r.spectrum.circle_counts);
    detail::finish_spectrum(r.spectrum, r.undecided_predicates == 0);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

enum class CircleClass { OrdinaryGeneralised, FourPoint };

inline long circles_through_point(const PointSet& P, const std::vector<CircleRecord>& circles, const Point& q,
                                  CircleClass cls)
{
    std::size_t want = cls == CircleClass::OrdinaryGeneralised ? 3 : 4;
    long count = 0;
    for (const auto& c : circles) {
        if (c.members.size() != want)
            continue;
        const auto& m = c.members;
        bool on = c.is_line ? collinear(P[m[0]], P[m[1]], q) : concyclic(P[m[0]], P[m[1]], P[m[2]], q);
        count += on ? 1 : 0;
    }
    return count;
}

inline long circles_through_point(const PointSet& P, const Point& q, CircleClass cls)
{
    long undecided = 0;
    auto circles = enumerate_circles(P, &undecided);
    if (undecided)
        throw Error(ErrorKind::PredicateUndecided, std::to_string(undecided) + " undecided predicates");
    return circles_through_point(P, circles, q, cls);
}

// s + C(n,2) + C(n+1,2) + ... + C(n+K-1,2)
inline Integer stability_bound(long n, const Integer& s, long K)
{
    if (K < 0)
        throw Error(ErrorKind::InvalidParameters, "K must be nonnegative");
    Integer b = s;
    for (long j = 0; j < K; ++j)
        b += binomial(n + j, 2);
    return b;
}

inline json spectrum_to_json(const SpectrumReport& r)
{
    json lines = json::object(), circles = json::object();
    for (auto [k, v] : r.spectrum.line_counts)
        lines[std::to_string(k)] = v;
    for (auto [k, v] : r.spectrum.circle_counts)
        circles[std::to_string(k)] = v;
    return json{{"n", r.spectrum.n},
                {"backend", to_string(r.backend)},
                {"undecided_predicates", r.undecided_predicates},
                {"line_counts", lines},
                {"circle_counts", circles},
                {"ordinary_circles", r.spectrum.ordinary_circles()},
                {"ordinary_generalised", r.spectrum.ordinary_generalised()},
                {"four_point_generalised", r.spectrum.four_point_generalised()}};
}

inline std::string spectrum_to_csv(const SpectrumReport& r)
{
    std::string out = "kind,i,count\n";
    for (auto [k, v] : r.spectrum.line_counts)
        out += "line," + std::to_string(k) + "," + std::to_string(v) + "\n";
    for (auto [k, v] : r.spectrum.circle_counts)
        out += "circle," + std::to_string(k) + "," + std::to_string(v) + "\n";
    return out;
}

} // namespace ordcirc
