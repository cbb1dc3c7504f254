#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>
#include <boost/numeric/odeint.hpp>

#include "ordcirc/curves/univariate.hpp"
#include "ordcirc/geometry/point.hpp"
#include "ordcirc/groups/cubic.hpp"

namespace ordcirc {

using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<100>, boost::multiprecision::et_off>;
using Vec3 = std::array<double, 3>;
using BigVec3 = std::array<BigFloat, 3>;

namespace detail {

inline BigFloat to_big(const Rational& q)
{
    BigFloat r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

inline Rational to_rational(const BigFloat& v)
{
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v.backend().data());
    return q;
}

template <class T>
T dot(const std::array<T, 3>& a, const std::array<T, 3>& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
std::array<T, 3> cross(const std::array<T, 3>& a, const std::array<T, 3>& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
std::array<T, 3> unit(std::array<T, 3> a)
{
    using std::sqrt;
    T n = sqrt(dot(a, a));
    for (auto& c : a)
        c /= n;
    return a;
}

template <class T>
std::array<T, 3> axpy(const T& s, const std::array<T, 3>& x, const std::array<T, 3>& y)
{
    return {s * x[0] + y[0], s * x[1] + y[1], s * x[2] + y[2]};
}

} // namespace detail

// Host cubic with coefficients scaled to max |c| = 1, evaluated in double and in 256-bit floats.
class NumericCubic {
public:
    explicit NumericCubic(const CurvePoly& f)
    {
        Rational mx = 0;
        for (const auto& [m, c] : f.terms())
            mx = std::max(mx, Rational(abs(c)));
        for (const auto& [m, c] : f.terms()) {
            Rational s = c / mx;
            terms_.push_back({m, s.get_d(), detail::to_big(s)});
        }
    }

    template <class T>
    T value(const std::array<T, 3>& p) const
    {
        T acc = 0;
        for (const auto& t : terms_)
            acc += coeff<T>(t) * power(p[0], t.m[0]) * power(p[1], t.m[1]) * power(p[2], t.m[2]);
        return acc;
    }

    template <class T>
    std::array<T, 3> gradient(const std::array<T, 3>& p) const
    {
        std::array<T, 3> g{T(0), T(0), T(0)};
        for (const auto& t : terms_)
            for (int v = 0; v < 3; ++v) {
                if (t.m[v] == 0)
                    continue;
                T acc = coeff<T>(t) * T(t.m[v]);
                for (int w = 0; w < 3; ++w)
                    acc *= power(p[w], t.m[w] - (w == v ? 1 : 0));
                g[v] += acc;
            }
        return g;
    }

    // Tangent flow on the unit sphere; elapsed time is the invariant differential.
    template <class T>
    std::array<T, 3> velocity(const std::array<T, 3>& p) const
    {
        return detail::cross(gradient(p), p);
    }

    BigVec3 project(BigVec3 p) const
    {
        for (int it = 0; it < 4; ++it) {
            BigVec3 g = gradient(p);
            BigFloat s = value(p) / detail::dot(g, g);
            p = detail::unit(detail::axpy(BigFloat(-s), g, p));
        }
        return p;
    }

    // Third intersection of the line ab, tangent when a and b coincide.
    BigVec3 star(const BigVec3& a, const BigVec3& b) const
    {
        BigVec3 c = detail::cross(a, b);
        BigVec3 r;
        if (sqrt(detail::dot(c, c)) < BigFloat(1e-60)) {
            BigVec3 d = detail::cross(gradient(a), a);
            BigFloat c0 = value(d);
            BigFloat c1 = value(detail::axpy(BigFloat(1), a, d)) - c0;
            r = detail::axpy(c0, a, BigVec3{-c1 * d[0], -c1 * d[1], -c1 * d[2]});
        } else {
            BigFloat gp = value(detail::axpy(BigFloat(1), a, b));
            BigFloat gm = value(detail::axpy(BigFloat(-1), b, a));
            BigFloat c1 = (gp + gm) / 2, c2 = (gp - gm) / 2;
            r = detail::axpy(c1, a, BigVec3{-c2 * b[0], -c2 * b[1], -c2 * b[2]});
        }
        return detail::unit(r);
    }

private:
    struct Term {
        Monomial m;
        double d;
        BigFloat big;
    };
    std::vector<Term> terms_;

    template <class T>
    static const T& coeff(const Term& t)
    {
        if constexpr (std::is_same_v<T, double>)
            return t.d;
        else
            return t.big;
    }

    template <class T>
    static T power(const T& x, int e)
    {
        T r = 1;
        for (int i = 0; i < e; ++i)
            r *= x;
        return r;
    }
};

// Real points of the host as R/Z (x Z/2 when there is an oval), u measured by the invariant differential.
class CubicParametrization {
public:
    explicit CubicParametrization(const CubicHost& host) : host_(host), num_(host.poly())
    {
        const auto& o = host.identity();
        o_ = detail::unit(Vec3{o[0].get_d(), o[1].get_d(), o[2].get_d()});
        period_ = flow_until(o_, Vec3{-o_[0], -o_[1], -o_[2]}, 0.0).value_or(-1.0);
        if (period_ <= 0)
            throw Error(ErrorKind::ToleranceExceeded, "identity component did not close");
        find_oval();
    }

    double period() const { return period_; }
    bool has_oval() const { return oval_.has_value(); }
    // Refined point of order two on the oval.
    const BigVec3& oval_base() const { return *oval_; }
    const NumericCubic& numeric() const { return num_; }

    static BigVec3 lift(const Proj<Rational>& p) { return detail::unit(BigVec3{detail::to_big(p[0]), detail::to_big(p[1]), detail::to_big(p[2])}); }
    static Vec3 lower(const BigVec3& p) { return {p[0].convert_to<double>(), p[1].convert_to<double>(), p[2].convert_to<double>()}; }

    BigVec3 identity() const { return lift(host_.identity()); }
    BigVec3 omega() const { return lift(host_.omega()); }

    // Point at parameter u on the given component (double accuracy).
    Vec3 point_at(double u, int component) const
    {
        if (component == 1 && !oval_)
            throw Error(ErrorKind::HostUnsupported, "host has a single real component");
        u -= std::floor(u);
        Vec3 start = component == 0 ? o_ : lower(*oval_);
        return integrate(start, u * period_);
    }

    // (u, component) of a point on the host.
    std::pair<double, int> parameter(const Vec3& q) const
    {
        Vec3 qh = detail::unit(q);
        for (int comp = 0; comp < (oval_ ? 2 : 1); ++comp) {
            Vec3 start = comp == 0 ? o_ : lower(*oval_);
            for (double sgn : {1.0, -1.0}) {
                Vec3 target{sgn * qh[0], sgn * qh[1], sgn * qh[2]};
                if (auto t = flow_until(start, target, 0.0)) {
                    double u = *t / period_;
                    return {u - std::floor(u), comp};
                }
            }
        }
        throw Error(ErrorKind::ToleranceExceeded, "point not found on the real locus");
    }

    BigVec3 add(const BigVec3& a, const BigVec3& b) const { return num_.star(num_.star(a, b), identity()); }

    BigVec3 multiple(BigVec3 a, long k) const
    {
        BigVec3 r = identity();
        bool first = true;
        while (k) {
            if (k & 1) {
                r = first ? a : add(r, a);
                first = false;
            }
            k >>= 1;
            if (k)
                a = add(a, a);
        }
        return r;
    }

    // Time from q to a nearby point r along the flow, first order.
    BigFloat offset(const BigVec3& q, BigVec3 r) const
    {
        if (detail::dot(q, r) < 0)
            for (auto& c : r)
                c = -c;
        BigVec3 v = num_.velocity(q);
        BigVec3 d{r[0] - q[0], r[1] - q[1], r[2] - q[2]};
        return detail::dot(d, v) / detail::dot(v, v);
    }

    BigVec3 move(const BigVec3& p, const BigFloat& dt) const
    {
        // midpoint step then projection
        BigVec3 v = num_.velocity(p);
        BigVec3 mid = detail::unit(detail::axpy(BigFloat(dt / 2), v, p));
        BigVec3 v2 = num_.velocity(mid);
        return num_.project(detail::unit(detail::axpy(dt, v2, p)));
    }

    // Refine x so that k x = target (Newton in flow time).
    // Compared as ((k-1) x) * x = target * o, which keeps every chord well separated.
    BigVec3 solve_multiple(BigVec3 x, long k, const BigVec3& target) const
    {
        x = num_.project(x);
        const BigVec3 goal = num_.star(target, identity());
        const BigFloat tol = pow(BigFloat(2), -240);
        for (int it = 0; it < 40; ++it) {
            BigFloat off = offset(num_.star(multiple(x, k - 1), x), goal);
            if (abs(off) < tol)
                return x;
            x = move(x, -off / k);
        }
        throw Error(ErrorKind::ToleranceExceeded, "torsion refinement did not converge");
    }

    BigVec3 refine(const Vec3& p) const { return num_.project(detail::unit(BigVec3{BigFloat(p[0]), BigFloat(p[1]), BigFloat(p[2])})); }

    // |u(a + b) - u(a) - u(b)| mod 1
    double additivity_defect(const Vec3& a, const Vec3& b) const
    {
        auto [ua, ca] = parameter(a);
        auto [ub, cb] = parameter(b);
        auto [us, cs] = parameter(lower(add(refine(a), refine(b))));
        double d = us - ua - ub;
        d -= std::round(d);
        if ((ca + cb) % 2 != cs)
            return 1.0;
        return std::abs(d);
    }

private:
    const CubicHost& host_;
    NumericCubic num_;
    Vec3 o_;
    double period_ = 0;
    std::optional<BigVec3> oval_;

    Vec3 integrate(Vec3 x, double t) const
    {
        namespace ode = boost::numeric::odeint;
        if (t <= 0)
            return x;
        auto sys = [this](const Vec3& p, Vec3& dp, double) { dp = num_.velocity(p); };
        ode::integrate_adaptive(ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<Vec3>()), sys, x, 0.0, t, t / 64);
        return x;
    }

    // First time the trajectory from `start` passes through `target`, within one loop.
    std::optional<double> flow_until(const Vec3& start, const Vec3& target, double t_min) const
    {
        namespace ode = boost::numeric::odeint;
        auto sys = [this](const Vec3& p, Vec3& dp, double) { dp = num_.velocity(p); };
        auto h = [&](const Vec3& p) {
            Vec3 v = num_.velocity(p);
            return (p[0] - target[0]) * v[0] + (p[1] - target[1]) * v[1] + (p[2] - target[2]) * v[2];
        };
        auto dist = [&](const Vec3& p) { return std::hypot(p[0] - target[0], p[1] - target[1], p[2] - target[2]); };
        if (dist(start) < 1e-10 && t_min <= 0 && period_ > 0)
            return 0.0;
        auto stepper = ode::make_dense_output(1e-13, 1e-13, ode::runge_kutta_dopri5<Vec3>());
        stepper.initialize(start, 0.0, 1e-4);
        double hv_prev = h(start);
        double travelled = 0;
        for (long step = 0; step < 2000000; ++step) {
            auto [t0, t1] = stepper.do_step(sys);
            Vec3 x1 = stepper.current_state();
            travelled += std::hypot(x1[0] - stepper.previous_state()[0], x1[1] - stepper.previous_state()[1],
                                    x1[2] - stepper.previous_state()[2]);
            double hv = h(x1);
            if (hv_prev < 0 && hv >= 0 && t1 > t_min) {
                double lo = t0, hi = t1;
                Vec3 s;
                for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
                    double mid = 0.5 * (lo + hi);
                    stepper.calc_state(mid, s);
                    (h(s) < 0 ? lo : hi) = mid;
                }
                stepper.calc_state(hi, s);
                if (dist(s) < 1e-6)
                    return hi;
            }
            hv_prev = hv;
            if (period_ > 0 && t1 > 1.05 * period_)
                return std::nullopt;
            if (period_ <= 0 && travelled > 1e4)
                return std::nullopt;
        }
        return std::nullopt;
    }

    // Points of order two off the identity component: tangents from omega.
    void find_oval()
    {
        // a singular cubic has a connected group
        if (!host_.singular_points().empty())
            return;
        BigVec3 w = omega();
        Vec3 wd = lower(w);
        Vec3 e1 = detail::unit(detail::cross(wd, std::abs(wd[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0}));
        Vec3 e2 = detail::cross(wd, e1);
        // f(mu w + lambda P) = lambda (a2 mu^2 + a1 mu lambda + a0 lambda^2)
        auto coeffs = [&](double phi) {
            Vec3 p{std::cos(phi) * e1[0] + std::sin(phi) * e2[0], std::cos(phi) * e1[1] + std::sin(phi) * e2[1],
                   std::cos(phi) * e1[2] + std::sin(phi) * e2[2]};
            double a0 = num_.value(p);
            double gp = num_.value(Vec3{wd[0] + p[0], wd[1] + p[1], wd[2] + p[2]});
            double gm = num_.value(Vec3{wd[0] - p[0], wd[1] - p[1], wd[2] - p[2]});
            double s = gp - a0, d = -gm - a0; // a2 + a1, a2 - a1
            return std::array<double, 4>{0.5 * (s + d), 0.5 * (s - d), a0, 0};
        };
        auto disc = [&](double phi) {
            auto a = coeffs(phi);
            return a[1] * a[1] - 4 * a[0] * a[2];
        };
        const int N = 20000;
        const double pi = std::acos(-1.0);
        Vec3 half = point_at(0.5, 0);
        for (int i = 0; i < N; ++i) {
            double lo = pi * i / N, hi = pi * (i + 1) / N;
            if ((disc(lo) < 0) == (disc(hi) < 0))
                continue;
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (lo + hi);
                ((disc(mid) < 0) == (disc(lo) < 0) ? lo : hi) = mid;
            }
            auto a = coeffs(lo);
            if (std::abs(a[0]) < 1e-14)
                continue;
            double mu = -a[1] / (2 * a[0]);
            Vec3 p{std::cos(lo) * e1[0] + std::sin(lo) * e2[0], std::cos(lo) * e1[1] + std::sin(lo) * e2[1],
                   std::cos(lo) * e1[2] + std::sin(lo) * e2[2]};
            Vec3 t = detail::unit(Vec3{mu * wd[0] + p[0], mu * wd[1] + p[1], mu * wd[2] + p[2]});
            auto near = [&](const Vec3& a, const Vec3& b) {
                return std::min(std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]),
                                std::hypot(a[0] + b[0], a[1] + b[1], a[2] + b[2])) < 1e-6;
            };
            if (near(t, half) || near(t, o_))
                continue;
            Vec3 gt = num_.gradient(t);
            if (std::hypot(gt[0], gt[1], gt[2]) < 1e-8)
                continue;
            try {
                oval_ = solve_multiple(refine(t), 2, identity());
                return;
            } catch (const Error&) {
            }
        }
    }
};

enum class CosetVariant { Cyclic, HalfTimesZ2 };

struct SynthesisResult {
    PointSet points;
    std::vector<BigVec3> coords;
    double max_parameter_defect = 0;
};

// H + x with 4x = omega - h; h is the element of H with index h_index.
inline SynthesisResult synthesize_coset(const CubicHost& host, int n, CosetVariant variant, int h_index = 0)
{
    if (n < 3)
        throw Error(ErrorKind::InvalidParameters, "coset order must be at least 3");
    if (variant == CosetVariant::HalfTimesZ2 && n % 4 != 0)
        throw Error(ErrorKind::InvalidParameters, "the Z2 variant needs n divisible by 4");
    CubicParametrization par(host);
    if (variant == CosetVariant::HalfTimesZ2 && !par.has_oval())
        throw Error(ErrorKind::HostUnsupported, "host has a single real component");
    const BigVec3 o = par.identity();
    const int cyc = variant == CosetVariant::Cyclic ? n : n / 2;
    BigVec3 g = par.solve_multiple(par.refine(par.point_at(1.0 / cyc, 0)), cyc, o);
    std::vector<BigVec3> H;
    BigVec3 cur = o;
    for (int k = 0; k < cyc; ++k) {
        H.push_back(cur);
        cur = par.add(cur, g);
    }
    std::vector<std::pair<int, int>> labels;
    for (int k = 0; k < cyc; ++k)
        labels.push_back({k, 0});
    if (variant == CosetVariant::HalfTimesZ2) {
        const BigVec3& tau = par.oval_base();
        for (int k = 0; k < cyc; ++k) {
            H.push_back(par.add(H[static_cast<std::size_t>(k)], tau));
            labels.push_back({k, 1});
        }
    }
    if (h_index < 0 || h_index >= static_cast<int>(H.size()))
        throw Error(ErrorKind::InvalidParameters, "h index out of range");
    // omega - h = omega * ... : the inverse of h is h * omega
    BigVec3 target = par.add(par.omega(), par.numeric().star(H[static_cast<std::size_t>(h_index)], par.omega()));
    auto [ut, ct] = par.parameter(CubicParametrization::lower(target));
    if (ct != 0)
        throw Error(ErrorKind::HostUnsupported, "omega - h lies on the oval; no real quarter exists");
    // among the four real quarters take the first whose coset misses o
    double ux = ut / 4;
    for (int j = 0; j < 4; ++j) {
        double c = (ut + j) / 4 * cyc;
        if (std::abs(c - std::round(c)) > 1e-6) {
            ux = (ut + j) / 4;
            break;
        }
    }
    BigVec3 x = par.solve_multiple(par.refine(par.point_at(ux, 0)), 4, target);

    SynthesisResult res;
    const Rational rad = Rational(1) / (Integer(1) << 200);
    res.points.meta = json{{"group", "cubic"}, {"n", n}, {"variant", variant == CosetVariant::Cyclic ? "cyclic" : "Z_half_times_Z2"},
                           {"h", h_index}, {"host", curve_to_json(host.poly())}};
    for (std::size_t i = 0; i < H.size(); ++i) {
        BigVec3 p = par.add(H[i], x);
        if (abs(par.numeric().value(p)) > pow(BigFloat(2), -200))
            throw Error(ErrorKind::ToleranceExceeded, "synthesized point is off the host");
        if (abs(p[2]) < BigFloat(1e-30))
            throw Error(ErrorKind::HostUnsupported, "coset contains the point at infinity; choose another h");
        res.coords.push_back(p);
        Rational px = detail::to_rational(p[0] / p[2]), py = detail::to_rational(p[1] / p[2]);
        std::string tag = "k=" + std::to_string(labels[i].first) + ",component=" + std::to_string(labels[i].second);
        res.points.points.push_back({RealExpr::ball(px, rad), RealExpr::ball(py, rad), tag});
    }
    // parameter check: consecutive points differ by u(g)
    double ug = par.parameter(CubicParametrization::lower(g)).first;
    for (int k = 0; k + 1 < cyc; ++k) {
        double a = par.parameter(CubicParametrization::lower(res.coords[static_cast<std::size_t>(k)])).first;
        double b = par.parameter(CubicParametrization::lower(res.coords[static_cast<std::size_t>(k + 1)])).first;
        double d = b - a - ug;
        d -= std::round(d);
        res.max_parameter_defect = std::max(res.max_parameter_defect, std::abs(d));
    }
    if (res.max_parameter_defect > 1e-9)
        throw Error(ErrorKind::ToleranceExceeded, "parameter additivity violated");
    return res;
}

// Simplest rationals inside the balls, kept only if every point lies on the host exactly.
inline std::optional<PointSet> rationalize(const CubicHost& host, const PointSet& s)
{
    PointSet out;
    out.meta = s.meta;
    for (const auto& p : s.points) {
        if (p.x.kind() != NodeKind::Ball || p.y.kind() != NodeKind::Ball)
            return std::nullopt;
        const auto& nx = *p.x.node();
        const auto& ny = *p.y.node();
        Rational x = simplest_between(nx.value - nx.rad, nx.value + nx.rad);
        Rational y = simplest_between(ny.value - ny.rad, ny.value + ny.rad);
        if (host.evaluate<Rational>({x, y, Rational(1)}) != 0)
            return std::nullopt;
        out.points.push_back({RealExpr(x), RealExpr(y), p.tag});
    }
    out.meta["rationalized"] = true;
    return out;
}

} // namespace ordcirc
