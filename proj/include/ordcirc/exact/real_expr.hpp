#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ordcirc/error.hpp"
#include "ordcirc/exact/cyclotomic.hpp"
#include "ordcirc/exact/interval.hpp"
#include "ordcirc/exact/rational.hpp"

namespace ordcirc {

enum class NodeKind { Rational, Cos, Sin, Neg, Sum, Prod, Quot, Sqrt, Ball };

struct Node {
    NodeKind kind;
    std::uint64_t id;
    Rational value; // literal, or ball midpoint
    Rational rad;   // ball radius
    Angle angle;
    std::shared_ptr<const Node> a, b;
    std::int64_t trig_lcm = 1; // lcm of trig denominators below this node
    bool has_ball = false;
    int depth = 0;
};

using NodePtr = std::shared_ptr<const Node>;

namespace detail {

inline std::uint64_t next_node_id()
{
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

inline std::shared_ptr<Node> make_node(NodeKind k, NodePtr a = nullptr, NodePtr b = nullptr)
{
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->id = next_node_id();
    n->a = std::move(a);
    n->b = std::move(b);
    for (const Node* c : {n->a.get(), n->b.get()}) {
        if (!c)
            continue;
        n->trig_lcm = std::lcm(n->trig_lcm, c->trig_lcm);
        n->has_ball = n->has_ball || c->has_ball;
        n->depth = std::max(n->depth, c->depth + 1);
    }
    return n;
}

} // namespace detail

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };
enum class SignMethod { ExactRational, IntervalAtPrecision, SymbolicZero };

struct SignCertificate {
    Sign sign;
    SignMethod method;
    long precision_used = 0;
};

inline const char* to_string(SignMethod m)
{
    switch (m) {
    case SignMethod::ExactRational: return "ExactRational";
    case SignMethod::IntervalAtPrecision: return "IntervalAtPrecision";
    case SignMethod::SymbolicZero: return "SymbolicZero";
    }
    return "?";
}

// Bits; read from ORDINARY_PRECISION_CAP, default 1024.
inline long precision_cap()
{
    if (const char* s = std::getenv("ORDINARY_PRECISION_CAP")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && v >= 64)
            return v;
    }
    return 1024;
}

class RealExpr;
SignCertificate certified_sign(const RealExpr& e);

class RealExpr {
public:
    RealExpr() : RealExpr(Rational(0)) {}
    RealExpr(const Rational& q)
    {
        auto n = detail::make_node(NodeKind::Rational);
        n->value = q;
        n->value.canonicalize(); // Rational(a, b) is not reduced on construction
        node_ = n;
    }
    RealExpr(long v) : RealExpr(Rational(v)) {}
    RealExpr(int v) : RealExpr(Rational(v)) {}
    explicit RealExpr(NodePtr n) : node_(std::move(n)) {}

    static RealExpr cos(const Angle& a) { return trig(NodeKind::Cos, a); }
    static RealExpr sin(const Angle& a) { return trig(NodeKind::Sin, a); }

    // Numeric value known to lie within [mid - rad, mid + rad].
    static RealExpr ball(const Rational& mid, const Rational& rad)
    {
        if (rad < 0)
            throw Error(ErrorKind::InvalidParameters, "negative ball radius");
        if (rad == 0)
            return RealExpr(mid);
        auto n = detail::make_node(NodeKind::Ball);
        n->value = mid;
        n->rad = rad;
        n->has_ball = true;
        return RealExpr(n);
    }

    static RealExpr sqrt(const RealExpr& e);

    const NodePtr& node() const { return node_; }
    NodeKind kind() const { return node_->kind; }
    bool is_rational() const { return node_->kind == NodeKind::Rational; }
    const Rational& rational() const { return node_->value; }
    std::uint64_t id() const { return node_->id; }

    friend RealExpr operator-(const RealExpr& e)
    {
        if (e.is_rational())
            return RealExpr(Rational(-e.rational()));
        if (e.kind() == NodeKind::Neg)
            return RealExpr(e.node_->a);
        return RealExpr(detail::make_node(NodeKind::Neg, e.node_));
    }
    friend RealExpr operator+(const RealExpr& x, const RealExpr& y)
    {
        if (x.is_rational() && y.is_rational())
            return RealExpr(Rational(x.rational() + y.rational()));
        if (x.is_rational() && x.rational() == 0)
            return y;
        if (y.is_rational() && y.rational() == 0)
            return x;
        return RealExpr(detail::make_node(NodeKind::Sum, x.node_, y.node_));
    }
    friend RealExpr operator-(const RealExpr& x, const RealExpr& y) { return x + (-y); }
    friend RealExpr operator*(const RealExpr& x, const RealExpr& y)
    {
        if (x.is_rational() && y.is_rational())
            return RealExpr(Rational(x.rational() * y.rational()));
        for (auto [p, q] : {std::pair{&x, &y}, std::pair{&y, &x}}) {
            if (!p->is_rational())
                continue;
            if (p->rational() == 0)
                return RealExpr(0);
            if (p->rational() == 1)
                return *q;
            if (p->rational() == -1)
                return -*q;
        }
        return RealExpr(detail::make_node(NodeKind::Prod, x.node_, y.node_));
    }
    friend RealExpr operator/(const RealExpr& x, const RealExpr& y);

    RealExpr& operator+=(const RealExpr& o) { return *this = *this + o; }
    RealExpr& operator-=(const RealExpr& o) { return *this = *this - o; }
    RealExpr& operator*=(const RealExpr& o) { return *this = *this * o; }

    std::string str() const
    {
        std::ostringstream os;
        print(os, *node_);
        return os.str();
    }

private:
    static RealExpr trig(NodeKind k, const Angle& a)
    {
        auto n = detail::make_node(k);
        n->angle = a;
        n->trig_lcm = a.den();
        return RealExpr(n);
    }

    static void print(std::ostream& os, const Node& n)
    {
        switch (n.kind) {
        case NodeKind::Rational: os << format_rational(n.value); break;
        case NodeKind::Cos: os << "cos(" << n.angle.str() << ")"; break;
        case NodeKind::Sin: os << "sin(" << n.angle.str() << ")"; break;
        case NodeKind::Ball: os << "ball(" << format_rational(n.value) << "," << format_rational(n.rad) << ")"; break;
        case NodeKind::Neg: os << "-("; print(os, *n.a); os << ")"; break;
        case NodeKind::Sqrt: os << "sqrt("; print(os, *n.a); os << ")"; break;
        case NodeKind::Sum:
        case NodeKind::Prod:
        case NodeKind::Quot:
            os << "(";
            print(os, *n.a);
            os << (n.kind == NodeKind::Sum ? " + " : n.kind == NodeKind::Prod ? " * " : " / ");
            print(os, *n.b);
            os << ")";
            break;
        }
    }

    NodePtr node_;
};

namespace detail {

struct NeedPrecision {};

struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, long>& k) const
    {
        return std::hash<std::uint64_t>()(k.first * 1000003u ^ static_cast<std::uint64_t>(k.second));
    }
};

inline std::unordered_map<std::pair<std::uint64_t, long>, Interval, PairHash>& interval_cache()
{
    thread_local std::unordered_map<std::pair<std::uint64_t, long>, Interval, PairHash> cache;
    if (cache.size() > 400000)
        cache.clear();
    return cache;
}

// Enclosure at working precision w; throws NeedPrecision when a divisor straddles zero.
inline Interval eval_raw(const Node& n, long w)
{
    if (n.kind == NodeKind::Rational)
        return Interval::from_rational(n.value, w);
    auto& cache = interval_cache();
    auto key = std::make_pair(n.id, w);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    Interval r(w);
    switch (n.kind) {
    case NodeKind::Rational: break;
    case NodeKind::Cos: r = Interval::trig(n.angle, false, w); break;
    case NodeKind::Sin: r = Interval::trig(n.angle, true, w); break;
    case NodeKind::Ball: r = Interval::ball(n.value, n.rad, w); break;
    case NodeKind::Neg: r = -eval_raw(*n.a, w); break;
    case NodeKind::Sum: r = add(eval_raw(*n.a, w), eval_raw(*n.b, w), w); break;
    case NodeKind::Prod: r = mul(eval_raw(*n.a, w), eval_raw(*n.b, w), w); break;
    case NodeKind::Quot: {
        Interval d = eval_raw(*n.b, w);
        if (d.contains_zero())
            throw NeedPrecision{};
        r = div(eval_raw(*n.a, w), d, w);
        break;
    }
    case NodeKind::Sqrt: {
        Interval a = eval_raw(*n.a, w);
        if (mpfr_sgn(a.hi()) < 0)
            throw Error(ErrorKind::NegativeSqrt, "square root of a negative value");
        r = sqrt(a, w);
        break;
    }
    }
    cache.emplace(key, r);
    return r;
}

inline long division_limit() { return std::max(4 * precision_cap(), 4096L); }

// Raw enclosure, raising the working precision until every divisor is separated from zero.
inline Interval eval_working(const Node& n, long w)
{
    for (;;) {
        try {
            return eval_raw(n, w);
        } catch (const NeedPrecision&) {
            if (w >= division_limit())
                throw Error(ErrorKind::DivisionNearZero, "divisor not separated from zero");
            w *= 2;
        }
    }
}

inline std::map<int, CyclotomicField>& field_cache()
{
    thread_local std::map<int, CyclotomicField> fields;
    return fields;
}

inline const CyclotomicField& field(int m)
{
    auto& f = field_cache();
    auto it = f.find(m);
    if (it == f.end())
        it = f.emplace(m, CyclotomicField(m)).first;
    return it->second;
}

using CycCache = std::unordered_map<std::pair<std::uint64_t, long>, std::optional<QPoly>, PairHash>;

inline CycCache& cyc_cache()
{
    thread_local CycCache cache;
    if (cache.size() > 200000)
        cache.clear();
    return cache;
}

inline std::optional<QPoly> cyc_eval(const Node& n, const CyclotomicField& F)
{
    if (n.kind == NodeKind::Rational)
        return F.constant(n.value);
    auto key = std::make_pair(n.id, static_cast<long>(F.order()));
    auto& cache = cyc_cache();
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    std::optional<QPoly> r;
    switch (n.kind) {
    case NodeKind::Rational:
    case NodeKind::Ball: break;
    case NodeKind::Cos: r = F.cos_of(n.angle); break;
    case NodeKind::Sin: r = F.sin_of(n.angle); break;
    case NodeKind::Neg:
        if (auto a = cyc_eval(*n.a, F))
            r = F.neg(*a);
        break;
    case NodeKind::Sum:
        if (auto a = cyc_eval(*n.a, F))
            if (auto b = cyc_eval(*n.b, F))
                r = F.add(*a, *b);
        break;
    case NodeKind::Prod:
        if (auto a = cyc_eval(*n.a, F))
            if (auto b = cyc_eval(*n.b, F))
                r = F.mul(*a, *b);
        break;
    case NodeKind::Quot:
        if (auto a = cyc_eval(*n.a, F))
            if (auto b = cyc_eval(*n.b, F))
                if (auto bi = F.inv(*b))
                    r = F.mul(*a, *bi);
        break;
    case NodeKind::Sqrt:
        if (auto a = cyc_eval(*n.a, F))
            if (auto q = CyclotomicField::as_rational(*a))
                if (auto s = rational_sqrt(*q))
                    r = F.constant(*s);
        break;
    }
    cache.emplace(key, r);
    return r;
}

} // namespace detail

// Exact value in Q(zeta_M), M = lcm(trig denominators, 4); empty if the tree leaves that field.
inline std::optional<QPoly> cyclotomic_value(const RealExpr& e, int* order = nullptr)
{
    const Node& n = *e.node();
    if (n.has_ball)
        return std::nullopt;
    std::int64_t m = std::lcm<std::int64_t>(n.trig_lcm, 4);
    if (m > 4096)
        return std::nullopt;
    if (order)
        *order = static_cast<int>(m);
    return detail::cyc_eval(n, detail::field(static_cast<int>(m)));
}

inline std::optional<Rational> exact_rational_value(const RealExpr& e)
{
    if (e.is_rational())
        return e.rational();
    auto v = cyclotomic_value(e);
    if (!v)
        return std::nullopt;
    return CyclotomicField::as_rational(*v);
}

// Enclosure of width <= 2^(1-p) * max(1,|v|); nested in p.
inline Interval eval_interval(const RealExpr& e, long precision)
{
    if (precision < 8)
        throw Error(ErrorKind::InvalidParameters, "precision below 8 bits");
    const Node& n = *e.node();
    long mag = detail::eval_working(n, 64).magnitude_exponent();
    long grid = mag - precision - 3;
    long w = precision + 32;
    for (;;) {
        Interval raw = detail::eval_working(n, w);
        if (raw.width_exponent() < grid - 1)
            return raw.snapped(grid, 2, precision + mag + 16);
        if (w > 64 * (precision + 64))
            throw Error(ErrorKind::PrecisionExhausted, "interval refinement stalled");
        w *= 2;
    }
}

inline SignCertificate certified_sign(const RealExpr& e)
{
    if (e.is_rational())
        return {static_cast<Sign>(sgn(e.rational())), SignMethod::ExactRational, 0};
    const long cap = precision_cap();
    std::vector<long> ladder;
    for (long p : {64L, 128L, 256L, 1024L})
        if (p <= cap)
            ladder.push_back(p);
    if (cap > 1024)
        ladder.push_back(cap);
    for (long p : ladder) {
        Interval iv = detail::eval_working(*e.node(), p);
        if (int s = iv.certain_sign())
            return {static_cast<Sign>(s), SignMethod::IntervalAtPrecision, p};
    }
    if (auto v = cyclotomic_value(e)) {
        if (CyclotomicField::is_zero(*v))
            return {Sign::Zero, SignMethod::SymbolicZero, ladder.empty() ? 0 : ladder.back()};
        if (auto q = CyclotomicField::as_rational(*v))
            return {static_cast<Sign>(sgn(*q)), SignMethod::ExactRational, ladder.back()};
    }
    throw Error(ErrorKind::PrecisionExhausted, "sign undecided at " + std::to_string(cap) + " bits");
}

inline bool certified_zero(const RealExpr& e) { return certified_sign(e).sign == Sign::Zero; }

inline RealExpr operator/(const RealExpr& x, const RealExpr& y)
{
    if (y.is_rational()) {
        if (y.rational() == 0)
            throw Error(ErrorKind::DivisionNearZero, "division by zero");
        if (x.is_rational())
            return RealExpr(Rational(x.rational() / y.rational()));
        if (y.rational() == 1)
            return x;
    } else {
        SignCertificate c;
        try {
            c = certified_sign(y);
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::PrecisionExhausted)
                throw Error(ErrorKind::DivisionNearZero, "divisor not certified nonzero");
            throw;
        }
        if (c.sign == Sign::Zero)
            throw Error(ErrorKind::DivisionNearZero, "divisor is exactly zero");
    }
    if (x.is_rational() && x.rational() == 0)
        return RealExpr(0);
    return RealExpr(detail::make_node(NodeKind::Quot, x.node(), y.node()));
}

inline RealExpr RealExpr::sqrt(const RealExpr& e)
{
    if (e.is_rational()) {
        if (e.rational() < 0)
            throw Error(ErrorKind::NegativeSqrt, "square root of " + format_rational(e.rational()));
        if (auto s = rational_sqrt(e.rational()))
            return RealExpr(*s);
    } else {
        SignCertificate c;
        try {
            c = certified_sign(e);
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::PrecisionExhausted)
                throw Error(ErrorKind::NegativeSqrt, "square root argument not certified nonnegative");
            throw;
        }
        if (c.sign == Sign::Negative)
            throw Error(ErrorKind::NegativeSqrt, "square root of a negative value");
        if (c.sign == Sign::Zero)
            return RealExpr(0);
    }
    return RealExpr(detail::make_node(NodeKind::Sqrt, e.node()));
}

inline double to_double(const RealExpr& e)
{
    if (e.is_rational())
        return e.rational().get_d();
    return detail::eval_working(*e.node(), 64).mid_double();
}

inline int compare(const RealExpr& a, const RealExpr& b) { return static_cast<int>(certified_sign(a - b).sign); }

} // namespace ordcirc
