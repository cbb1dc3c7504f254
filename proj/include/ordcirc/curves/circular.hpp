#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>

#include "ordcirc/curves/poly.hpp"

namespace ordcirc {

// Smallest order of a partial derivative not vanishing at [px:py:pz].
template <class T>
int multiplicity_at(const CurvePoly& f, const T& px, const T& py, const T& pz)
{
    std::vector<CurvePoly> layer{f};
    for (int order = 0; order <= f.degree(); ++order) {
        for (const auto& g : layer) {
            T v = g.template evaluate<T>(px, py, pz);
            bool zero;
            if constexpr (std::is_same_v<T, Gaussian>)
                zero = v.is_zero();
            else
                zero = v == 0;
            if (!zero)
                return order;
        }
        std::vector<CurvePoly> next;
        std::set<std::string> seen;
        for (const auto& g : layer)
            for (int v = 0; v < 3; ++v) {
                CurvePoly d = g.derivative(v);
                if (d.is_zero())
                    continue;
                if (seen.insert(d.canonical().str()).second)
                    next.push_back(d);
            }
        layer = std::move(next);
        if (layer.empty())
            break;
    }
    return f.degree();
}

inline std::pair<int, int> multiplicity_at_circular_points(const CurvePoly& f)
{
    if (f.is_zero())
        throw Error(ErrorKind::InvalidParameters, "zero polynomial");
    Gaussian i(0, 1), one(1), zero(0);
    return {multiplicity_at(f, i, one, zero), multiplicity_at(f, -i, one, zero)};
}

struct CircularClass {
    enum Kind { GeneralisedCircleClass, NonCircularConic, CircularCubic, BicircularQuartic, Other } kind;
    int degree = 0;
    int mult_alpha = 0;
    int mult_beta = 0;

    std::string name() const
    {
        switch (kind) {
        case GeneralisedCircleClass: return "GeneralisedCircle";
        case NonCircularConic: return "NonCircularConic";
        case CircularCubic: return "CircularCubic";
        case BicircularQuartic: return "BicircularQuartic";
        case Other: break;
        }
        return "Other(" + std::to_string(degree) + "," + std::to_string(mult_alpha) + "," + std::to_string(mult_beta) + ")";
    }
};

inline CircularClass circular_class(const CurvePoly& f)
{
    if (f.degree() > 4)
        throw Error(ErrorKind::UnsupportedDegree, "circular class is defined here for degree <= 4");
    auto [ma, mb] = multiplicity_at_circular_points(f);
    int m = std::min(ma, mb);
    CircularClass c{CircularClass::Other, f.degree(), ma, mb};
    switch (f.degree()) {
    case 1: c.kind = CircularClass::GeneralisedCircleClass; break;
    case 2: c.kind = m >= 1 ? CircularClass::GeneralisedCircleClass : CircularClass::NonCircularConic; break;
    case 3: c.kind = m >= 1 ? CircularClass::CircularCubic : CircularClass::Other; break;
    case 4: c.kind = m >= 2 ? CircularClass::BicircularQuartic : CircularClass::Other; break;
    default: break;
    }
    return c;
}

// Smallest k with the curve inside a k-circular curve of degree 2k, from degree and multiplicity.
inline int circular_degree(const CurvePoly& f)
{
    auto [ma, mb] = multiplicity_at_circular_points(f);
    int m = std::min(ma, mb);
    int d = f.degree();
    // adding j copies of the line at infinity raises degree and multiplicity by j
    for (int k = 1; k <= d; ++k) {
        int j = 2 * k - d;
        if (j >= 0 && m + j >= k)
            return k;
    }
    return d;
}

} // namespace ordcirc
