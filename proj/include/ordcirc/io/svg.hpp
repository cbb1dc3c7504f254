#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ordcirc/spectrum/spectrum.hpp"

namespace ordcirc {

struct SvgOptions {
    int size = 600;       // pixels, square viewport
    double margin = 0.15; // fraction of the bounding box added on each side
    double dot_radius = 3;
};

namespace detail {

inline std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v == 0 ? 0.0 : v); // no "-0.000"
    return buf;
}

} // namespace detail

// Points as dots, circles and lines as strokes; coordinates are rendered in double precision.
inline std::string render_svg(const PointSet& P, const std::vector<GeneralisedCircle>& circles, const SvgOptions& opt = {})
{
    std::vector<std::pair<double, double>> xy;
    for (const auto& p : P.points)
        xy.push_back({to_double(p.x), to_double(p.y)});
    double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
    if (!xy.empty()) {
        x0 = x1 = xy[0].first;
        y0 = y1 = xy[0].second;
        for (auto [x, y] : xy) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    double span = std::max({x1 - x0, y1 - y0, 1e-9});
    double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
    double half = span * (0.5 + opt.margin);
    double scale = opt.size / (2 * half);
    auto X = [&](double x) { return (x - cx + half) * scale; };
    auto Y = [&](double y) { return (cy + half - y) * scale; }; // y up

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.size) + "\" height=\"" +
           std::to_string(opt.size) + "\" viewBox=\"0 0 " + std::to_string(opt.size) + " " + std::to_string(opt.size) +
           "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<g fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\">\n";
    for (const auto& g : circles) {
        double t = to_double(g.t), l1 = to_double(g.l1), l2 = to_double(g.l2), l0 = to_double(g.l0);
        if (g.is_line()) {
            // clip l1 x + l2 y + l0 = 0 to the viewport square
            double bx0 = cx - half, bx1 = cx + half, by0 = cy - half, by1 = cy + half;
            std::vector<std::pair<double, double>> hits;
            if (std::abs(l2) > 1e-15)
                for (double x : {bx0, bx1}) {
                    double y = -(l1 * x + l0) / l2;
                    if (y >= by0 && y <= by1)
                        hits.push_back({x, y});
                }
            if (std::abs(l1) > 1e-15)
                for (double y : {by0, by1}) {
                    double x = -(l2 * y + l0) / l1;
                    if (x >= bx0 && x <= bx1)
                        hits.push_back({x, y});
                }
            if (hits.size() < 2)
                continue;
            std::sort(hits.begin(), hits.end());
            out += "<line x1=\"" + detail::fmt(X(hits.front().first)) + "\" y1=\"" + detail::fmt(Y(hits.front().second)) +
                   "\" x2=\"" + detail::fmt(X(hits.back().first)) + "\" y2=\"" + detail::fmt(Y(hits.back().second)) +
                   "\"/>\n";
        } else {
            double ox = -l1 / (2 * t), oy = -l2 / (2 * t);
            double r = std::sqrt(std::max(0.0, ox * ox + oy * oy - l0 / t));
            out += "<circle cx=\"" + detail::fmt(X(ox)) + "\" cy=\"" + detail::fmt(Y(oy)) + "\" r=\"" +
                   detail::fmt(r * scale) + "\"/>\n";
        }
    }
    out += "</g>\n<g fill=\"black\">\n";
    for (auto [x, y] : xy)
        out += "<circle cx=\"" + detail::fmt(X(x)) + "\" cy=\"" + detail::fmt(Y(y)) + "\" r=\"" +
               detail::fmt(opt.dot_radius) + "\"/>\n";
    out += "</g>\n</svg>\n";
    return out;
}

// Circles with exactly `members` points (3 for ordinary, 4 for 4-point).
inline std::vector<GeneralisedCircle> circles_with_members(const PointSet& P, std::size_t members)
{
    long undecided = 0;
    auto recs = enumerate_circles(P, &undecided);
    if (undecided)
        throw Error(ErrorKind::PredicateUndecided, std::to_string(undecided) + " undecided predicates");
    std::vector<GeneralisedCircle> out;
    for (const auto& c : recs)
        if (c.members.size() == members)
            out.push_back(circle_through(P[c.members[0]], P[c.members[1]], P[c.members[2]]));
    return out;
}

} // namespace ordcirc
