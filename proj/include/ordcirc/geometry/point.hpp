#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ordcirc/exact/expr_json.hpp"
#include "ordcirc/exact/real_expr.hpp"

namespace ordcirc {

struct Point {
    RealExpr x;
    RealExpr y;
    std::string tag;

    Point() = default;
    Point(RealExpr x_, RealExpr y_, std::string tag_ = {}) : x(std::move(x_)), y(std::move(y_)), tag(std::move(tag_)) {}

    bool is_rational() const { return x.is_rational() && y.is_rational(); }
};

struct PointSet {
    std::vector<Point> points;
    json meta = json::object();

    std::size_t size() const { return points.size(); }
    const Point& operator[](std::size_t i) const { return points[i]; }
};

inline json point_to_json(const Point& p)
{
    json j{{"x", expr_to_json(p.x)}, {"y", expr_to_json(p.y)}};
    if (!p.tag.empty())
        j["tag"] = p.tag;
    return j;
}

inline Point point_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("x") || !j.contains("y"))
        throw Error(ErrorKind::ParseError, "point needs x and y: " + j.dump());
    Point p(expr_from_json(j["x"]), expr_from_json(j["y"]));
    if (j.contains("tag"))
        p.tag = j["tag"].get<std::string>();
    return p;
}

inline json pointset_to_json(const PointSet& s)
{
    json pts = json::array();
    for (const auto& p : s.points)
        pts.push_back(point_to_json(p));
    return json{{"points", pts}, {"meta", s.meta}};
}

inline PointSet pointset_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw Error(ErrorKind::ParseError, "point set needs a 'points' array");
    PointSet s;
    for (const auto& p : j["points"])
        s.points.push_back(point_from_json(p));
    if (j.contains("meta"))
        s.meta = j["meta"];
    return s;
}

} // namespace ordcirc
