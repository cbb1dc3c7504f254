#pragma once

#include <nlohmann/json.hpp>

#include "ordcirc/exact/real_expr.hpp"

namespace ordcirc {

using json = nlohmann::ordered_json;

inline json expr_to_json(const RealExpr& e)
{
    const Node& n = *e.node();
    auto sub = [](const NodePtr& p) { return expr_to_json(RealExpr(p)); };
    switch (n.kind) {
    case NodeKind::Rational: return json{{"rat", format_rational(n.value)}};
    case NodeKind::Cos: return json{{"cos", n.angle.str()}};
    case NodeKind::Sin: return json{{"sin", n.angle.str()}};
    case NodeKind::Neg: return json{{"neg", sub(n.a)}};
    case NodeKind::Sum: return json{{"sum", json::array({sub(n.a), sub(n.b)})}};
    case NodeKind::Prod: return json{{"prod", json::array({sub(n.a), sub(n.b)})}};
    case NodeKind::Quot: return json{{"quot", json::array({sub(n.a), sub(n.b)})}};
    case NodeKind::Sqrt: return json{{"sqrt", sub(n.a)}};
    case NodeKind::Ball:
        return json{{"ball", json{{"mid", format_rational(n.value)}, {"rad", format_rational(n.rad)}}}};
    }
    return json();
}

inline RealExpr expr_from_json(const json& j)
{
    auto bad = [&](const std::string& why) { return Error(ErrorKind::ParseError, why + ": " + j.dump()); };
    if (j.is_string())
        return RealExpr(parse_rational(j.get<std::string>()));
    if (j.is_number_integer())
        return RealExpr(Rational(j.get<long>()));
    if (!j.is_object() || j.size() != 1)
        throw bad("expression must be a single-key object");
    const auto& [key, v] = *j.items().begin();
    auto pair = [&]() {
        if (!v.is_array() || v.size() != 2)
            throw bad("'" + key + "' expects two operands");
        return std::pair{expr_from_json(v[0]), expr_from_json(v[1])};
    };
    if (key == "rat")
        return RealExpr(parse_rational(v.get<std::string>()));
    if (key == "cos")
        return RealExpr::cos(Angle::parse(v.get<std::string>()));
    if (key == "sin")
        return RealExpr::sin(Angle::parse(v.get<std::string>()));
    if (key == "neg")
        return -expr_from_json(v);
    if (key == "sqrt")
        return RealExpr::sqrt(expr_from_json(v));
    if (key == "sum") {
        auto [a, b] = pair();
        return a + b;
    }
    if (key == "prod") {
        auto [a, b] = pair();
        return a * b;
    }
    if (key == "quot") {
        auto [a, b] = pair();
        return a / b;
    }
    if (key == "ball") {
        if (!v.is_object() || !v.contains("mid") || !v.contains("rad"))
            throw bad("'ball' expects mid and rad");
        return RealExpr::ball(parse_rational(v["mid"].get<std::string>()), parse_rational(v["rad"].get<std::string>()));
    }
    throw bad("unknown expression key '" + key + "'");
}

} // namespace ordcirc
