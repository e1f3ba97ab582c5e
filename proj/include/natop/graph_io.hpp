#pragma once

#include <string>

#include <json.hpp>

#include "natop/lincomb.hpp"

namespace natop {

// Deterministic text form: vertex list then edge list in canonical order.
std::string graph_text(const CanonGraph& g);

nlohmann::json graph_json(const CanonGraph& g);
CanonGraph graph_from_json(const nlohmann::json& j);

nlohmann::json lincomb_json(const LinComb& x);
LinComb lincomb_from_json(const nlohmann::json& j);

std::string kind_name(VKind k);
VKind kind_from_name(const std::string& s);

}  // namespace natop
