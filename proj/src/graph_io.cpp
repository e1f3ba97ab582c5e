#include "natop/graph_io.hpp"

#include <stdexcept>

namespace natop {

Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

std::string kind_name(VKind k) {
  switch (k) {
    case VKind::Anchor: return "anchor";
    case VKind::Black: return "black";
    case VKind::Nabla: return "nabla";
    case VKind::White: return "white";
    case VKind::DNode: return "dnode";
    case VKind::VNode: return "vnode";
  }
  return "?";
}

VKind kind_from_name(const std::string& s) {
  if (s == "anchor") return VKind::Anchor;
  if (s == "black") return VKind::Black;
  if (s == "nabla") return VKind::Nabla;
  if (s == "white") return VKind::White;
  if (s == "dnode") return VKind::DNode;
  if (s == "vnode") return VKind::VNode;
  throw std::invalid_argument("unknown vertex kind: " + s);
}

std::string graph_text(const CanonGraph& cg) {
  Graph g = cg.decode();
  std::string out = "graph " + std::to_string(g.vertex_count()) + "\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Vertex& x = g.vertex(v);
    out += "v " + std::to_string(v) + " " + kind_name(x.kind) + " " + std::to_string(x.arity);
    if (x.label) out += " #" + std::to_string(x.label);
    out += "\n";
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.out(v))
      out += "e " + std::to_string(v) + " -> " + std::to_string(g.out(v)->v) + "." +
             std::to_string(g.out(v)->g) + "\n";
  return out;
}

nlohmann::json graph_json(const CanonGraph& cg) {
  Graph g = cg.decode();
  nlohmann::json verts = nlohmann::json::array();
  for (const Vertex& x : g.vertices()) {
    nlohmann::json v;
    v["kind"] = kind_name(x.kind);
    v["arity"] = x.arity;
    if (x.label) v["label"] = x.label;
    verts.push_back(v);
  }
  nlohmann::json edges = nlohmann::json::array();
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.out(v)) edges.push_back({v, g.out(v)->v, g.out(v)->g});
  return nlohmann::json{{"vertices", verts}, {"edges", edges}};
}

CanonGraph graph_from_json(const nlohmann::json& j) {
  Graph g;
  for (const auto& v : j.at("vertices"))
    g.add_vertex(kind_from_name(v.at("kind").get<std::string>()), v.at("arity").get<int>(),
                 v.contains("label") ? v.at("label").get<int>() : 0);
  for (const auto& e : j.at("edges"))
    g.set_out(e.at(0).get<int>(), Target{e.at(1).get<int>(), e.at(2).get<int>()});
  CanonResult r = canonicalize(g);
  if (r.zero) throw std::invalid_argument("graph_from_json: graph vanishes by symmetry");
  return r.graph;
}

nlohmann::json lincomb_json(const LinComb& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [g, c] : x.terms())
    terms.push_back(nlohmann::json{{"coef", rat_str(c)}, {"graph", graph_json(g)}});
  return nlohmann::json{{"terms", terms}};
}

LinComb lincomb_from_json(const nlohmann::json& j) {
  LinComb x;
  for (const auto& t : j.at("terms"))
    x.add(graph_from_json(t.at("graph")), rat_parse(t.at("coef").get<std::string>()));
  return x;
}

}  // namespace natop
