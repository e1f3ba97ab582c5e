#include "natop/graph.hpp"

#include <algorithm>
#include <map>

namespace natop {

int Graph::add_vertex(VKind kind, int arity, int label) {
  verts_.push_back(Vertex{kind, arity, label});
  out_.emplace_back();
  return static_cast<int>(verts_.size()) - 1;
}

int Graph::group_count(int v) const {
  const Vertex& x = verts_[v];
  switch (x.kind) {
    case VKind::Nabla:
      return 2;  // derivative block (possibly empty) and the symmetric pair
    case VKind::DNode:
    case VKind::VNode:
      return x.arity;
    default:
      return x.arity > 0 ? 1 : 0;
  }
}

int Graph::group_size(int v, int g) const {
  const Vertex& x = verts_[v];
  switch (x.kind) {
    case VKind::Nabla:
      return g == 0 ? x.arity - 2 : 2;
    case VKind::DNode:
    case VKind::VNode:
      return 1;
    default:
      return x.arity;
  }
}

int Graph::in_degree(int v, int g) const {
  int n = 0;
  for (int u = 0; u < vertex_count(); ++u)
    if (out_[u] && out_[u]->v == v && out_[u]->g == g) ++n;
  return n;
}

std::vector<int> Graph::in_sources(int v, int g) const {
  std::vector<int> src;
  for (int u = 0; u < vertex_count(); ++u)
    if (out_[u] && out_[u]->v == v && out_[u]->g == g) src.push_back(u);
  return src;
}

int Graph::count_kind(VKind k) const {
  int n = 0;
  for (const Vertex& v : verts_)
    if (v.kind == k) ++n;
  return n;
}

std::vector<int> Graph::vertices_of_kind(VKind k) const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (verts_[v].kind == k) out.push_back(v);
  return out;
}

bool Graph::well_formed(std::string* why, bool allow_no_anchor) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  int anchors = count_kind(VKind::Anchor);
  if (!allow_no_anchor && anchors != 1) return fail("graph must have exactly one anchor");
  if (allow_no_anchor && anchors > 1) return fail("graph has multiple anchors");
  for (int v = 0; v < vertex_count(); ++v) {
    const Vertex& x = verts_[v];
    if (x.kind == VKind::Anchor) {
      if (x.arity != 1) return fail("anchor must have exactly one input");
      if (out_[v]) return fail("anchor must not have an output");
      continue;
    }
    if (x.kind == VKind::White && x.arity < 2) return fail("white vertex needs arity >= 2");
    if (x.kind == VKind::Nabla && x.arity < 2) return fail("nabla vertex needs arity >= 2");
    if (x.kind == VKind::Black && x.arity < 0) return fail("negative arity");
    if (!out_[v]) return fail("vertex " + std::to_string(v) + " has no output");
    const Target& t = *out_[v];
    if (t.v < 0 || t.v >= vertex_count()) return fail("edge target out of range");
    if (t.g < 0 || t.g >= group_count(t.v)) return fail("edge target group out of range");
  }
  for (int v = 0; v < vertex_count(); ++v)
    for (int g = 0; g < group_count(v); ++g)
      if (in_degree(v, g) != group_size(v, g))
        return fail("slot group (" + std::to_string(v) + "," + std::to_string(g) +
                    ") filled " + std::to_string(in_degree(v, g)) + "/" +
                    std::to_string(group_size(v, g)));
  return true;
}

int Graph::field_count() const {
  int d = 0;
  for (const Vertex& v : verts_)
    if ((v.kind == VKind::Black || v.kind == VKind::VNode) && v.label > d) d = v.label;
  return d;
}

Graph single_anchor_graph() {
  Graph g;
  g.add_vertex(VKind::Anchor, 1);
  return g;
}

}  // namespace natop
