#include "natop/render.hpp"

#include <algorithm>
#include <functional>

namespace natop {

namespace {

struct Renderer {
  const Graph& g;
  bool latex;
  int cut_source = -1;  // source rendered as "#" (the cut wheel edge)

  std::string field(int label) const {
    if (label < 0) return (latex ? "\\ell_{" : "leg") + std::to_string(-label) + (latex ? "}" : "");
    return (latex ? "x_{" : "x") + std::to_string(label) + (latex ? "}" : "");
  }

  static std::string args(const std::vector<std::string>& parts, const char* open,
                          const char* close) {
    std::string s = open;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += parts[i];
    }
    s += close;
    return s;
  }

  std::string source(int v) { return v == cut_source ? "#" : expr(v); }

  std::string expr(int v) {
    const Vertex& x = g.vertex(v);
    std::vector<std::string> a0, a1;
    for (int s : g.in_sources(v, 0)) a0.push_back(source(s));
    if (g.group_count(v) > 1 && x.kind == VKind::Nabla)
      for (int s : g.in_sources(v, 1)) a1.push_back(source(s));
    std::sort(a0.begin(), a0.end());
    std::sort(a1.begin(), a1.end());
    switch (x.kind) {
      case VKind::Black: {
        std::string s = field(x.label);
        if (x.arity > 0) s += args(a0, "[", "]");
        return s;
      }
      case VKind::White:
        return "w" + args(a0, "[", "]");
      case VKind::Nabla: {
        std::string s = latex ? "\\Gamma" : "G";
        if (x.arity > 2) s += args(a0, "[", "]");
        return s + args(a1, "(", ")");
      }
      case VKind::DNode: {
        std::vector<std::string> ordered;
        for (int gi = 0; gi < x.arity; ++gi)
          for (int s : g.in_sources(v, gi)) ordered.push_back(source(s));
        return "D" + std::to_string(x.arity) + args(ordered, "(", ")");
      }
      case VKind::VNode: {
        std::vector<std::string> ordered;
        for (int gi = 0; gi < x.arity; ++gi)
          for (int s : g.in_sources(v, gi)) ordered.push_back(source(s));
        ordered.push_back(field(x.label));
        return "V" + std::to_string(x.arity + 1) + args(ordered, "(", ")");
      }
      default:
        return "?";
    }
  }
};

}  // namespace

std::string render_graph(const CanonGraph& cg, bool latex) {
  Graph g = cg.decode();
  int anchor = -1;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertex(v).kind == VKind::Anchor) anchor = v;

  std::vector<char> done(g.vertex_count(), 0);
  if (anchor >= 0) {
    std::function<void(int)> mark = [&](int v) {
      done[v] = 1;
      for (int gi = 0; gi < g.group_count(v); ++gi)
        for (int s : g.in_sources(v, gi))
          if (!done[s]) mark(s);
    };
    mark(anchor);
  }

  // wheel components
  std::vector<std::string> factors;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (done[v]) continue;
    std::vector<int> order_found(g.vertex_count(), -1);
    std::vector<int> path;
    int cur = v;
    while (order_found[cur] < 0) {
      order_found[cur] = static_cast<int>(path.size());
      path.push_back(cur);
      cur = g.out(cur)->v;
    }
    int cut = cur;
    for (std::size_t i = order_found[cur]; i < path.size(); ++i)
      cut = std::min(cut, path[i]);
    Renderer wr{g, latex, cut};
    factors.push_back((latex ? "\\operatorname{tr}(\\#\\mapsto " : "tr(# -> ") + wr.expr(cut) +
                      ")");
    std::function<void(int)> markdone = [&](int u) {
      if (done[u]) return;
      done[u] = 1;
      for (int gi = 0; gi < g.group_count(u); ++gi)
        for (int s : g.in_sources(u, gi)) markdone(s);
    };
    for (std::size_t i = order_found[cur]; i < path.size(); ++i) markdone(path[i]);
  }
  std::sort(factors.begin(), factors.end());

  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += latex ? " \\cdot " : " * ";
    out += f;
  }
  if (anchor >= 0) {
    Renderer ar{g, latex, -1};
    std::string main = ar.expr(g.in_sources(anchor, 0)[0]);
    if (!out.empty()) out += latex ? " \\cdot " : " * ";
    out += main;
  }
  return out;
}

std::string render(const LinComb& x, bool latex) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [g, c] : x.terms()) {
    if (!first) out += " + ";
    out += "(" + rat_str(c) + ") " + render_graph(g, latex);
    first = false;
  }
  return out;
}

}  // namespace natop
