#include "natop/canon.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace natop {

CanonGraph::CanonGraph(std::vector<std::int32_t> code) : code_(std::move(code)) {}

int CanonGraph::vertex_count() const { return code_.empty() ? 0 : code_[0]; }

Graph CanonGraph::decode() const {
  Graph g;
  int n = vertex_count();
  int p = 1;
  for (int i = 0; i < n; ++i) {
    VKind k = static_cast<VKind>(code_[p]);
    int arity = code_[p + 1];
    int label = code_[p + 2];
    g.add_vertex(k, arity, label);
    p += 3;
  }
  for (int i = 0; i < n; ++i) {
    int tv = code_[p], tg = code_[p + 1];
    p += 2;
    if (tv >= 0) g.set_out(i, Target{tv, tg});
  }
  return g;
}

int CanonGraph::count_kind(VKind k) const {
  int n = vertex_count(), c = 0;
  for (int i = 0; i < n; ++i)
    if (code_[1 + 3 * i] == static_cast<std::int32_t>(k)) ++c;
  return c;
}

int CanonGraph::field_count() const {
  int n = vertex_count(), d = 0;
  for (int i = 0; i < n; ++i) {
    VKind k = static_cast<VKind>(code_[1 + 3 * i]);
    if ((k == VKind::Black || k == VKind::VNode) && code_[3 + 3 * i] > d) d = code_[3 + 3 * i];
  }
  return d;
}

int CanonGraph::max_arity() const {
  int n = vertex_count(), a = 0;
  for (int i = 0; i < n; ++i) a = std::max(a, code_[2 + 3 * i]);
  return a;
}

int CanonGraph::max_nabla_arity() const {
  int n = vertex_count(), a = -1;
  for (int i = 0; i < n; ++i)
    if (code_[1 + 3 * i] == static_cast<std::int32_t>(VKind::Nabla))
      a = std::max(a, code_[2 + 3 * i]);
  return a;
}

std::string CanonGraph::key() const {
  std::string s;
  for (std::int32_t x : code_) {
    s += std::to_string(x);
    s += ',';
  }
  return s;
}

namespace {

struct Search {
  const Graph& g;
  int n;
  std::vector<std::vector<int>> in_src;   // per vertex, per group: sorted sources
  std::vector<int> group_offset;          // flattened group index base per vertex
  int total_groups = 0;

  std::vector<std::int32_t> best;
  bool have_best = false;
  bool seen_plus = false, seen_minus = false;
  std::vector<int> white_pos_in;  // white vertex -> index in caller's order

  explicit Search(const Graph& gr) : g(gr), n(gr.vertex_count()) {}

  std::vector<int> refine(std::vector<int> color) const {
    while (true) {
      // signature: (color, out-target color/group, per group sorted in-source colors)
      std::vector<std::pair<std::vector<int>, int>> sigs(n);
      for (int v = 0; v < n; ++v) {
        std::vector<int> s;
        s.push_back(color[v]);
        if (g.out(v)) {
          s.push_back(color[g.out(v)->v]);
          s.push_back(g.out(v)->g);
        } else {
          s.push_back(-1);
          s.push_back(-1);
        }
        for (int gr = 0; gr < g.group_count(v); ++gr) {
          s.push_back(-2);
          std::vector<int> ins;
          for (int u : g.in_sources(v, gr)) ins.push_back(color[u]);
          std::sort(ins.begin(), ins.end());
          s.insert(s.end(), ins.begin(), ins.end());
        }
        sigs[v] = {std::move(s), v};
      }
      std::vector<std::pair<std::vector<int>, int>> sorted = sigs;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> next(n);
      int rank = -1;
      for (int i = 0; i < n; ++i) {
        if (i == 0 || sorted[i].first != sorted[i - 1].first) ++rank;
        next[sorted[i].second] = rank;
      }
      if (next == color) return color;
      color = std::move(next);
    }
  }

  void leaf(const std::vector<int>& color) {
    // discrete coloring: position of v = color[v]
    std::vector<int> pos(color);
    std::vector<int> vert_at(n);
    for (int v = 0; v < n; ++v) vert_at[pos[v]] = v;
    std::vector<std::int32_t> code;
    code.reserve(1 + 5 * n);
    code.push_back(n);
    for (int i = 0; i < n; ++i) {
      const Vertex& x = g.vertex(vert_at[i]);
      code.push_back(static_cast<std::int32_t>(x.kind));
      code.push_back(x.arity);
      code.push_back(x.label);
    }
    for (int i = 0; i < n; ++i) {
      const auto& t = g.out(vert_at[i]);
      if (t) {
        code.push_back(pos[t->v]);
        code.push_back(t->g);
      } else {
        code.push_back(-1);
        code.push_back(-1);
      }
    }
    int cmp = 0;
    if (have_best) cmp = code < best ? -1 : (code == best ? 0 : 1);
    if (!have_best || cmp < 0) {
      best = std::move(code);
      have_best = true;
      seen_plus = seen_minus = false;
      cmp = 0;
    }
    if (cmp == 0) {
      // parity of caller's white order -> canonical white order
      std::vector<std::pair<int, int>> whites;  // (position, caller index)
      for (int v = 0; v < n; ++v)
        if (g.vertex(v).kind == VKind::White) whites.push_back({pos[v], white_pos_in[v]});
      std::sort(whites.begin(), whites.end());
      int sgn = 1;
      std::vector<int> perm;
      for (auto& [p, idx] : whites) perm.push_back(idx);
      for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
          if (perm[i] > perm[j]) sgn = -sgn;
      (sgn > 0 ? seen_plus : seen_minus) = true;
    }
  }

  void descend(std::vector<int> color) {
    color = refine(color);
    // find first non-singleton class in color order
    std::vector<int> count(n, 0);
    for (int v = 0; v < n; ++v) ++count[color[v]];
    int target = -1;
    for (int c = 0; c < n; ++c)
      if (count[c] > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      leaf(color);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (color[v] != target) continue;
      std::vector<int> next(n);
      for (int u = 0; u < n; ++u) next[u] = 2 * color[u] + (color[u] == target && u != v ? 1 : 0);
      descend(std::move(next));
    }
  }
};

}  // namespace

CanonResult canonicalize(const Graph& g, std::vector<int> white_order) {
  std::string why;
  if (!g.well_formed(&why)) throw std::invalid_argument("canonicalize: " + why);

  Search s(g);
  // cache nothing fancy; graphs are tiny
  s.white_pos_in.assign(g.vertex_count(), -1);
  if (white_order.empty())
    for (int v = 0; v < g.vertex_count(); ++v)
      if (g.vertex(v).kind == VKind::White) white_order.push_back(v);
  for (std::size_t i = 0; i < white_order.size(); ++i) s.white_pos_in[white_order[i]] = static_cast<int>(i);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertex(v).kind == VKind::White && s.white_pos_in[v] < 0)
      throw std::invalid_argument("canonicalize: incomplete white order");

  // initial colors from (kind, arity, label)
  std::vector<std::pair<std::vector<int>, int>> init;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Vertex& x = g.vertex(v);
    init.push_back({{static_cast<int>(x.kind), x.arity, x.label}, v});
  }
  std::sort(init.begin(), init.end());
  std::vector<int> color(g.vertex_count());
  int rank = -1;
  for (int i = 0; i < g.vertex_count(); ++i) {
    if (i == 0 || init[i].first != init[i - 1].first) ++rank;
    color[init[i].second] = rank;
  }
  s.descend(std::move(color));

  CanonResult r;
  r.graph = CanonGraph(std::move(s.best));
  if (s.seen_plus && s.seen_minus) {
    r.zero = true;
    r.sign = 1;
  } else {
    r.sign = s.seen_minus ? -1 : 1;
  }
  return r;
}

}  // namespace natop
