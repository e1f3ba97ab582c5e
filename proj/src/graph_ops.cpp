#include "natop/graph_ops.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace natop {

namespace {

int find_anchor(const Graph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertex(v).kind == VKind::Anchor) return v;
  return -1;
}

// legs of a k-patch: 0-ary blacks with labels -1..-k (negative so they can
// never collide with real field labels)
std::vector<int> find_legs(const Graph& g, int k) {
  std::vector<int> legs(k, -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Vertex& x = g.vertex(v);
    if (x.kind == VKind::Black && x.label <= -1 && x.label >= -k) {
      if (x.arity != 0) throw std::invalid_argument("patch leg must be 0-ary");
      if (legs[-x.label - 1] >= 0) throw std::invalid_argument("duplicate patch leg label");
      legs[-x.label - 1] = v;
    }
  }
  for (int v : legs)
    if (v < 0) throw std::invalid_argument("patch misses a leg label");
  return legs;
}

// flattened input slots of v: (group, source), groups in order, sources sorted
std::vector<std::pair<int, int>> flattened_sources(const Graph& g, int v) {
  std::vector<std::pair<int, int>> out;
  for (int gr = 0; gr < g.group_count(v); ++gr)
    for (int s : g.in_sources(v, gr)) out.push_back({gr, s});
  return out;
}

}  // namespace

RootedGraph amputate(const Graph& anchored, int k) {
  int anchor = find_anchor(anchored);
  if (anchor < 0) throw std::invalid_argument("amputate: no anchor");
  // distinguished vertices: 0-ary blacks labelled 1..k
  std::vector<int> legs(k, -1);
  for (int v = 0; v < anchored.vertex_count(); ++v) {
    const Vertex& x = anchored.vertex(v);
    if (x.kind == VKind::Black && x.label >= 1 && x.label <= k && x.arity == 0) {
      if (legs[x.label - 1] >= 0) throw std::invalid_argument("amputate: duplicate label");
      legs[x.label - 1] = v;
    }
  }
  for (int v : legs)
    if (v < 0) throw std::invalid_argument("amputate: missing distinguished vertex");
  std::vector<char> drop(anchored.vertex_count(), 0);
  drop[anchor] = 1;
  for (int v : legs) drop[v] = 1;

  RootedGraph r;
  std::vector<int> remap(anchored.vertex_count(), -1);
  for (int v = 0; v < anchored.vertex_count(); ++v) {
    if (drop[v]) continue;
    const Vertex& x = anchored.vertex(v);
    remap[v] = r.core.add_vertex(x.kind, x.arity, x.label);
  }
  for (int v = 0; v < anchored.vertex_count(); ++v) {
    if (drop[v] || !anchored.out(v)) continue;
    Target t = *anchored.out(v);
    if (t.v == anchor) {
      r.root = remap[v];
      continue;  // root output left dangling
    }
    if (remap[t.v] < 0) throw std::invalid_argument("amputate: edge into a leg");
    r.core.set_out(remap[v], Target{remap[t.v], t.g});
  }
  for (int i = 0; i < k; ++i) {
    const auto& t = anchored.out(legs[i]);
    if (!t) throw std::invalid_argument("amputate: leg not wired");
    if (t->v == anchor) {
      r.leg_slots.push_back(std::nullopt);  // bare wire: the leg is the root
      r.root_leg = i;
      continue;
    }
    if (remap[t->v] < 0) throw std::invalid_argument("amputate: leg wired to a leg");
    r.leg_slots.push_back(Target{remap[t->v], t->g});
  }
  if (r.root < 0 && r.root_leg < 0)
    throw std::invalid_argument("amputate: nothing feeds the anchor");
  return r;
}

Graph attach_legs(const RootedGraph& r) {
  Graph g = r.core;
  int anchor = g.add_vertex(VKind::Anchor, 1);
  if (r.root >= 0) g.set_out(r.root, Target{anchor, 0});
  for (std::size_t i = 0; i < r.leg_slots.size(); ++i) {
    int leg = g.add_vertex(VKind::Black, 0, static_cast<int>(i) + 1);
    if (r.leg_slots[i])
      g.set_out(leg, *r.leg_slots[i]);
    else
      g.set_out(leg, Target{anchor, 0});
  }
  return g;
}

GraftResult graft_single(const Graph& host, int v, const Graph& patch) {
  auto slots = flattened_sources(host, v);
  int k = static_cast<int>(slots.size());
  if (k != host.vertex(v).arity) throw std::invalid_argument("graft: host slot not fully wired");
  int anchor = find_anchor(patch);
  if (anchor < 0) throw std::invalid_argument("graft: patch has no anchor");
  std::vector<int> legs = find_legs(patch, k);

  GraftResult res;
  res.host_map.assign(host.vertex_count(), -1);
  res.patch_map.assign(patch.vertex_count(), -1);

  std::vector<char> pdrop(patch.vertex_count(), 0);
  pdrop[anchor] = 1;
  for (int leg : legs) pdrop[leg] = 1;

  for (int u = 0; u < host.vertex_count(); ++u) {
    if (u == v) continue;
    const Vertex& x = host.vertex(u);
    res.host_map[u] = res.graph.add_vertex(x.kind, x.arity, x.label);
  }
  for (int u = 0; u < patch.vertex_count(); ++u) {
    if (pdrop[u]) continue;
    const Vertex& x = patch.vertex(u);
    res.patch_map[u] = res.graph.add_vertex(x.kind, x.arity, x.label);
  }

  // leg index fed by each host source of v  (key: host source vertex)
  std::map<int, int> leg_of_source;
  for (int i = 0; i < k; ++i) leg_of_source[slots[i].second] = i;

  // Resolve a target through legs and the anchor to a concrete new-graph slot.
  // Following a leg means "whatever that leg feeds in the patch"; following
  // the anchor means "whatever v's output fed in the host".
  std::function<Target(Target, bool, int)> resolve = [&](Target t, bool in_patch,
                                                         int depth) -> Target {
    if (depth > host.vertex_count() + patch.vertex_count())
      throw std::invalid_argument("graft: degenerate wire cycle");
    if (in_patch) {
      if (t.v == anchor) {
        Target hv = *host.out(v);
        return resolve(hv, false, depth + 1);
      }
      if (pdrop[t.v]) throw std::invalid_argument("graft: edge into a leg");
      return Target{res.patch_map[t.v], t.g};
    }
    if (t.v == v) {
      // one of v's own slots (self-loop); v's own output fed it, so continue
      // through the leg assigned to source v
      int leg = leg_of_source.at(v);
      Target lt = *patch.out(legs[leg]);
      return resolve(lt, true, depth + 1);
    }
    return Target{res.host_map[t.v], t.g};
  };

  // host edges (except from v)
  for (int u = 0; u < host.vertex_count(); ++u) {
    if (u == v || !host.out(u)) continue;
    Target t = *host.out(u);
    if (t.v == v) {
      int leg = leg_of_source.at(u);
      res.graph.set_out(res.host_map[u], resolve(*patch.out(legs[leg]), true, 0));
    } else {
      res.graph.set_out(res.host_map[u], Target{res.host_map[t.v], t.g});
    }
  }
  // patch edges (except legs/anchor); the root's edge-to-anchor resolves to
  // v's former target
  for (int u = 0; u < patch.vertex_count(); ++u) {
    if (pdrop[u] || !patch.out(u)) continue;
    res.graph.set_out(res.patch_map[u], resolve(*patch.out(u), true, 0));
  }
  return res;
}

LinComb graft(const Graph& host, int v, const LinComb& patch,
              const std::vector<int>& host_white_order) {
  LinComb out;
  for (const auto& [pg, c] : patch.terms()) {
    Graph p = pg.decode();
    GraftResult r = graft_single(host, v, p);
    std::vector<int> worder;
    for (int u = 0; u < p.vertex_count(); ++u)
      if (p.vertex(u).kind == VKind::White && r.patch_map[u] >= 0)
        worder.push_back(r.patch_map[u]);
    if (host_white_order.empty()) {
      for (int u = 0; u < host.vertex_count(); ++u)
        if (u != v && host.vertex(u).kind == VKind::White) worder.push_back(r.host_map[u]);
    } else {
      for (int u : host_white_order)
        if (u != v) worder.push_back(r.host_map[u]);
    }
    out.add_graph(r.graph, c, worder);
  }
  return out;
}

Graph to_patch(const Graph& anchored, int k) {
  Graph g = anchored;
  for (int v = 0; v < g.vertex_count(); ++v) {
    Vertex& x = g.vertex(v);
    if (x.kind == VKind::Black && x.label >= 1 && x.label <= k) {
      if (x.arity != 0)
        throw std::invalid_argument("to_patch: distinguished vertex is not 0-ary");
      x.label = -x.label;
    }
  }
  return g;
}

Graph trace_close(const Graph& g, int a, Target slot) {
  if (g.out(a)) throw std::invalid_argument("trace_close: output already attached");
  if (g.in_degree(slot.v, slot.g) >= g.group_size(slot.v, slot.g))
    throw std::invalid_argument("trace_close: slot already occupied");
  Graph h = g;
  h.set_out(a, slot);
  return h;
}

Graph relabel_fields(const Graph& g, const Perm& sigma) {
  Graph h = g;
  for (int v = 0; v < h.vertex_count(); ++v) {
    Vertex& x = h.vertex(v);
    if ((x.kind == VKind::Black || x.kind == VKind::VNode) && x.label >= 1 &&
        x.label <= sigma.size())
      x.label = sigma(x.label);
  }
  return h;
}

LinComb act_fields(const LinComb& x, const Perm& sigma) {
  LinComb out;
  for (const auto& [g, c] : x.terms()) out.add_graph(relabel_fields(g.decode(), sigma), c);
  return out;
}

}  // namespace natop
