#pragma once

#include <vector>

#include "natop/graph.hpp"
#include "natop/lincomb.hpp"
#include "natop/perm.hpp"

namespace natop {

// Anchored k-graph <-> rooted k-graph.  The anchored form has 0-ary black
// vertices labelled 1..k (the legs) and the anchor; the rooted form strips
// them, leaving k numbered dangling input slots and a distinguished root.
struct RootedGraph {
  Graph core;                          // legs and anchor removed
  std::vector<std::optional<Target>>
      leg_slots;    // slot fed by leg i+1 (core ids); empty when that leg is
                    // the root itself (a bare wire)
  int root = -1;    // vertex whose output is the root; -1 for a bare wire
  int root_leg = -1;  // the pass-through leg when root == -1
};

RootedGraph amputate(const Graph& anchored, int k);
Graph attach_legs(const RootedGraph& r);  // inverse of amputate

// Vertex replacement: replace `v` in `host` by the anchored k-patch.  Legs of
// the patch are matched with v's input slots in flattened order (group by
// group, sources sorted inside each group).  Wheels through v are routed
// through the patch, so self-loops stay meaningful.
struct GraftResult {
  Graph graph;
  std::vector<int> host_map;   // host vertex id -> new id (-1 for v)
  std::vector<int> patch_map;  // patch vertex id -> new id (-1 for legs/anchor)
};

GraftResult graft_single(const Graph& host, int v, const Graph& patch);

// Linear extension over patch terms.  White vertices of the patch are ordered
// before the host's whites (patch order first), matching the differential's
// front-insertion convention.
LinComb graft(const Graph& host, int v, const LinComb& patch,
              const std::vector<int>& host_white_order = {});

// Turn an anchored k-graph with distinguished labels 1..k into graft form
// (legs get the reserved negative labels -1..-k).
Graph to_patch(const Graph& anchored, int k);

// Close an open trace: a's free output into the open slot (b, group).
Graph trace_close(const Graph& g, int a, Target slot);

// Right action by relabelling: field label l becomes sigma(l).
Graph relabel_fields(const Graph& g, const Perm& sigma);
LinComb act_fields(const LinComb& x, const Perm& sigma);

}  // namespace natop
