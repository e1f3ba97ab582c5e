#pragma once

#include <optional>
#include <string>
#include <vector>

#include "natop/perm.hpp"

namespace natop {

// Vertex species of the decorated graphs.
//
//   Black  : jet of a vector field; `arity` input slots, all symmetric,
//            carries the field label (1..d) or 0 for an unlabelled leg.
//   Nabla  : jet of the connection symbol; arity = k+2 where the first k
//            slots (group 0) are the symmetric derivative block and the last
//            two (group 1) form the symmetric pair.
//   White  : generator of an infinitesimal symmetry; arity >= 2, symmetric.
//            White vertices are odd: combinations carry an orientation sign
//            for the ordering of the white vertices.
//   Anchor : the unique output of the operator; one input slot, no output.
//   DNode  : contraction-scheme symbol for an arity-n generating operator,
//            n linearly ordered slots (each its own group).
//   VNode  : contraction-scheme symbol for a field insertion of order
//            `arity`; ordered slots, carries the field label.
enum class VKind : int { Anchor = 0, Black = 1, Nabla = 2, White = 3, DNode = 4, VNode = 5 };

struct Vertex {
  VKind kind;
  int arity;  // number of input slots
  int label;  // Black/VNode: field index, else 0
};

// An input position, identified by target vertex and slot group (slots inside
// one group are symmetric, so the group is all an edge needs to know).
struct Target {
  int v;
  int g;
  bool operator==(const Target& o) const { return v == o.v && g == o.g; }
};

// Directed decorated graph.  Every non-anchor vertex has exactly one output
// edge, recorded as out[v]; a complete graph fills every input slot exactly
// once.  Loops and wheels are allowed; components without an anchor are
// wheels and encode traces.  `out` entries may be empty while a graph is
// under construction (e.g. before trace_close).
class Graph {
 public:
  Graph() = default;

  int add_vertex(VKind kind, int arity, int label = 0);
  int vertex_count() const { return static_cast<int>(verts_.size()); }
  const Vertex& vertex(int v) const { return verts_[v]; }
  Vertex& vertex(int v) { return verts_[v]; }
  const std::vector<Vertex>& vertices() const { return verts_; }

  void set_out(int v, Target t) { out_[v] = t; }
  void clear_out(int v) { out_[v].reset(); }
  const std::optional<Target>& out(int v) const { return out_[v]; }

  // slot groups: {count, size of each}
  int group_count(int v) const;
  int group_size(int v, int g) const;

  // number of edges currently entering (v,g)
  int in_degree(int v, int g) const;
  // sources currently feeding (v,g), sorted
  std::vector<int> in_sources(int v, int g) const;

  int count_kind(VKind k) const;
  std::vector<int> vertices_of_kind(VKind k) const;

  // every non-anchor vertex wired, every slot filled exactly once,
  // exactly one anchor (unless `allow_no_anchor`)
  bool well_formed(std::string* why = nullptr, bool allow_no_anchor = false) const;

  // black vertices are labelled 1..d exactly once each
  int field_count() const;

 private:
  std::vector<Vertex> verts_;
  std::vector<std::optional<Target>> out_;
};

// convenience constructors used all over the test and operator layers
Graph single_anchor_graph();  // anchor only (not well-formed by itself)

}  // namespace natop
