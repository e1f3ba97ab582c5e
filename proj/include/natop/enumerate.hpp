#pragma once

#include <map>
#include <vector>

#include "natop/lincomb.hpp"

namespace natop {

struct Bounds {
  int max_vertices = 10;
  int max_arity = 6;
};

// Bigrade of the graph bicomplex: p = -(number of nabla vertices) and
// p + q = number of white vertices.
struct Bigrade {
  int p = 0, q = 0;
  int nabla() const { return -p; }
  int white() const { return p + q; }
  bool operator<(const Bigrade& o) const { return p != o.p ? p < o.p : q < o.q; }
  bool operator==(const Bigrade& o) const { return p == o.p && q == o.q; }
};

// Which graph space: `fields` black vertices labelled 1..fields, of which the
// first `pinned` are pinned to arity 0 (the distinguished inputs of the
// anchored subcomplexes).
struct SpaceSpec {
  int fields = 1;
  int pinned = 0;
  bool operator<(const SpaceSpec& o) const {
    return fields != o.fields ? fields < o.fields : pinned < o.pinned;
  }
};

// Ordered basis of one bigraded piece.
struct GradedBasis {
  std::vector<CanonGraph> elems;
  std::map<CanonGraph, int> index;

  int dim() const { return static_cast<int>(elems.size()); }
  int find(const CanonGraph& g) const;  // -1 when absent
  void build_index();
};

// All isomorphism classes with the requested numbers of nabla and white
// vertices, within bounds, in canonical order.  The counting identity
//   sum(black arities) + sum(nabla derivative arities)
//     + sum(white arity - 1) + #nabla = fields - 1
// makes every space finite; bounds only guard degenerate requests.
GradedBasis enumerate_basis(const SpaceSpec& spec, const Bigrade& grade, const Bounds& bounds);

// All bigrades with a nonempty basis.
std::vector<Bigrade> occupied_bigrades(const SpaceSpec& spec, const Bounds& bounds);

// Union of all degree-0 pieces (no white vertices, every nabla count).
GradedBasis enumerate_degree0(const SpaceSpec& spec, const Bounds& bounds);

}  // namespace natop
