#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "natop/graph.hpp"

namespace natop {

// Canonically labelled graph: the lexicographically least encoding over all
// admissible vertex orderings.  White vertices are odd, so a canonical form
// also fixes their ordering; `sign` reports the parity of the permutation
// from the caller's white order to the canonical one.  A graph admitting an
// automorphism that permutes its white vertices oddly is zero.
class CanonGraph {
 public:
  CanonGraph() = default;
  explicit CanonGraph(std::vector<std::int32_t> code);

  const std::vector<std::int32_t>& code() const { return code_; }
  Graph decode() const;

  int vertex_count() const;
  int count_kind(VKind k) const;
  int nabla_count() const { return count_kind(VKind::Nabla); }
  int white_count() const { return count_kind(VKind::White); }
  int field_count() const;
  int max_arity() const;
  int max_nabla_arity() const;  // -1 when there is no nabla vertex

  bool operator==(const CanonGraph& o) const { return code_ == o.code_; }
  bool operator!=(const CanonGraph& o) const { return code_ != o.code_; }
  bool operator<(const CanonGraph& o) const { return code_ < o.code_; }

  std::string key() const;  // compact printable form of the code

 private:
  std::vector<std::int32_t> code_;
};

struct CanonResult {
  CanonGraph graph;
  int sign = 1;     // parity of white reordering, +1 or -1
  bool zero = false;  // true when an odd automorphism kills the graph
};

// `white_order`: the caller's ordering of the white vertex ids (defaults to
// increasing vertex index).  The graph must be complete and well-formed.
CanonResult canonicalize(const Graph& g, std::vector<int> white_order = {});

}  // namespace natop
