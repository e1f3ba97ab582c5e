#pragma once

#include <utility>
#include <vector>

#include "natop/group_ring.hpp"
#include "natop/leading_term.hpp"
#include "natop/rational.hpp"

namespace natop {

// Partition of n, weakly decreasing rows.
class YoungDiagram {
 public:
  explicit YoungDiagram(std::vector<int> rows);
  const std::vector<int>& rows() const { return rows_; }
  int size() const;
  YoungDiagram transpose() const;

  // dimension of the irreducible S_n-module by the hook length formula
  Int dimension() const;

  // character on a cycle type (weakly decreasing), Murnaghan-Nakayama
  Int character(const std::vector<int>& cycle_type) const;

  bool operator==(const YoungDiagram& o) const { return rows_ == o.rows_; }
  bool operator<(const YoungDiagram& o) const { return rows_ < o.rows_; }

 private:
  std::vector<int> rows_;
};

// The irreducible constituents of the kernel module K(n): the two-row shapes
// (n-1,1) and (n-2,2) (conjugates of the diagrams with at most two columns and
// at most two boxes in the second column), each with multiplicity one.
// For n = 3 only (2,1) appears.
std::vector<std::pair<YoungDiagram, Int>> two_column_decomposition(int n);

// Young symmetrizer of the standard tableau filled row by row, left to right:
// (sum of row stabilizer) * (signed sum of column stabilizer).
GroupRingElem young_symmetrizer(const YoungDiagram& d, int n);

// Central idempotent of the lambda-isotypic block: (dim/n!) sum_g chi(g^{-1}) g.
GroupRingElem central_idempotent(const YoungDiagram& d, int n);

// cycle type of a permutation, weakly decreasing
std::vector<int> cycle_type(const Perm& p);

// True iff x generates K(n) as an S_n-module: x must lie in the kernel
// (theta = 0) and project nontrivially onto every irreducible constituent.
// Throws if x is not in the kernel.
bool is_generator(const LeadingTerm& x);

}  // namespace natop
