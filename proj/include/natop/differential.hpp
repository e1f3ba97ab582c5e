#pragma once

#include "natop/enumerate.hpp"
#include "natop/lincomb.hpp"
#include "natop/sparse.hpp"

namespace natop {

// Replacement rule for the nabla vertex with k derivative inputs: the
// two-vertex trees produced by the coordinate-change variation of the k-th
// derivative of the connection symbol (everything except the pure top-order
// white vertex, which is the horizontal part).  Returned as a patch
// combination on k+2 legs: legs -1..-k are the derivative block,
// legs -(k+1), -(k+2) the symmetric pair.
LinComb nabla_variation(int k);

// Vertical differential: variation of black, white and nabla vertices.
LinComb delta_v(const CanonGraph& g);
LinComb delta_v(const LinComb& x);

// Horizontal differential: nabla -> -white on each nabla vertex.
LinComb delta_h(const CanonGraph& g);
LinComb delta_h(const LinComb& x);

// Total differential.
LinComb delta(const CanonGraph& g);
LinComb delta(const LinComb& x);

// Matrix of a differential between enumerated bases.  Every image term must
// lie in `dst`; a missing term is a fatal enumeration bug and throws.
SparseMat differential_matrix(const GradedBasis& src, const GradedBasis& dst,
                              const std::function<LinComb(const CanonGraph&)>& d);

// Solve for the nabla replacement from the square-zero constraint, given the
// lower variations: the unique combination G on the arity-(k+2) tree basis
// with delta(delta(nabla_k)) = 0.  Returns the solution and a uniqueness flag
// (false when the constraint leaves a free parameter).
struct VariationSolve {
  LinComb solution;
  bool unique = true;
};
VariationSolve solve_nabla_variation(int k);

// Candidate basis for the arity-k replacement: all two-vertex trees on k+2
// legs with one nabla vertex of derivative arity < k and one white vertex of
// arity < k+2, as canonical patch graphs.
std::vector<CanonGraph> nabla_tree_basis(int k);

SparseVec lincomb_to_vec(const LinComb& x, const GradedBasis& basis);
LinComb vec_to_lincomb(const SparseVec& v, const GradedBasis& basis);

}  // namespace natop
