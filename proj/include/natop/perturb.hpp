#pragma once

#include <optional>
#include <vector>

#include "natop/differential.hpp"
#include "natop/enumerate.hpp"
#include "natop/leading_term.hpp"
#include "natop/sparse.hpp"

namespace natop {

// The two staircase strips of the bicomplex that the transfer needs:
// diagonal pieces (r nablas, no whites) and superdiagonal pieces (r nablas,
// one white), with the vertical and horizontal differentials between them.
struct ComplexSlice {
  SpaceSpec spec;
  Bounds bounds;
  int rmax = 0;
  std::vector<GradedBasis> diag;   // B^{-r,r},   r = 0..rmax
  std::vector<GradedBasis> super;  // B^{-r,r+1}, r = 0..rmax-1
  std::vector<SparseMat> dv;       // diag[r]   -> super[r]
  std::vector<SparseMat> dh;       // diag[r+1] -> super[r]
};

ComplexSlice build_slice(const SpaceSpec& spec, const Bounds& bounds);

// Splitting data for the transfer: the horizontal cocycles and a projection
// killing them on every diagonal grade.  In equivariant mode the projections
// commute with the relabelling action of the symmetric group on the pinned
// inputs.
struct PerturbationState {
  ComplexSlice slice;
  bool equivariant = false;
  std::vector<Subspace> zh;        // Zh^r inside diag[r]
  std::vector<Projection> proj;    // kernel Zh^r
};

PerturbationState make_state(const SpaceSpec& spec, const Bounds& bounds, bool equivariant);

// Degree-0 cocycle with its top part (the minimal nabla count component).
struct Cocycle {
  LinComb value;
  LinComb leading;
  int leading_grade = 0;
};

// One transfer step: the unique element of D^{r+1} with dh(u) = dv(x).
SparseVec u_step(const PerturbationState& st, int r, const SparseVec& x);

// The full lift z - U z + U^2 z - ...; z must be a horizontal cocycle in
// diag[r].
Cocycle beta(const PerturbationState& st, int r, const SparseVec& z);

// Ideal generator of arity n for the given admissible leading term
// (equivariant mode makes every quasi-symmetry an exact symmetry).
Cocycle ideal_generator(int n, const LeadingTerm& leading, bool equivariant,
                        const Bounds& bounds);

// Ideal field-insertion cocycle: the lift of the p-fold jet vertex in the
// anchored subcomplex on p pinned slots (realizes the arity-(p+1) insertion
// operator; the real field carries label p+1).
Cocycle ideal_insertion(int p, bool equivariant, const Bounds& bounds);

// Difference from a baseline cocycle with the same leading part.
LinComb correction_term(const Cocycle& ideal, const LinComb& baseline);

}  // namespace natop
