#pragma once

#include <functional>
#include <map>

#include "natop/enumerate.hpp"
#include "natop/leading_term.hpp"
#include "natop/lincomb.hpp"
#include "natop/sparse.hpp"

namespace natop {

// A contraction scheme is a graph over DNode / VNode vertices and the anchor;
// DNode(n), n >= 3, stands for an arity-n generating operator with linearly
// ordered inputs; VNode(p) labelled l stands for the insertion of field l
// differentiated p times.  Every field label 1..d occurs exactly once.

// All schemes for d fields within bounds, in canonical order.  The identity
//   sum(d arities - 1) + sum(v arities) = d - 1
// keeps the space finite.
GradedBasis enumerate_schemes(int d, const Bounds& bounds);

// formal vf-order: sum of VNode arities (max over terms)
int scheme_vf_order(const CanonGraph& scheme);

// Realization of a leading term as the combination of one-nabla graphs it
// denotes, anchored on 0-ary blacks labelled 1..n.
LinComb leading_realization(const LeadingTerm& x);

// Substitute the leading data: DNode(n) -> the chosen kernel generator of
// arity n, VNode(p, l) -> black(p, l).  Lands in the kernel of delta_h.
LinComb scheme_leading_image(const CanonGraph& scheme,
                             const std::function<LeadingTerm(int)>& leading_of_arity);

// Cocycles the substitution uses: dgen[n] is an anchored arity-n cocycle on
// distinguished slots 1..n; vgen[p] realizes the insertion of a p-times
// differentiated field (anchored on slots 1..p with one real black p+1).
struct GeneratorFamily {
  std::map<int, LinComb> dgen;
  std::map<int, LinComb> vgen;
};

// K-type family: iterated derivatives of the curvature and symmetrized
// iterated field derivatives.
GeneratorFamily curvature_family(int max_d_arity, int max_v_arity);

// Substitute full cocycles: the result is a degree-0 cocycle.
LinComb scheme_realize(const CanonGraph& scheme, const GeneratorFamily& fam);
LinComb scheme_realize(const LinComb& schemes, const GeneratorFamily& fam);

// Section data: schemes whose leading images form a basis of a given space.
struct SchemeSection {
  std::vector<CanonGraph> schemes;     // chosen representatives
  std::vector<SparseVec> image_coords; // their leading images in the ambient basis
};

// Greedy right inverse of the leading-image map on `ambient`: picks schemes
// whose images are independent until the target space is exhausted.  Throws
// if the map is not onto the requested subspace.
SchemeSection build_section(int d, const Bounds& bounds,
                            const std::function<LeadingTerm(int)>& leading_of_arity,
                            const GradedBasis& ambient, const Subspace& target);

}  // namespace natop
