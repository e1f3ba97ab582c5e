#pragma once

#include <optional>
#include <string>
#include <vector>

#include "natop/group_ring.hpp"
#include "natop/leading_term.hpp"
#include "natop/lincomb.hpp"

namespace natop {

// Basis of the right annihilator of a leading term in the group ring.
std::vector<GroupRingElem> quasi_symmetries(const LeadingTerm& leading);

// Top differential-order part of a vf-order-0, c-order-(n-2) operator: the
// terms with a single arity-n nabla vertex and no field derivatives.
LinComb leading_part(const LinComb& op, int n);

// Apply a group-ring element to an operator cocycle by relabelling fields.
LinComb apply_group_ring(const LinComb& op, const GroupRingElem& s);

// The deviation D_n S for an operator with the given leading term.  Throws if
// s is not a quasi-symmetry (the top-order part would survive).
LinComb deviation(const LinComb& op, const LeadingTerm& leading, const GroupRingElem& s);

struct IdentityReport {
  std::string name;
  int arity;
  bool vanishes;
  int c_order;      // of the deviation, 0 when it vanishes
  int vf_order;
};

// The classical symmetry candidates of the curvature-type leading term
// ((anti)symmetry of the pair, two cyclic sums, first-block transpositions)
// evaluated on a family member of arity n, plus the first-block symmetries of
// the field-insertion operators.
std::vector<IdentityReport> bianchi_suite(const LinComb& dn, int n);
std::vector<IdentityReport> insertion_symmetry_suite(const LinComb& vn, int n);

// Theorem-B-type normalization: express a target admissible generator inside
// the span of {L c} + {Tr_j(L c_j) X_j} over group-ring coefficients.
struct NormalizeResult {
  bool generating = false;
  GroupRingElem c;
  std::vector<GroupRingElem> cj;
  LeadingTerm achieved;
  int stability_dim = 3;  // graph representations of top-order parts are
                          // faithful from this dimension on
};

// `u_leading` lives in the one-nabla graph basis of arity n (wheels allowed).
NormalizeResult normalize_leading(const LinComb& u_leading, int n);

// Building blocks for the normalization map.
LinComb leading_act(const LinComb& u_leading, const Perm& g);
// Tr_j(op) X_j at the graph level (op order 0 in slot j).
LinComb trace_times_slot(const LinComb& op, int j);

// The permutation that moves a relabelling through a trace:
// (Tr_j(O) X_j) sigma = Tr_{sigma^{-1}(j)}(O tilde) X_{sigma^{-1}(j)}.
// Found by search over the group; empty when none works.
std::optional<Perm> trace_commutation_perm(int n, int j, const Perm& sigma);

}  // namespace natop
