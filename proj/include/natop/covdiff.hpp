#pragma once

#include "natop/lincomb.hpp"
#include "natop/perm.hpp"

namespace natop {

// Graph representatives of the basic operators.  Field labels are 1..d.

LinComb identity_op();              // d=1: the field itself
LinComb lie_bracket_op();           // d=2: [x1, x2]
LinComb covariant_deriv_op();       // d=2: derivative of x2 along x1
LinComb curvature_op();             // d=3: R(x1,x2)(x3)
// d=2 scalar-times-field operator: x_vec * trace of the derivative of x_tr
LinComb times_trace_deriv_op(int vec_label, int tr_label);

// Covariant derivative of an operator given as a degree-0 anchored
// combination whose tensor slots are the 0-ary blacks labelled 1..nslots
// (labels above nslots are background fields and may carry jets).  The new
// derivative slot becomes label 1; everything else shifts up by one.
LinComb covariant_derivative_op(const LinComb& op, int nslots);

// Average over all permutations of the labels 1..m.
LinComb symmetrize_first(const LinComb& op, int m, int total_fields);

// Operadic substitution into an order-0 slot: outer arity d_out, inner arity
// d_in; the inner labels move to slot..slot+d_in-1, outer labels above the
// slot shift by d_in - 1.  Every outer term must carry the slot as a 0-ary
// black vertex.
LinComb compose_at(const LinComb& outer, int slot, int d_out, const LinComb& inner, int d_in);

// Tr_slot(scalar_src) * vec_op.  Labels of the two arguments must already be
// disjoint; the traced slot must be a 0-ary black of every scalar_src term.
LinComb mul_trace(const LinComb& scalar_src, int slot, const LinComb& vec_op);

// iterated covariant derivatives of the curvature: arity n >= 3
LinComb curvature_derivative_op(int n);
// their symmetrized versions (full symmetry in the first n-3 slots)
LinComb curvature_derivative_sym_op(int n);
// symmetrized iterated derivative of the last field: arity n >= 1
LinComb field_derivative_sym_op(int n);

// relabel l -> l + shift for every field label
LinComb shift_labels(const LinComb& x, int shift);

// The explicit 26-term curvature-square correction of arity 5 (prefactor
// -1/2, integer weights 1 and 2), with slots (x1..x5).
LinComb explicit_arity5_correction();

}  // namespace natop
