#pragma once

#include <string>

#include "natop/lincomb.hpp"

namespace natop {

// Prefix expression language for iterations of the generating operators,
// compiled to anchored contraction schemes.  Grammar (s-expressions):
//
//   e ::= xK                      field input K (= 1,2,...)
//       | (D n e1 ... en)         arity-n generator applied to n operands
//       | (V n e1 ... e_{n-1} xK) field insertion: K differentiated n-1 times
//       | (tr K eO eV)            trace of eO over its order-0 input K,
//                                 multiplied with eV
//       | (+ e1 e2 ...)           sum
//       | (* p/q e)               rational multiple
//       | (perm "(1 2)(3 4)" e)   relabel field inputs by a permutation
//
// Every live field label may occur only once; tracing removes a label.
// Two expressions denote the same iteration modulo the evident relations
// (operadic associativity, trace/permutation commutation) exactly when they
// compile to the same combination of canonical schemes.
LinComb parse_operator_expr(const std::string& src);

std::string operator_expr_grammar();

}  // namespace natop
