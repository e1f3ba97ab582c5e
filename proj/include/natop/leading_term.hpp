#pragma once

#include <map>
#include <string>

#include "natop/group_ring.hpp"
#include "natop/perm.hpp"
#include "natop/rational.hpp"

namespace natop {

// Element of the induced module E0(n) = Ind_{S_{n-2} x S_2}^{S_n}(triv x triv),
// written in the basis of (n-2,2)-unshuffle coset representatives.  These are
// the admissible top-order parts of the arity-n generating operators: the
// unshuffle says which inputs carry the n-2 derivative indices and which two
// sit in the symmetric pair of the connection symbol.
class LeadingTerm {
 public:
  LeadingTerm() : n_(0) {}
  explicit LeadingTerm(int n) : n_(n) {}

  // canonical coset representative of g: both blocks sorted increasingly
  static Perm coset_rep(const Perm& g);

  // the class of a bare permutation, i.e. (1 x 1)g
  static LeadingTerm of(const Perm& g, const Rat& c = Rat(1));

  // alpha_id = -1, alpha_tau = +1 with tau = transposition (n-2, n-1);
  // the top-order part of the iterated derivative of the curvature.
  static LeadingTerm curvature_type(int n);

  // kernel projection of the generator: sum_u 2/(n(n-1)) u  -  id;
  // the top-order part of the normal-coordinate tensors.
  static LeadingTerm normal_type(int n);

  int arity() const { return n_; }
  const std::map<Perm, Rat>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Rat coeff(const Perm& unshuffle) const;

  void add(const Perm& g, const Rat& c);  // reduces g to its coset rep
  LeadingTerm operator+(const LeadingTerm& o) const;
  LeadingTerm operator-(const LeadingTerm& o) const;
  LeadingTerm operator*(const Rat& c) const;
  bool operator==(const LeadingTerm& o) const { return n_ == o.n_ && coeffs_ == o.coeffs_; }

  // right S_n-action and its linear extension to the group ring
  LeadingTerm act(const Perm& g) const;
  LeadingTerm act(const GroupRingElem& s) const;

  // -(sum of coefficients); zero iff the element lies in the kernel module K(n)
  Rat theta() const;
  bool in_kernel() const { return theta() == 0; }

  std::string str() const;

 private:
  int n_;
  std::map<Perm, Rat> coeffs_;  // keyed by unshuffle representatives
};

}  // namespace natop
