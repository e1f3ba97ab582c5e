#pragma once

#include <map>
#include <string>

#include "natop/perm.hpp"
#include "natop/rational.hpp"

namespace natop {

// Element of Q[S_n].  Multiplication extends Perm::then (diagrammatic order),
// so acting on operators / graphs on the right is a ring action.
class GroupRingElem {
 public:
  GroupRingElem() : n_(0) {}
  explicit GroupRingElem(int n) : n_(n) {}
  static GroupRingElem unit(int n) { return single(Perm::identity(n)); }
  static GroupRingElem single(const Perm& p, const Rat& c = Rat(1));

  int degree() const { return n_; }
  const std::map<Perm, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Perm& p, const Rat& c);
  GroupRingElem operator+(const GroupRingElem& o) const;
  GroupRingElem operator-(const GroupRingElem& o) const;
  GroupRingElem operator*(const GroupRingElem& o) const;  // extends `then`
  GroupRingElem operator*(const Rat& c) const;
  bool operator==(const GroupRingElem& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator<(const GroupRingElem& o) const;

  std::string str() const;

 private:
  int n_;
  std::map<Perm, Rat> terms_;  // no zero coefficients stored
};

}  // namespace natop
