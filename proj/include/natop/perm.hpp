#pragma once

#include <cassert>
#include <string>
#include <vector>

namespace natop {

// Permutation of {1..n}, stored by images.  The product used throughout the
// library is diagrammatic: (a * b)(i) = b(a(i)), i.e. "apply a, then b".
// With this convention the relabelling action on operator inputs is a right
// action, which is what the group-ring calculus below expects.
class Perm {
 public:
  Perm() = default;
  static Perm identity(int n);
  explicit Perm(std::vector<int> images);
  // transposition (a b) in S_n
  static Perm transposition(int n, int a, int b);
  // cycle (c1 c2 ... ck) in S_n
  static Perm cycle(int n, const std::vector<int>& c);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i - 1]; }
  const std::vector<int>& images() const { return img_; }

  Perm then(const Perm& g) const;  // i -> g(this(i))
  Perm inverse() const;
  int sign() const;
  bool is_identity() const;

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  std::string str() const;  // cycle notation, e.g. "(1 2)(3 4)"

 private:
  std::vector<int> img_;
};

// All permutations of S_n in lexicographic order of image tuples.
std::vector<Perm> symmetric_group(int n);

// (p,q)-unshuffles: sigma with sigma(1)<...<sigma(p) and sigma(p+1)<...<sigma(p+q),
// in lexicographic order of image tuples.
std::vector<Perm> unshuffles(int p, int q);

}  // namespace natop
