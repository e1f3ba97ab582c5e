#pragma once

#include <map>
#include <optional>
#include <vector>

#include "natop/rational.hpp"

namespace natop {

using SparseVec = std::map<int, Rat>;  // index -> nonzero coefficient

SparseVec vec_add(const SparseVec& a, const SparseVec& b);
SparseVec vec_scale(const SparseVec& a, const Rat& c);
SparseVec vec_axpy(const SparseVec& a, const Rat& c, const SparseVec& b);  // a + c*b
bool vec_is_zero(const SparseVec& a);

class SparseMat {
 public:
  SparseMat() : rows_(0), cols_(0) {}
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  void add(int r, int c, const Rat& v);
  const SparseVec& col(int c) const { return col_[c]; }

  SparseVec apply(const SparseVec& x) const;  // M x

  bool is_zero() const;

 private:
  int rows_, cols_;
  std::vector<SparseVec> col_;
};

// Row echelon data from fraction-free (Bareiss) elimination; rationals appear
// only in back-substitution.
struct Echelon {
  std::vector<SparseVec> rows;    // echelon rows (integer entries as Rat)
  std::vector<int> pivot_col;     // per echelon row
  int ncols = 0;
  int rank() const { return static_cast<int>(pivot_col.size()); }
};

Echelon echelon_from_rows(std::vector<SparseVec> rows, int ncols);
Echelon echelon(const SparseMat& m);  // rows of m

// Subspace of an ambient coordinate space, basis kept in reduced echelon form.
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  explicit Subspace(int ambient) : ambient_(ambient) {}
  static Subspace span(int ambient, const std::vector<SparseVec>& vectors);
  static Subspace full(int ambient);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<SparseVec>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const SparseVec& v) const;
  // coefficients of v in the basis, if v lies in the subspace
  std::optional<std::vector<Rat>> coordinates(const SparseVec& v) const;

 private:
  int ambient_;
  std::vector<SparseVec> basis_;  // reduced echelon: pivot 1, zeros at other pivots
  std::vector<int> pivots_;
};

// Exact kernel of M (vectors x with Mx = 0).
Subspace kernel_basis(const SparseMat& m);
int rank(const SparseMat& m);

// Any u with M u = v, or nullopt when v is not in the column span.
std::optional<SparseVec> solve_preimage(const SparseMat& m, const SparseVec& v);

// Complement spanned by the coordinate vectors at non-pivot indices.
Subspace complement(const Subspace& z);

// Projection with kernel Z, stored as x -> x - Q x where im Q = Z.
struct Projection {
  int ambient = 0;
  std::vector<SparseVec> qcol;  // columns of Q
  SparseVec apply(const SparseVec& x) const;
  bool kills(const SparseVec& x) const { return vec_is_zero(apply(x)); }
};

Projection projection_along(const Subspace& z);

// Signed permutation action of a finite group on the ambient basis:
// action[g][i] = (image index, sign).
using BasisAction = std::vector<std::vector<std::pair<int, int>>>;

SparseVec act_vec(const std::vector<std::pair<int, int>>& g, const SparseVec& x);

// Group-averaged projection with kernel Z, commuting with the action.
// Throws if Z is not stable under every group element.
Projection equivariant_projection(const Subspace& z, const BasisAction& action);

}  // namespace natop
