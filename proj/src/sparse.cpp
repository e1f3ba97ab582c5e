#include "natop/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace natop {

SparseVec vec_add(const SparseVec& a, const SparseVec& b) { return vec_axpy(a, Rat(1), b); }

SparseVec vec_scale(const SparseVec& a, const Rat& c) {
  SparseVec r;
  if (c == 0) return r;
  for (const auto& [i, v] : a) r.emplace(i, v * c);
  return r;
}

SparseVec vec_axpy(const SparseVec& a, const Rat& c, const SparseVec& b) {
  SparseVec r = a;
  if (c == 0) return r;
  for (const auto& [i, v] : b) {
    auto it = r.find(i);
    if (it == r.end()) {
      r.emplace(i, c * v);
    } else {
      it->second += c * v;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

bool vec_is_zero(const SparseVec& a) { return a.empty(); }

void SparseMat::add(int r, int c, const Rat& v) {
  if (v == 0) return;
  auto& col = col_[c];
  auto it = col.find(r);
  if (it == col.end()) {
    col.emplace(r, v);
  } else {
    it->second += v;
    if (it->second == 0) col.erase(it);
  }
}

SparseVec SparseMat::apply(const SparseVec& x) const {
  SparseVec r;
  for (const auto& [c, v] : x) r = vec_axpy(r, v, col_[c]);
  return r;
}

bool SparseMat::is_zero() const {
  for (const auto& c : col_)
    if (!c.empty()) return false;
  return true;
}

namespace {

// clear denominators and common content of a row
void normalize_row(SparseVec& row) {
  for (auto it = row.begin(); it != row.end();)
    it = it->second == 0 ? row.erase(it) : std::next(it);
  if (row.empty()) return;
  Int lcm(1);
  for (const auto& [i, v] : row) lcm = boost::multiprecision::lcm(lcm, denominator(v));
  Int gcd(0);
  for (auto& [i, v] : row) {
    Int n = numerator(v) * (lcm / denominator(v));
    v = Rat(n);
    gcd = boost::multiprecision::gcd(gcd, n);
  }
  if (gcd > 1)
    for (auto& [i, v] : row) v = Rat(numerator(v) / gcd);
}

}  // namespace

Echelon echelon_from_rows(std::vector<SparseVec> rows, int ncols) {
  for (auto& r : rows) normalize_row(r);
  Echelon e;
  e.ncols = ncols;
  Rat prev(1);
  std::vector<char> done(rows.size(), 0);
  while (true) {
    // next pivot column: smallest column with a nonzero in a remaining row
    int pc = ncols;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!done[i] && !rows[i].empty()) pc = std::min(pc, rows[i].begin()->first);
    if (pc >= ncols) break;
    // pivot row: fewest nonzeros among candidates (deterministic tie-break)
    int pr = -1;
    std::size_t best = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (done[i] || rows[i].empty() || rows[i].begin()->first != pc) continue;
      if (pr < 0 || rows[i].size() < best) {
        pr = static_cast<int>(i);
        best = rows[i].size();
      }
    }
    Rat p = rows[pr].begin()->second;
    // fraction-free step: every remaining row r := (p*r - r[pc]*pivot)/prev
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (done[i] || static_cast<int>(i) == pr) continue;
      Rat m(0);
      auto it = rows[i].find(pc);
      if (it != rows[i].end()) m = it->second;
      SparseVec nr;
      {
        SparseVec t = vec_scale(rows[i], p);
        t = vec_axpy(t, -m, rows[pr]);
        for (auto& [j, v] : t) {
          Rat q = v / prev;  // exact by the Sylvester two-determinant identity
          if (q != 0) nr.emplace(j, q);
        }
      }
      rows[i] = std::move(nr);
    }
    e.rows.push_back(rows[pr]);
    e.pivot_col.push_back(pc);
    done[pr] = 1;
    prev = p;
  }
  return e;
}

Echelon echelon(const SparseMat& m) {
  std::vector<SparseVec> rows(m.rows());
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.col(c)) rows[r].emplace(c, v);
  return echelon_from_rows(std::move(rows), m.cols());
}

namespace {

// reduced echelon: pivots scaled to 1 and eliminated from the other rows
std::vector<SparseVec> reduce(const Echelon& e) {
  std::vector<SparseVec> rows = e.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rat p = rows[i].at(e.pivot_col[i]);
    rows[i] = vec_scale(rows[i], Rat(1) / p);
  }
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t j = 0; j < i; ++j) {
      auto it = rows[j].find(e.pivot_col[i]);
      if (it != rows[j].end()) rows[j] = vec_axpy(rows[j], -it->second, rows[i]);
    }
  }
  return rows;
}

}  // namespace

Subspace Subspace::span(int ambient, const std::vector<SparseVec>& vectors) {
  Echelon e = echelon_from_rows(vectors, ambient);
  Subspace s(ambient);
  s.basis_ = reduce(e);
  s.pivots_ = e.pivot_col;
  return s;
}

Subspace Subspace::full(int ambient) {
  Subspace s(ambient);
  for (int i = 0; i < ambient; ++i) {
    s.basis_.push_back(SparseVec{{i, Rat(1)}});
    s.pivots_.push_back(i);
  }
  return s;
}

bool Subspace::contains(const SparseVec& v) const { return coordinates(v).has_value(); }

std::optional<std::vector<Rat>> Subspace::coordinates(const SparseVec& v) const {
  SparseVec rest = v;
  std::vector<Rat> coeff(basis_.size(), Rat(0));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    auto it = rest.find(pivots_[i]);
    if (it == rest.end()) continue;
    coeff[i] = it->second;
    rest = vec_axpy(rest, -coeff[i], basis_[i]);
  }
  if (!rest.empty()) return std::nullopt;
  return coeff;
}

Subspace kernel_basis(const SparseMat& m) {
  Echelon e = echelon(m);
  std::vector<SparseVec> red = reduce(e);
  std::vector<char> is_pivot(m.cols(), 0);
  for (int pc : e.pivot_col) is_pivot[pc] = 1;
  std::vector<SparseVec> kernel;
  for (int j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    SparseVec x{{j, Rat(1)}};
    for (std::size_t i = 0; i < red.size(); ++i) {
      auto it = red[i].find(j);
      if (it != red[i].end()) x.emplace(e.pivot_col[i], -it->second);
    }
    kernel.push_back(std::move(x));
  }
  return Subspace::span(m.cols(), kernel);
}

int rank(const SparseMat& m) { return echelon(m).rank(); }

std::optional<SparseVec> solve_preimage(const SparseMat& m, const SparseVec& v) {
  // augmented system with the rhs as an extra column
  std::vector<SparseVec> rows(m.rows());
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, val] : m.col(c)) rows[r].emplace(c, val);
  int vcol = m.cols();
  for (const auto& [r, val] : v) rows[r].emplace(vcol, val);
  Echelon e = echelon_from_rows(std::move(rows), m.cols() + 1);
  for (int pc : e.pivot_col)
    if (pc == vcol) return std::nullopt;  // inconsistent
  std::vector<SparseVec> red = reduce(e);
  SparseVec u;
  for (std::size_t i = 0; i < red.size(); ++i) {
    auto it = red[i].find(vcol);
    if (it != red[i].end()) u.emplace(e.pivot_col[i], it->second);
  }
  return u;
}

Subspace complement(const Subspace& z) {
  std::vector<char> is_pivot(z.ambient(), 0);
  for (int pc : z.pivots()) is_pivot[pc] = 1;
  std::vector<SparseVec> basis;
  for (int j = 0; j < z.ambient(); ++j)
    if (!is_pivot[j]) basis.push_back(SparseVec{{j, Rat(1)}});
  return Subspace::span(z.ambient(), basis);
}

SparseVec Projection::apply(const SparseVec& x) const {
  SparseVec qx;
  for (const auto& [i, v] : x)
    if (!qcol[i].empty()) qx = vec_axpy(qx, v, qcol[i]);
  return vec_axpy(x, Rat(-1), qx);
}

Projection projection_along(const Subspace& z) {
  Projection p;
  p.ambient = z.ambient();
  p.qcol.assign(z.ambient(), SparseVec{});
  // Q x = sum_i x[pivot_i] * z_i
  for (int i = 0; i < z.dim(); ++i) p.qcol[z.pivots()[i]] = z.basis()[i];
  return p;
}

SparseVec act_vec(const std::vector<std::pair<int, int>>& g, const SparseVec& x) {
  SparseVec r;
  for (const auto& [i, v] : x) {
    const auto& [j, s] = g[i];
    auto it = r.find(j);
    Rat add = s > 0 ? v : -v;
    if (it == r.end()) {
      if (add != 0) r.emplace(j, add);
    } else {
      it->second += add;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

Projection equivariant_projection(const Subspace& z, const BasisAction& action) {
  for (const auto& g : action)
    for (const auto& b : z.basis())
      if (!z.contains(act_vec(g, b)))
        throw std::invalid_argument("equivariant_projection: subspace is not stable");

  Projection plain = projection_along(z);
  int n = z.ambient();
  // average the complement projection Q over conjugation by the group
  std::vector<SparseVec> avg(n);
  Rat inv(Int(1), Int(action.size()));
  for (const auto& g : action) {
    // inverse of the signed permutation
    std::vector<std::pair<int, int>> ginv(n);
    for (int i = 0; i < n; ++i) ginv[g[i].first] = {i, g[i].second};
    for (int j = 0; j < n; ++j) {
      // column j of rho(g)^{-1} Q rho(g): Q applied to rho(g) e_j, mapped back
      auto [img, sgn] = g[j];
      const SparseVec& q = plain.qcol[img];
      if (q.empty()) continue;
      SparseVec back = act_vec(ginv, q);
      avg[j] = vec_axpy(avg[j], sgn > 0 ? inv : -inv, back);
    }
  }
  Projection p;
  p.ambient = n;
  p.qcol = std::move(avg);
  return p;
}

}  // namespace natop
