#include "natop/young.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace natop {

YoungDiagram::YoungDiagram(std::vector<int> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] <= 0) throw std::invalid_argument("YoungDiagram: rows must be positive");
    if (i > 0 && rows_[i] > rows_[i - 1])
      throw std::invalid_argument("YoungDiagram: rows must be weakly decreasing");
  }
}

int YoungDiagram::size() const { return std::accumulate(rows_.begin(), rows_.end(), 0); }

YoungDiagram YoungDiagram::transpose() const {
  std::vector<int> cols(rows_.empty() ? 0 : rows_[0], 0);
  for (int r : rows_)
    for (int j = 0; j < r; ++j) ++cols[j];
  return YoungDiagram(cols);
}

Int YoungDiagram::dimension() const {
  int n = size();
  std::vector<int> cols = transpose().rows();
  Int prod(1);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (int j = 0; j < rows_[i]; ++j) {
      int hook = (rows_[i] - j - 1) + (cols[j] - static_cast<int>(i) - 1) + 1;
      prod *= hook;
    }
  Int fact(1);
  for (int k = 2; k <= n; ++k) fact *= k;
  return fact / prod;
}

namespace {

// Murnaghan-Nakayama over border strips, on shapes given as multisets of rows.
Int mn_char(std::vector<int> shape, std::vector<int> cycles) {
  shape.erase(std::remove(shape.begin(), shape.end(), 0), shape.end());
  if (cycles.empty()) return shape.empty() ? Int(1) : Int(0);
  if (shape.empty()) return Int(0);
  int k = cycles.back();  // peel the smallest cycle last-first; any order works
  cycles.pop_back();
  Int total(0);
  int rows = static_cast<int>(shape.size());
  // try removing a border strip of size k ending in each row
  for (int top = 0; top < rows; ++top) {
    // strip occupying rows top..bot; in a border strip the rows are consecutive
    for (int bot = top; bot < rows; ++bot) {
      // strip shape is forced: in row i (top<=i<=bot) it covers columns
      // new_{i} .. old boundary.  Work it out from the staircase condition.
      std::vector<int> ns = shape;
      // cells removed from row i: shape[i] - target[i]; border strip condition:
      // target[i] = shape[i+1] - 1 for top <= i < bot (strip hugs the boundary),
      // target[bot] = shape[top] ... derive instead by direct construction:
      bool ok = true;
      int remove = k;
      for (int i = top; i < bot; ++i) {
        int take = shape[i] - (shape[i + 1] - 1);
        if (take <= 0) {
          ok = false;
          break;
        }
        ns[i] = shape[i + 1] - 1;
        remove -= take;
      }
      if (!ok || remove <= 0) continue;
      ns[bot] = shape[bot] - remove;
      if (ns[bot] < 0) continue;
      if (bot + 1 < rows && ns[bot] < shape[bot + 1]) continue;
      // check weakly decreasing at the seam above
      if (top > 0 && ns[top] > shape[top - 1]) continue;
      bool dec = true;
      for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i] > ns[i - 1]) dec = false;
      if (!dec) continue;
      int height = bot - top;
      Int sub = mn_char(ns, cycles);
      total += (height % 2 == 0) ? sub : -sub;
    }
  }
  return total;
}

}  // namespace

Int YoungDiagram::character(const std::vector<int>& ct) const {
  std::vector<int> cycles = ct;
  std::sort(cycles.begin(), cycles.end(), std::greater<int>());
  return mn_char(rows_, cycles);
}

std::vector<std::pair<YoungDiagram, Int>> two_column_decomposition(int n) {
  if (n < 3) throw std::invalid_argument("two_column_decomposition: n >= 3 required");
  std::vector<std::pair<YoungDiagram, Int>> out;
  for (int l2 = 1; l2 <= 2; ++l2) {
    int l1 = n - l2;
    if (l1 < 2 || l2 > l1) continue;
    YoungDiagram d({l1, l2});
    Int dim = d.dimension();
    out.emplace_back(std::move(d), std::move(dim));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

GroupRingElem young_symmetrizer(const YoungDiagram& d, int n) {
  if (d.size() != n) throw std::invalid_argument("young_symmetrizer: size mismatch");
  // standard tableau filled row by row, left to right
  std::vector<std::vector<int>> t;
  int next = 1;
  for (int r : d.rows()) {
    std::vector<int> row(r);
    std::iota(row.begin(), row.end(), next);
    next += r;
    t.push_back(std::move(row));
  }
  auto subgroup_sum = [&](const std::vector<std::vector<int>>& blocks, bool signed_sum) {
    GroupRingElem total = GroupRingElem::unit(n);
    for (const auto& block : blocks) {
      GroupRingElem part(n);
      std::vector<int> sorted = block;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> arr = sorted;
      do {
        Perm p = Perm::identity(n);
        std::vector<int> img = p.images();
        for (std::size_t i = 0; i < sorted.size(); ++i) img[sorted[i] - 1] = arr[i];
        Perm q{img};
        part.add(q, signed_sum ? Rat(q.sign()) : Rat(1));
      } while (std::next_permutation(arr.begin(), arr.end()));
      total = total * part;
    }
    return total;
  };
  std::vector<std::vector<int>> cols;
  for (std::size_t j = 0; j < static_cast<std::size_t>(d.rows()[0]); ++j) {
    std::vector<int> col;
    for (const auto& row : t)
      if (j < row.size()) col.push_back(row[j]);
    cols.push_back(std::move(col));
  }
  return subgroup_sum(t, false) * subgroup_sum(cols, true);
}

std::vector<int> cycle_type(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  std::vector<int> ct;
  for (int i = 1; i <= p.size(); ++i) {
    if (seen[i - 1]) continue;
    int len = 0;
    for (int j = i; !seen[j - 1]; j = p(j)) {
      seen[j - 1] = 1;
      ++len;
    }
    ct.push_back(len);
  }
  std::sort(ct.begin(), ct.end(), std::greater<int>());
  return ct;
}

GroupRingElem central_idempotent(const YoungDiagram& d, int n) {
  Int dim = d.dimension();
  Int fact(1);
  for (int k = 2; k <= n; ++k) fact *= k;
  GroupRingElem z(n);
  std::map<std::vector<int>, Int> chi;  // character is a class function
  for (const Perm& g : symmetric_group(n)) {
    std::vector<int> ct = cycle_type(g.inverse());
    auto it = chi.find(ct);
    if (it == chi.end()) it = chi.emplace(ct, d.character(ct)).first;
    z.add(g, Rat(dim * it->second, fact));
  }
  return z;
}

bool is_generator(const LeadingTerm& x) {
  if (!x.in_kernel()) throw std::invalid_argument("is_generator: element not in the kernel module");
  if (x.is_zero()) return false;
  int n = x.arity();
  for (const auto& [d, dim] : two_column_decomposition(n)) {
    if (x.act(central_idempotent(d, n)).is_zero()) return false;
  }
  return true;
}

}  // namespace natop
