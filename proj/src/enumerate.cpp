#include "natop/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace natop {

int GradedBasis::find(const CanonGraph& g) const {
  auto it = index.find(g);
  return it == index.end() ? -1 : it->second;
}

void GradedBasis::build_index() {
  index.clear();
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], static_cast<int>(i));
}

namespace {

// weakly decreasing sequences of `count` values in [lo, hi] with given sum
void arity_multisets(int count, int lo, int hi, int sum,
                     const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> cur(count);
  std::function<void(int, int, int)> rec = [&](int i, int remaining, int cap) {
    if (i == count) {
      if (remaining == 0) emit(cur);
      return;
    }
    for (int a = std::min(cap, remaining); a >= lo; --a) {
      cur[i] = a;
      rec(i + 1, remaining - a, a);
    }
  };
  if (count == 0) {
    if (sum == 0) emit({});
    return;
  }
  rec(0, sum, hi);
}

struct SlotPool {
  std::vector<int> owner_vertex;
  std::vector<int> owner_group;
  std::vector<int> capacity;
};

void all_wirings(Graph base, const SlotPool& pool, std::set<CanonGraph>* out) {
  int n = base.vertex_count();
  std::vector<int> cap = pool.capacity;
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      CanonResult r = canonicalize(base);
      if (!r.zero) out->insert(r.graph);
      return;
    }
    if (base.vertex(v).kind == VKind::Anchor) {
      rec(v + 1);
      return;
    }
    for (std::size_t s = 0; s < cap.size(); ++s) {
      if (cap[s] == 0) continue;
      --cap[s];
      base.set_out(v, Target{pool.owner_vertex[s], pool.owner_group[s]});
      rec(v + 1);
      base.clear_out(v);
      ++cap[s];
    }
  };
  rec(0);
}

}  // namespace

GradedBasis enumerate_basis(const SpaceSpec& spec, const Bigrade& grade, const Bounds& bounds) {
  GradedBasis basis;
  int d = spec.fields;
  int n_nabla = grade.nabla();
  int n_white = grade.white();
  if (n_nabla < 0 || n_white < 0) return basis;

  int budget = d - 1 - n_nabla;  // sum of black arities + nabla derivs + (white arity - 1)
  if (budget < 0) return basis;
  int vcount = 1 + d + n_nabla + n_white;
  if (vcount > bounds.max_vertices) return basis;

  std::set<CanonGraph> found;
  int free_blacks = d - spec.pinned;

  // split the budget: blacks (ordered tuple over free labels), nabla derivative
  // arities (multiset), white arities-1 (multiset, arity >= 2)
  std::vector<int> black_arity(d, 0);
  std::function<void(int, int)> rec_black = [&](int i, int used) {
    if (i == free_blacks) {
      int rest = budget - used;
      // enumerate nabla multisets with sum k_total for every split of `rest`
      for (int k_total = 0; k_total <= rest; ++k_total) {
        int w_excess = rest - k_total;  // sum over whites of (arity - 1)
        arity_multisets(n_nabla, 0, bounds.max_arity - 2, k_total, [&](const std::vector<int>& ks) {
          arity_multisets(n_white, 1, bounds.max_arity - 1, w_excess,
                          [&](const std::vector<int>& ws) {
                            // assemble the vertex set and wire it in all ways
                            Graph base;
                            base.add_vertex(VKind::Anchor, 1);
                            for (int f = 1; f <= d; ++f)
                              base.add_vertex(VKind::Black, black_arity[f - 1], f);
                            for (int k : ks) base.add_vertex(VKind::Nabla, k + 2);
                            for (int w : ws) base.add_vertex(VKind::White, w + 1);
                            SlotPool pool;
                            for (int v = 0; v < base.vertex_count(); ++v)
                              for (int g = 0; g < base.group_count(v); ++g)
                                if (base.group_size(v, g) > 0) {
                                  pool.owner_vertex.push_back(v);
                                  pool.owner_group.push_back(g);
                                  pool.capacity.push_back(base.group_size(v, g));
                                }
                            all_wirings(base, pool, &found);
                          });
        });
      }
      return;
    }
    // black labelled spec.pinned + 1 + i (the first `pinned` stay 0-ary)
    for (int a = 0; used + a <= budget && a <= bounds.max_arity; ++a) {
      black_arity[spec.pinned + i] = a;
      rec_black(i + 1, used + a);
    }
  };
  rec_black(0, 0);

  basis.elems.assign(found.begin(), found.end());
  basis.build_index();
  return basis;
}

GradedBasis enumerate_degree0(const SpaceSpec& spec, const Bounds& bounds) {
  GradedBasis all;
  std::set<CanonGraph> found;
  for (int nn = 0; nn <= spec.fields - 1; ++nn) {
    GradedBasis b = enumerate_basis(spec, Bigrade{-nn, nn}, bounds);
    found.insert(b.elems.begin(), b.elems.end());
  }
  all.elems.assign(found.begin(), found.end());
  all.build_index();
  return all;
}

std::vector<Bigrade> occupied_bigrades(const SpaceSpec& spec, const Bounds& bounds) {
  std::vector<Bigrade> out;
  for (int nn = 0; nn <= spec.fields - 1; ++nn)
    for (int nw = 0; nw <= spec.fields - 1 - nn; ++nw) {
      Bigrade g{-nn, nw + nn};
      if (enumerate_basis(spec, g, bounds).dim() > 0) out.push_back(g);
    }
  return out;
}

}  // namespace natop
