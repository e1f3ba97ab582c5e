#include "natop/perturb.hpp"

#include <stdexcept>

#include "natop/graph_ops.hpp"
#include "natop/scheme.hpp"

namespace natop {

ComplexSlice build_slice(const SpaceSpec& spec, const Bounds& bounds) {
  ComplexSlice s;
  s.spec = spec;
  s.bounds = bounds;
  s.rmax = spec.fields - 1;
  for (int r = 0; r <= s.rmax; ++r)
    s.diag.push_back(enumerate_basis(spec, Bigrade{-r, r}, bounds));
  while (s.rmax > 0 && s.diag[s.rmax].dim() == 0) {
    s.diag.pop_back();
    --s.rmax;
  }
  for (int r = 0; r < s.rmax; ++r)
    s.super.push_back(enumerate_basis(spec, Bigrade{-r, r + 1}, bounds));
  for (int r = 0; r < s.rmax; ++r)
    s.dv.push_back(differential_matrix(s.diag[r], s.super[r],
                                       [](const CanonGraph& g) { return delta_v(g); }));
  for (int r = 0; r < s.rmax; ++r)
    s.dh.push_back(differential_matrix(s.diag[r + 1], s.super[r],
                                       [](const CanonGraph& g) { return delta_h(g); }));
  return s;
}

namespace {

// relabelling action of the symmetric group on the pinned inputs; the
// diagonal bases carry no whites, so every sign is +1
BasisAction pinned_action(const GradedBasis& basis, int pinned) {
  BasisAction action;
  for (const Perm& g : symmetric_group(pinned)) {
    std::vector<std::pair<int, int>> row(basis.dim());
    for (int i = 0; i < basis.dim(); ++i) {
      CanonResult r = canonicalize(relabel_fields(basis.elems[i].decode(), g));
      if (r.zero) throw std::logic_error("pinned_action: unexpected vanishing");
      int j = basis.find(r.graph);
      if (j < 0) throw std::logic_error("pinned_action: image outside basis");
      row[i] = {j, r.sign};
    }
    action.push_back(row);
  }
  return action;
}

}  // namespace

PerturbationState make_state(const SpaceSpec& spec, const Bounds& bounds, bool equivariant) {
  PerturbationState st;
  st.slice = build_slice(spec, bounds);
  st.equivariant = equivariant;
  for (int r = 0; r <= st.slice.rmax; ++r) {
    Subspace z = r == 0 ? Subspace::full(st.slice.diag[0].dim())
                        : kernel_basis(st.slice.dh[r - 1]);
    if (equivariant) {
      st.proj.push_back(equivariant_projection(z, pinned_action(st.slice.diag[r], spec.pinned)));
    } else {
      st.proj.push_back(projection_along(z));
    }
    st.zh.push_back(std::move(z));
  }
  return st;
}

SparseVec u_step(const PerturbationState& st, int r, const SparseVec& x) {
  if (r >= st.slice.rmax) return {};
  SparseVec v = st.slice.dv[r].apply(x);
  if (vec_is_zero(v)) return {};
  auto u = solve_preimage(st.slice.dh[r], v);
  if (!u)
    throw std::runtime_error("u_step: horizontal acyclicity failed (internal invariant breach)");
  return st.proj[r + 1].apply(*u);
}

Cocycle beta(const PerturbationState& st, int r, const SparseVec& z) {
  if (!vec_is_zero(r == 0 ? SparseVec{} : st.slice.dh[r - 1].apply(z)))
    throw std::invalid_argument("beta: input is not a horizontal cocycle");
  Cocycle c;
  c.leading = vec_to_lincomb(z, st.slice.diag[r]);
  c.leading_grade = r;
  c.value = c.leading;
  SparseVec cur = z;
  Rat sign(1);
  for (int k = r; k < st.slice.rmax; ++k) {
    cur = u_step(st, k, cur);
    if (vec_is_zero(cur)) break;
    sign = -sign;
    c.value += vec_to_lincomb(cur, st.slice.diag[k + 1]) * sign;
  }
  return c;
}

Cocycle ideal_generator(int n, const LeadingTerm& leading, bool equivariant,
                        const Bounds& bounds) {
  if (leading.theta() != 0)
    throw std::invalid_argument("ideal_generator: leading term is not admissible");
  PerturbationState st = make_state(SpaceSpec{n, n}, bounds, equivariant);
  LinComb xi = leading_realization(leading);
  SparseVec z = lincomb_to_vec(xi, st.slice.diag[1]);
  return beta(st, 1, z);
}

Cocycle ideal_insertion(int p, bool equivariant, const Bounds& bounds) {
  PerturbationState st = make_state(SpaceSpec{p + 1, p}, bounds, equivariant);
  Graph g;
  int anchor = g.add_vertex(VKind::Anchor, 1);
  int b = g.add_vertex(VKind::Black, p, p + 1);
  for (int i = 1; i <= p; ++i) g.set_out(g.add_vertex(VKind::Black, 0, i), Target{b, 0});
  g.set_out(b, Target{anchor, 0});
  SparseVec z = lincomb_to_vec(LinComb::of(g), st.slice.diag[0]);
  return beta(st, 0, z);
}

LinComb correction_term(const Cocycle& ideal, const LinComb& baseline) {
  LinComb p = ideal.value - baseline;
  // both share the leading part, so the difference starts strictly lower
  if (!p.is_zero() && p.min_nabla_count() <= ideal.leading_grade)
    throw std::invalid_argument("correction_term: leading terms differ");
  return p;
}

}  // namespace natop
