#include "natop/covdiff.hpp"

#include <stdexcept>

#include "natop/graph_ops.hpp"

namespace natop {

namespace {

int anchor_of(const Graph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertex(v).kind == VKind::Anchor) return v;
  throw std::invalid_argument("operator graph has no anchor");
}

int feeder_of_anchor(const Graph& g) {
  int a = anchor_of(g);
  auto src = g.in_sources(a, 0);
  if (src.size() != 1) throw std::invalid_argument("anchor not fed exactly once");
  return src[0];
}

int black_with_label(const Graph& g, int label) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertex(v).kind == VKind::Black && g.vertex(v).label == label) return v;
  return -1;
}

Graph relabel_shift(const Graph& g, int shift) {
  Graph h = g;
  for (int v = 0; v < h.vertex_count(); ++v) {
    Vertex& x = h.vertex(v);
    if (x.kind == VKind::Black && x.label >= 1) x.label += shift;
  }
  return h;
}

}  // namespace

LinComb shift_labels(const LinComb& x, int shift) {
  LinComb out;
  for (const auto& [g, c] : x.terms()) out.add_graph(relabel_shift(g.decode(), shift), c);
  return out;
}

LinComb identity_op() {
  Graph g;
  int a = g.add_vertex(VKind::Anchor, 1);
  int x = g.add_vertex(VKind::Black, 0, 1);
  g.set_out(x, Target{a, 0});
  return LinComb::of(g);
}

LinComb lie_bracket_op() {
  Graph g1;  // x2 differentiated along x1
  {
    int a = g1.add_vertex(VKind::Anchor, 1);
    int y = g1.add_vertex(VKind::Black, 1, 2);
    int x = g1.add_vertex(VKind::Black, 0, 1);
    g1.set_out(y, Target{a, 0});
    g1.set_out(x, Target{y, 0});
  }
  Graph g2;  // x1 differentiated along x2
  {
    int a = g2.add_vertex(VKind::Anchor, 1);
    int x = g2.add_vertex(VKind::Black, 1, 1);
    int y = g2.add_vertex(VKind::Black, 0, 2);
    g2.set_out(x, Target{a, 0});
    g2.set_out(y, Target{x, 0});
  }
  return LinComb::of(g1) - LinComb::of(g2);
}

LinComb covariant_deriv_op() {
  Graph g1;  // connection term
  {
    int a = g1.add_vertex(VKind::Anchor, 1);
    int n = g1.add_vertex(VKind::Nabla, 2);
    int x = g1.add_vertex(VKind::Black, 0, 1);
    int y = g1.add_vertex(VKind::Black, 0, 2);
    g1.set_out(n, Target{a, 0});
    g1.set_out(x, Target{n, 1});
    g1.set_out(y, Target{n, 1});
  }
  Graph g2;  // derivative term
  {
    int a = g2.add_vertex(VKind::Anchor, 1);
    int y = g2.add_vertex(VKind::Black, 1, 2);
    int x = g2.add_vertex(VKind::Black, 0, 1);
    g2.set_out(y, Target{a, 0});
    g2.set_out(x, Target{y, 0});
  }
  return LinComb::of(g1) + LinComb::of(g2);
}

LinComb curvature_op() {
  LinComb out;
  // derivative-of-connection terms: nabla_1(x2; x1, x3) - nabla_1(x1; x2, x3)
  auto dterm = [](int deriv, int p1, int p2) {
    Graph g;
    int a = g.add_vertex(VKind::Anchor, 1);
    int n = g.add_vertex(VKind::Nabla, 3);
    int d = g.add_vertex(VKind::Black, 0, deriv);
    int u = g.add_vertex(VKind::Black, 0, p1);
    int v = g.add_vertex(VKind::Black, 0, p2);
    g.set_out(n, Target{a, 0});
    g.set_out(d, Target{n, 0});
    g.set_out(u, Target{n, 1});
    g.set_out(v, Target{n, 1});
    return g;
  };
  // quadratic terms: nabla0(x2, nabla0(x1, x3)) - nabla0(x1, nabla0(x2, x3))
  auto qterm = [](int outer, int inner) {
    Graph g;
    int a = g.add_vertex(VKind::Anchor, 1);
    int n1 = g.add_vertex(VKind::Nabla, 2);
    int n2 = g.add_vertex(VKind::Nabla, 2);
    int u = g.add_vertex(VKind::Black, 0, outer);
    int v = g.add_vertex(VKind::Black, 0, inner);
    int z = g.add_vertex(VKind::Black, 0, 3);
    g.set_out(n1, Target{a, 0});
    g.set_out(u, Target{n1, 1});
    g.set_out(n2, Target{n1, 1});
    g.set_out(v, Target{n2, 1});
    g.set_out(z, Target{n2, 1});
    return g;
  };
  out.add_graph(dterm(2, 1, 3), Rat(1));
  out.add_graph(dterm(1, 2, 3), Rat(-1));
  out.add_graph(qterm(2, 1), Rat(1));
  out.add_graph(qterm(1, 2), Rat(-1));
  return out;
}

LinComb times_trace_deriv_op(int vec_label, int tr_label) {
  Graph g1;  // wheel through the connection vertex
  {
    int a = g1.add_vertex(VKind::Anchor, 1);
    int x = g1.add_vertex(VKind::Black, 0, vec_label);
    int n = g1.add_vertex(VKind::Nabla, 2);
    int y = g1.add_vertex(VKind::Black, 0, tr_label);
    g1.set_out(x, Target{a, 0});
    g1.set_out(n, Target{n, 1});  // self-loop: the trace
    g1.set_out(y, Target{n, 1});
  }
  Graph g2;  // wheel through the derivative of the field
  {
    int a = g2.add_vertex(VKind::Anchor, 1);
    int x = g2.add_vertex(VKind::Black, 0, vec_label);
    int y = g2.add_vertex(VKind::Black, 1, tr_label);
    g2.set_out(x, Target{a, 0});
    g2.set_out(y, Target{y, 0});
  }
  return LinComb::of(g1) + LinComb::of(g2);
}

LinComb covariant_derivative_op(const LinComb& op, int nslots) {
  LinComb out;
  for (const auto& [cg, c] : op.terms()) {
    Graph g = relabel_shift(cg.decode(), 1);

    // term 1: wrap the output into nabla0(x1, -)
    {
      Graph h = g;
      int a = anchor_of(h);
      int r = feeder_of_anchor(h);
      int n = h.add_vertex(VKind::Nabla, 2);
      int x1 = h.add_vertex(VKind::Black, 0, 1);
      h.set_out(r, Target{n, 1});
      h.set_out(n, Target{a, 0});
      h.set_out(x1, Target{n, 1});
      out.add_graph(h, c);
    }
    // term 2: Leibniz bump of every jet vertex
    for (int v = 0; v < g.vertex_count(); ++v) {
      VKind k = g.vertex(v).kind;
      if (k != VKind::Black && k != VKind::Nabla) continue;
      Graph h = g;
      h.vertex(v).arity += 1;
      int x1 = h.add_vertex(VKind::Black, 0, 1);
      h.set_out(x1, Target{v, 0});  // derivative block is group 0 for both kinds
      out.add_graph(h, c);
    }
  }
  // term 3: -sum over tensor slots of the derivative insertion (its flat
  // part cancels the Leibniz bumps of the slot vertices)
  LinComb shifted = shift_labels(op, 1);
  for (int i = 2; i <= nslots + 1; ++i) {
    LinComb insertion;
    {
      Graph p1;  // connection part
      int pa = p1.add_vertex(VKind::Anchor, 1);
      int pn = p1.add_vertex(VKind::Nabla, 2);
      int px = p1.add_vertex(VKind::Black, 0, 1);
      int pb = p1.add_vertex(VKind::Black, 0, i);
      p1.set_out(pn, Target{pa, 0});
      p1.set_out(px, Target{pn, 1});
      p1.set_out(pb, Target{pn, 1});
      Graph p2;  // flat part
      int qa = p2.add_vertex(VKind::Anchor, 1);
      int qb = p2.add_vertex(VKind::Black, 1, i);
      int qx = p2.add_vertex(VKind::Black, 0, 1);
      p2.set_out(qb, Target{qa, 0});
      p2.set_out(qx, Target{qb, 0});
      insertion = LinComb::of(p1) + LinComb::of(p2);
    }
    for (const auto& [cg, c] : shifted.terms()) {
      Graph g = cg.decode();
      int slot = black_with_label(g, i);
      if (slot < 0 || g.vertex(slot).arity != 0)
        throw std::invalid_argument("covariant_derivative_op: slot is not an order-0 input");
      out += graft(g, slot, insertion) * (-c);
    }
  }
  return out;
}

LinComb symmetrize_first(const LinComb& op, int m, int total_fields) {
  if (m <= 1) return op;
  LinComb out;
  Int fact(1);
  for (int k = 2; k <= m; ++k) fact *= k;
  Rat inv(Int(1), fact);
  for (const Perm& s : symmetric_group(m)) {
    std::vector<int> img(total_fields);
    for (int i = 1; i <= total_fields; ++i) img[i - 1] = i <= m ? s(i) : i;
    out += act_fields(op, Perm(img)) * inv;
  }
  return out;
}

LinComb compose_at(const LinComb& outer, int slot, int d_out, const LinComb& inner, int d_in) {
  LinComb out;
  for (const auto& [ocg, oc] : outer.terms()) {
    Graph og = ocg.decode();
    for (int v = 0; v < og.vertex_count(); ++v) {
      Vertex& x = og.vertex(v);
      if (x.kind == VKind::Black && x.label >= 1 && x.label != slot && x.label <= d_out)
        x.label = x.label < slot ? x.label : x.label + d_in - 1;
    }
    int sv = black_with_label(og, slot);
    if (sv < 0 || og.vertex(sv).arity != 0)
      throw std::invalid_argument("compose_at: slot is not an order-0 input");
    for (const auto& [icg, ic] : inner.terms()) {
      Graph ig = icg.decode();
      for (int v = 0; v < ig.vertex_count(); ++v) {
        Vertex& x = ig.vertex(v);
        if (x.kind == VKind::Black && x.label >= 1 && x.label <= d_in)
          x.label = slot + x.label - 1;
      }
      GraftResult r = graft_single(og, sv, ig);
      out.add_graph(r.graph, oc * ic);
    }
  }
  return out;
}

LinComb mul_trace(const LinComb& scalar_src, int slot, const LinComb& vec_op) {
  LinComb out;
  for (const auto& [scg, sc] : scalar_src.terms()) {
    Graph sg = scg.decode();
    int sv = black_with_label(sg, slot);
    if (sv < 0 || sg.vertex(sv).arity != 0)
      throw std::invalid_argument("mul_trace: traced slot is not an order-0 input");
    int sa = anchor_of(sg);
    int sr = feeder_of_anchor(sg);
    if (sr == sv) throw std::invalid_argument("mul_trace: trace of a bare wire");
    Target hole = *sg.out(sv);
    for (const auto& [vcg, vc] : vec_op.terms()) {
      Graph u = vcg.decode();
      std::vector<int> remap(sg.vertex_count(), -1);
      for (int v = 0; v < sg.vertex_count(); ++v) {
        if (v == sa || v == sv) continue;
        const Vertex& x = sg.vertex(v);
        remap[v] = u.add_vertex(x.kind, x.arity, x.label);
      }
      for (int v = 0; v < sg.vertex_count(); ++v) {
        if (v == sa || v == sv || !sg.out(v)) continue;
        Target t = *sg.out(v);
        if (v == sr)
          u.set_out(remap[v], Target{remap[hole.v], hole.g});  // close the wheel
        else
          u.set_out(remap[v], Target{remap[t.v], t.g});
      }
      out.add_graph(u, sc * vc);
    }
  }
  return out;
}

LinComb explicit_arity5_correction() {
  // composite C(y1..y5) = R(y1, R(y2,y3)(y4))(y5)
  LinComb r = curvature_op();
  LinComb comp = compose_at(r, 2, 3, r, 3);
  struct Term {
    int w, a, b, c, d, e;
  };
  // weight * R(a, R(b,c)(d))(e) over the slots (1..5)
  const Term terms[] = {
      {2, 1, 3, 5, 4, 2},  {-2, 1, 4, 5, 3, 2}, {2, 2, 3, 5, 4, 1},  {-2, 2, 4, 5, 3, 1},
      {2, 1, 3, 4, 2, 5},  {2, 2, 3, 4, 1, 5},  {1, 3, 1, 5, 2, 4},  {1, 3, 2, 5, 1, 4},
      {-1, 4, 1, 5, 2, 3}, {-1, 4, 2, 5, 1, 3}, {1, 1, 3, 5, 2, 4},  {1, 2, 3, 5, 1, 4},
      {-1, 1, 4, 5, 2, 3}, {-1, 2, 4, 5, 1, 3}, {1, 4, 3, 1, 2, 5},  {1, 4, 3, 2, 1, 5},
      {-1, 3, 4, 1, 2, 5}, {-1, 3, 4, 2, 1, 5}, {1, 4, 3, 1, 5, 2},  {1, 4, 3, 2, 5, 1},
      {-1, 3, 4, 1, 5, 2}, {-1, 3, 4, 2, 5, 1}, {1, 3, 1, 5, 4, 2},  {1, 3, 2, 5, 4, 1},
      {-1, 4, 1, 5, 3, 2}, {-1, 4, 2, 5, 3, 1}};
  LinComb out;
  for (const Term& t : terms) {
    Perm sigma({t.a, t.b, t.c, t.d, t.e});
    out += act_fields(comp, sigma) * Rat(t.w);
  }
  return out * rat(-1, 2);
}

LinComb curvature_derivative_op(int n) {
  LinComb k = curvature_op();
  for (int m = 4; m <= n; ++m) k = covariant_derivative_op(k, m - 1);
  return k;
}

LinComb curvature_derivative_sym_op(int n) {
  return symmetrize_first(curvature_derivative_op(n), n - 3, n);
}

LinComb field_derivative_sym_op(int n) {
  LinComb v = identity_op();
  for (int m = 2; m <= n; ++m) v = covariant_derivative_op(v, m - 2);
  return symmetrize_first(v, n - 1, n);
}

}  // namespace natop
