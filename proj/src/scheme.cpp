#include "natop/scheme.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "natop/covdiff.hpp"
#include "natop/differential.hpp"
#include "natop/graph_ops.hpp"

namespace natop {

namespace {

void all_scheme_wirings(Graph base, std::set<CanonGraph>* out) {
  int n = base.vertex_count();
  std::vector<std::pair<int, int>> slots;
  std::vector<int> cap;
  for (int v = 0; v < n; ++v)
    for (int g = 0; g < base.group_count(v); ++g)
      if (base.group_size(v, g) > 0) {
        slots.push_back({v, g});
        cap.push_back(base.group_size(v, g));
      }
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      out->insert(canonicalize(base).graph);
      return;
    }
    if (base.vertex(v).kind == VKind::Anchor) {
      rec(v + 1);
      return;
    }
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (cap[s] == 0) continue;
      --cap[s];
      base.set_out(v, Target{slots[s].first, slots[s].second});
      rec(v + 1);
      base.clear_out(v);
      ++cap[s];
    }
  };
  rec(0);
}

}  // namespace

GradedBasis enumerate_schemes(int d, const Bounds& bounds) {
  std::set<CanonGraph> found;
  // budget: sum over DNodes of (arity-1) + sum of VNode arities = d-1
  int budget = d - 1;
  // all multisets of d-arities (each >= 3, cost arity-1 >= 2)
  std::vector<std::vector<int>> dchoices;
  {
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int cap) {
      dchoices.push_back(cur);
      for (int a = std::min(cap, rest + 1); a >= 3; --a) {
        if (a - 1 > rest) continue;
        cur.push_back(a);
        rec(rest - (a - 1), a);
        cur.pop_back();
      }
    };
    rec(budget, bounds.max_arity);
  }
  for (const auto& ds : dchoices) {
    int dcost = 0;
    for (int a : ds) dcost += a - 1;
    int vbudget = budget - dcost;
    // compositions of vbudget into d labelled v-arities
    std::vector<int> varity(d, 0);
    std::function<void(int, int)> rec = [&](int i, int rest) {
      if (i == d) {
        if (rest != 0) return;
        Graph base;
        base.add_vertex(VKind::Anchor, 1);
        for (int f = 1; f <= d; ++f) base.add_vertex(VKind::VNode, varity[f - 1], f);
        for (int a : ds) base.add_vertex(VKind::DNode, a);
        if (base.vertex_count() > bounds.max_vertices) return;
        all_scheme_wirings(base, &found);
        return;
      }
      for (int a = 0; a <= rest && a <= bounds.max_arity; ++a) {
        varity[i] = a;
        rec(i + 1, rest - a);
      }
    };
    rec(0, vbudget);
  }
  GradedBasis basis;
  basis.elems.assign(found.begin(), found.end());
  basis.build_index();
  return basis;
}

int scheme_vf_order(const CanonGraph& scheme) {
  Graph g = scheme.decode();
  int s = 0;
  for (const Vertex& v : g.vertices())
    if (v.kind == VKind::VNode) s += v.arity;
  return s;
}

LinComb leading_realization(const LeadingTerm& x) {
  int n = x.arity();
  LinComb out;
  for (const auto& [u, c] : x.coeffs()) {
    Graph g;
    int anchor = g.add_vertex(VKind::Anchor, 1);
    int nab = g.add_vertex(VKind::Nabla, n);
    for (int i = 1; i <= n - 2; ++i)
      g.set_out(g.add_vertex(VKind::Black, 0, u(i)), Target{nab, 0});
    for (int i = n - 1; i <= n; ++i)
      g.set_out(g.add_vertex(VKind::Black, 0, u(i)), Target{nab, 1});
    g.set_out(nab, Target{anchor, 0});
    out.add_graph(g, c);
  }
  return out;
}

namespace {

// leading patch on legs -1..-n for grafting into a DNode
LinComb leading_patch(const LeadingTerm& x) {
  int n = x.arity();
  LinComb out;
  for (const auto& [u, c] : x.coeffs()) {
    Graph g;
    int anchor = g.add_vertex(VKind::Anchor, 1);
    int nab = g.add_vertex(VKind::Nabla, n);
    for (int i = 1; i <= n - 2; ++i)
      g.set_out(g.add_vertex(VKind::Black, 0, -u(i)), Target{nab, 0});
    for (int i = n - 1; i <= n; ++i)
      g.set_out(g.add_vertex(VKind::Black, 0, -u(i)), Target{nab, 1});
    g.set_out(nab, Target{anchor, 0});
    out.add_graph(g, c);
  }
  return out;
}

// change every VNode to the black vertex with the same wiring
Graph vnodes_to_blacks(const Graph& g) {
  Graph h;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Vertex& x = g.vertex(v);
    h.add_vertex(x.kind == VKind::VNode ? VKind::Black : x.kind, x.arity, x.label);
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!g.out(v)) continue;
    Target t = *g.out(v);
    // ordered VNode slots collapse into the single symmetric black group
    h.set_out(v, Target{t.v, g.vertex(t.v).kind == VKind::VNode ? 0 : t.g});
  }
  return h;
}

int first_of_kind(const Graph& g, VKind k) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.vertex(v).kind == k) return v;
  return -1;
}

}  // namespace

LinComb scheme_leading_image(const CanonGraph& scheme,
                             const std::function<LeadingTerm(int)>& leading_of_arity) {
  LinComb work = LinComb::of(vnodes_to_blacks(scheme.decode()));
  // graft a leading patch into one DNode at a time
  while (true) {
    bool found = false;
    LinComb next;
    for (const auto& [cg, c] : work.terms()) {
      Graph g = cg.decode();
      int v = first_of_kind(g, VKind::DNode);
      if (v < 0) {
        next.add(cg, c);
        continue;
      }
      found = true;
      next += graft(g, v, leading_patch(leading_of_arity(g.vertex(v).arity))) * c;
    }
    work = next;
    if (!found) break;
  }
  return work;
}

GeneratorFamily curvature_family(int max_d_arity, int max_v_arity) {
  GeneratorFamily fam;
  for (int n = 3; n <= max_d_arity; ++n) fam.dgen[n] = curvature_derivative_op(n);
  for (int p = 0; p <= max_v_arity; ++p) {
    // insertion of a p-times differentiated field: the symmetrized derivative
    // operator of arity p+1, with the differentiated field labelled p+1
    fam.vgen[p] = field_derivative_sym_op(p + 1);
  }
  return fam;
}

LinComb scheme_realize(const CanonGraph& scheme, const GeneratorFamily& fam) {
  LinComb work = LinComb::of(scheme.decode());
  while (true) {
    bool found = false;
    LinComb next;
    for (const auto& [cg, c] : work.terms()) {
      Graph g = cg.decode();
      int v = first_of_kind(g, VKind::DNode);
      VKind kind = VKind::DNode;
      if (v < 0) {
        v = first_of_kind(g, VKind::VNode);
        kind = VKind::VNode;
      }
      if (v < 0) {
        next.add(cg, c);
        continue;
      }
      found = true;
      LinComb patch;
      if (kind == VKind::DNode) {
        auto it = fam.dgen.find(g.vertex(v).arity);
        if (it == fam.dgen.end()) throw std::invalid_argument("scheme_realize: missing arity");
        for (const auto& [pg, pc] : it->second.terms())
          patch.add_graph(to_patch(pg.decode(), g.vertex(v).arity), pc);
      } else {
        int p = g.vertex(v).arity;
        auto it = fam.vgen.find(p);
        if (it == fam.vgen.end()) throw std::invalid_argument("scheme_realize: missing v-arity");
        for (const auto& [pg, pc] : it->second.terms()) {
          Graph pat = to_patch(pg.decode(), p);
          // the remaining real black (labelled p+1) becomes this field
          for (int u = 0; u < pat.vertex_count(); ++u)
            if (pat.vertex(u).kind == VKind::Black && pat.vertex(u).label == p + 1)
              pat.vertex(u).label = g.vertex(v).label;
          patch.add_graph(pat, pc);
        }
      }
      next += graft(g, v, patch) * c;
    }
    work = next;
    if (!found) break;
  }
  return work;
}

LinComb scheme_realize(const LinComb& schemes, const GeneratorFamily& fam) {
  LinComb out;
  for (const auto& [g, c] : schemes.terms()) out += scheme_realize(g, fam) * c;
  return out;
}

SchemeSection build_section(int d, const Bounds& bounds,
                            const std::function<LeadingTerm(int)>& leading_of_arity,
                            const GradedBasis& ambient, const Subspace& target) {
  GradedBasis schemes = enumerate_schemes(d, bounds);
  SchemeSection sec;
  std::vector<SparseVec> picked;
  for (const CanonGraph& s : schemes.elems) {
    if (static_cast<int>(picked.size()) == target.dim()) break;
    LinComb img = scheme_leading_image(s, leading_of_arity);
    SparseVec v = lincomb_to_vec(img, ambient);
    if (vec_is_zero(v)) continue;
    std::vector<SparseVec> trial = picked;
    trial.push_back(v);
    if (Subspace::span(ambient.dim(), trial).dim() == static_cast<int>(trial.size())) {
      picked.push_back(v);
      sec.schemes.push_back(s);
      sec.image_coords.push_back(v);
    }
  }
  if (static_cast<int>(picked.size()) != target.dim())
    throw std::runtime_error("build_section: leading image does not span the target");
  return sec;
}

}  // namespace natop
