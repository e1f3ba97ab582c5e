#include "natop/differential.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "natop/graph_ops.hpp"

namespace natop {

namespace {

int add_leg(Graph& p, int idx) {  // idx is 1-based
  return p.add_vertex(VKind::Black, 0, -idx);
}

struct Patch {
  Graph g;
  int top = -1;  // vertex feeding the anchor
  int bot = -1;  // inner vertex, when present
};

// black vertex keeps subset S below, the new white on top
Patch patch_black_wtop(int u, unsigned mask, int label) {
  Patch p;
  int anchor = p.g.add_vertex(VKind::Anchor, 1);
  int nb = __builtin_popcount(mask);
  int black = p.g.add_vertex(VKind::Black, nb, label);
  int white = p.g.add_vertex(VKind::White, u - nb + 1);
  for (int i = 1; i <= u; ++i) {
    int leg = add_leg(p.g, i);
    p.g.set_out(leg, Target{(mask >> (i - 1)) & 1u ? black : white, 0});
  }
  p.g.set_out(black, Target{white, 0});
  p.g.set_out(white, Target{anchor, 0});
  p.top = white;
  p.bot = black;
  return p;
}

// new white below on subset S, black keeps the rest and the top position
Patch patch_black_btop(int u, unsigned mask, int label) {
  Patch p;
  int anchor = p.g.add_vertex(VKind::Anchor, 1);
  int nb = __builtin_popcount(mask);
  int white = p.g.add_vertex(VKind::White, nb);
  int black = p.g.add_vertex(VKind::Black, u - nb + 1, label);
  for (int i = 1; i <= u; ++i) {
    int leg = add_leg(p.g, i);
    p.g.set_out(leg, Target{(mask >> (i - 1)) & 1u ? white : black, 0});
  }
  p.g.set_out(white, Target{black, 0});
  p.g.set_out(black, Target{anchor, 0});
  p.top = black;
  p.bot = white;
  return p;
}

// white splits in two; S goes below
Patch patch_white_split(int u, unsigned mask) {
  Patch p;
  int anchor = p.g.add_vertex(VKind::Anchor, 1);
  int nb = __builtin_popcount(mask);
  int bot = p.g.add_vertex(VKind::White, nb);
  int top = p.g.add_vertex(VKind::White, u - nb + 1);
  for (int i = 1; i <= u; ++i) {
    int leg = add_leg(p.g, i);
    p.g.set_out(leg, Target{(mask >> (i - 1)) & 1u ? bot : top, 0});
  }
  p.g.set_out(bot, Target{top, 0});
  p.g.set_out(top, Target{anchor, 0});
  p.top = top;
  p.bot = bot;
  return p;
}

// nabla legs: 1..k derivative block, k+1 and k+2 the symmetric pair

Patch patch_nabla_white(int k) {  // the horizontal replacement
  Patch p;
  int anchor = p.g.add_vertex(VKind::Anchor, 1);
  int white = p.g.add_vertex(VKind::White, k + 2);
  for (int i = 1; i <= k + 2; ++i) p.g.set_out(add_leg(p.g, i), Target{white, 0});
  p.g.set_out(white, Target{anchor, 0});
  p.top = white;
  return p;
}

// nabla keeps S and the pair, feeds the white together with the rest
Patch patch_nabla_out(int k, unsigned mask) {
  Patch p;
  int anchor = p.g.add_vertex(VKind::Anchor, 1);
  int ns = __builtin_popcount(mask);
  int nab = p.g.add_vertex(VKind::Nabla, ns + 2);
  int white = p.g.add_vertex(VKind::White, k - ns + 1);
  for (int i = 1; i <= k; ++i)
    p.g.set_out(add_leg(p.g, i), Target{(mask >> (i - 1)) & 1u ? nab : white, 0});
  p.g.set_out(add_leg(p.g, k + 1), Target{nab, 1});
  p.g.set_out(add_leg(p.g, k + 2), Target{nab, 1});
  p.g.set_out(nab, Target{white, 0});
  p.g.set_out(white, Target{anchor, 0});
  p.top = white;
  p.bot = nab;
  return p;
}

// white absorbs the rest of the derivative block and pair leg `pair_leg`,
// and feeds one pair slot of the nabla
Patch patch_nabla_pair(int k, unsigned mask, int pair_leg) {
  Patch p;
  int anchor = p.g.add_vertex(VKind::Anchor, 1);
  int ns = __builtin_popcount(mask);
  int white = p.g.add_vertex(VKind::White, k - ns + 1);
  int nab = p.g.add_vertex(VKind::Nabla, ns + 2);
  for (int i = 1; i <= k; ++i)
    p.g.set_out(add_leg(p.g, i), Target{(mask >> (i - 1)) & 1u ? nab : white, 0});
  int other = pair_leg == k + 1 ? k + 2 : k + 1;
  p.g.set_out(add_leg(p.g, pair_leg), Target{white, 0});
  p.g.set_out(add_leg(p.g, other), Target{nab, 1});
  p.g.set_out(white, Target{nab, 1});
  p.g.set_out(nab, Target{anchor, 0});
  p.top = nab;
  p.bot = white;
  return p;
}

// white eats subset S of the derivative block and feeds the derivative block
Patch patch_nabla_deriv(int k, unsigned mask) {
  Patch p;
  int anchor = p.g.add_vertex(VKind::Anchor, 1);
  int ns = __builtin_popcount(mask);
  int white = p.g.add_vertex(VKind::White, ns);
  int nab = p.g.add_vertex(VKind::Nabla, (k - ns + 1) + 2);
  for (int i = 1; i <= k; ++i)
    p.g.set_out(add_leg(p.g, i), Target{(mask >> (i - 1)) & 1u ? white : nab, 0});
  p.g.set_out(add_leg(p.g, k + 1), Target{nab, 1});
  p.g.set_out(add_leg(p.g, k + 2), Target{nab, 1});
  p.g.set_out(white, Target{nab, 0});
  p.g.set_out(nab, Target{anchor, 0});
  p.top = nab;
  p.bot = white;
  return p;
}

struct Replacement {
  Patch patch;
  Rat coeff;
};

std::vector<Replacement> black_replacements(int u, int label) {
  std::vector<Replacement> out;
  for (unsigned mask = 0; mask < (1u << u); ++mask) {
    int nb = __builtin_popcount(mask);
    if (nb <= u - 1) out.push_back({patch_black_wtop(u, mask, label), Rat(1)});
    if (nb >= 2) out.push_back({patch_black_btop(u, mask, label), Rat(-1)});
  }
  return out;
}

std::vector<Replacement> nabla_replacements(int k) {
  std::vector<Replacement> out;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    int ns = __builtin_popcount(mask);
    if (ns <= k - 1) {
      out.push_back({patch_nabla_out(k, mask), Rat(1)});
      out.push_back({patch_nabla_pair(k, mask, k + 1), Rat(-1)});
      out.push_back({patch_nabla_pair(k, mask, k + 2), Rat(-1)});
    }
    if (ns >= 2) out.push_back({patch_nabla_deriv(k, mask), Rat(-1)});
  }
  return out;
}

std::vector<Replacement> white_replacements(int u) {
  std::vector<Replacement> out;
  for (unsigned mask = 0; mask < (1u << u); ++mask) {
    int nb = __builtin_popcount(mask);
    if (nb >= 2 && nb <= u - 1) out.push_back({patch_white_split(u, mask), Rat(1)});
  }
  return out;
}

// apply one replacement at v, with the right white ordering
void apply_replacement(const Graph& g, const std::vector<int>& whites, int v,
                       const Replacement& rep, const Rat& outer, LinComb* acc) {
  GraftResult r = graft_single(g, v, rep.patch.g);
  std::vector<int> order;
  bool v_is_white = g.vertex(v).kind == VKind::White;
  auto patch_whites = [&]() {
    if (rep.patch.top >= 0 && rep.patch.g.vertex(rep.patch.top).kind == VKind::White)
      order.push_back(r.patch_map[rep.patch.top]);
    if (rep.patch.bot >= 0 && rep.patch.g.vertex(rep.patch.bot).kind == VKind::White)
      order.push_back(r.patch_map[rep.patch.bot]);
  };
  if (!v_is_white) {
    patch_whites();  // front insertion
    for (int w : whites) order.push_back(r.host_map[w]);
  } else {
    for (int w : whites) {
      if (w == v)
        patch_whites();  // (top, bot) in place of the old white
      else
        order.push_back(r.host_map[w]);
    }
  }
  acc->add_graph(r.graph, outer * rep.coeff, order);
}

}  // namespace

LinComb nabla_variation(int k) {
  static std::map<int, LinComb> memo;
  auto it = memo.find(k);
  if (it != memo.end()) return it->second;
  LinComb out;
  for (const Replacement& r : nabla_replacements(k)) out.add_graph(r.patch.g, r.coeff);
  memo.emplace(k, out);
  return out;
}

LinComb delta_v(const CanonGraph& cg) {
  Graph g = cg.decode();
  std::vector<int> whites = g.vertices_of_kind(VKind::White);
  LinComb out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Vertex& x = g.vertex(v);
    if (x.kind == VKind::Black) {
      for (const Replacement& r : black_replacements(x.arity, x.label))
        apply_replacement(g, whites, v, r, Rat(1), &out);
    } else if (x.kind == VKind::Nabla) {
      for (const Replacement& r : nabla_replacements(x.arity - 2))
        apply_replacement(g, whites, v, r, Rat(1), &out);
    } else if (x.kind == VKind::White) {
      int pos = 0;
      while (whites[pos] != v) ++pos;
      Rat sign(pos % 2 == 0 ? 1 : -1);
      for (const Replacement& r : white_replacements(x.arity))
        apply_replacement(g, whites, v, r, sign, &out);
    }
  }
  return out;
}

LinComb delta_h(const CanonGraph& cg) {
  Graph g = cg.decode();
  std::vector<int> whites = g.vertices_of_kind(VKind::White);
  LinComb out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.vertex(v).kind != VKind::Nabla) continue;
    Replacement r{patch_nabla_white(g.vertex(v).arity - 2), Rat(-1)};
    apply_replacement(g, whites, v, r, Rat(1), &out);
  }
  return out;
}

LinComb delta_v(const LinComb& x) {
  return x.map_terms([](const CanonGraph& g) { return delta_v(g); });
}
LinComb delta_h(const LinComb& x) {
  return x.map_terms([](const CanonGraph& g) { return delta_h(g); });
}
LinComb delta(const CanonGraph& g) { return delta_v(g) + delta_h(g); }
LinComb delta(const LinComb& x) { return delta_v(x) + delta_h(x); }

SparseVec lincomb_to_vec(const LinComb& x, const GradedBasis& basis) {
  SparseVec v;
  for (const auto& [g, c] : x.terms()) {
    int i = basis.find(g);
    if (i < 0) throw std::runtime_error("lincomb_to_vec: term outside basis");
    v.emplace(i, c);
  }
  return v;
}

LinComb vec_to_lincomb(const SparseVec& v, const GradedBasis& basis) {
  LinComb x;
  for (const auto& [i, c] : v) x.add(basis.elems[i], c);
  return x;
}

SparseMat differential_matrix(const GradedBasis& src, const GradedBasis& dst,
                              const std::function<LinComb(const CanonGraph&)>& d) {
  SparseMat m(dst.dim(), src.dim());
  for (int c = 0; c < src.dim(); ++c) {
    LinComb img = d(src.elems[c]);
    for (const auto& [g, coef] : img.terms()) {
      int r = dst.find(g);
      if (r < 0) throw std::runtime_error("differential_matrix: image term outside target basis");
      m.add(r, c, coef);
    }
  }
  return m;
}

std::vector<CanonGraph> nabla_tree_basis(int k) {
  std::set<CanonGraph> seen;
  std::vector<CanonGraph> out;
  auto take = [&](const Patch& p) {
    CanonResult r = canonicalize(p.g);
    if (!r.zero && seen.insert(r.graph).second) out.push_back(r.graph);
  };
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    int ns = __builtin_popcount(mask);
    if (ns <= k - 1) {
      take(patch_nabla_out(k, mask));
      take(patch_nabla_pair(k, mask, k + 1));
      take(patch_nabla_pair(k, mask, k + 2));
    }
    if (ns >= 2) take(patch_nabla_deriv(k, mask));
  }
  return out;
}

VariationSolve solve_nabla_variation(int k) {
  // ambient test graph: a bare nabla_k on 0-ary labelled blacks
  Graph t;
  int anchor = t.add_vertex(VKind::Anchor, 1);
  int nab = t.add_vertex(VKind::Nabla, k + 2);
  for (int i = 1; i <= k; ++i) t.set_out(t.add_vertex(VKind::Black, 0, i), Target{nab, 0});
  for (int i = k + 1; i <= k + 2; ++i) t.set_out(t.add_vertex(VKind::Black, 0, i), Target{nab, 1});
  t.set_out(nab, Target{anchor, 0});

  // candidate trees: one nabla of derivative arity a < k, one white, 2-vertex
  std::vector<Patch> cand;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    int ns = __builtin_popcount(mask);
    if (ns <= k - 1) {
      cand.push_back(patch_nabla_out(k, mask));
      cand.push_back(patch_nabla_pair(k, mask, k + 1));
      cand.push_back(patch_nabla_pair(k, mask, k + 2));
    }
    if (ns >= 2) cand.push_back(patch_nabla_deriv(k, mask));
  }

  // delta(delta(t)) must vanish; the first delta of the nabla vertex is the
  // unknown combination plus the known horizontal white term
  std::vector<int> no_whites;
  LinComb base;  // delta of the horizontal part
  {
    Replacement h{patch_nabla_white(k), Rat(-1)};
    LinComb dh;
    apply_replacement(t, no_whites, nab, h, Rat(1), &dh);
    base = delta(dh);
  }
  std::vector<LinComb> images;  // delta of each candidate grafted in
  std::map<CanonGraph, int> rows;
  auto touch = [&](const LinComb& x) {
    for (const auto& [g, c] : x.terms())
      if (!rows.count(g)) rows.emplace(g, static_cast<int>(rows.size()));
  };
  touch(base);
  std::vector<LinComb> grafted;
  for (const Patch& p : cand) {
    Replacement r{p, Rat(1)};
    LinComb one;
    apply_replacement(t, no_whites, nab, r, Rat(1), &one);
    grafted.push_back(one);
    LinComb img = delta(one);
    images.push_back(img);
    touch(img);
  }
  SparseMat m(static_cast<int>(rows.size()), static_cast<int>(cand.size()));
  SparseVec rhs;
  for (const auto& [g, c] : base.terms()) rhs.emplace(rows.at(g), -c);
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [g, c] : images[j].terms()) m.add(rows.at(g), static_cast<int>(j), c);

  auto sol = solve_preimage(m, rhs);
  if (!sol) throw std::runtime_error("solve_nabla_variation: square-zero constraint infeasible");
  VariationSolve vs;
  // assemble the variation as a patch combination
  for (const auto& [j, c] : *sol) vs.solution += LinComb::of(cand[j].g) * c;
  // the variation is unique iff every kernel direction of the constraint
  // assembles to the zero combination (duplicate candidate graphs are fine)
  vs.unique = true;
  for (const SparseVec& kv : kernel_basis(m).basis()) {
    LinComb z;
    for (const auto& [j, c] : kv) z += LinComb::of(cand[j].g) * c;
    if (!z.is_zero()) vs.unique = false;
  }
  return vs;
}

}  // namespace natop
