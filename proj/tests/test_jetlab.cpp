#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "natop/cli.hpp"
#include "natop/covdiff.hpp"
#include "natop/differential.hpp"
#include "natop/enumerate.hpp"
#include "natop/graph_io.hpp"
#include "natop/jets.hpp"
#include "natop/perturb.hpp"

#include <json.hpp>

using namespace natop;

namespace {

// coordinate oracles, written directly from the local formulas

std::vector<Rat> lie_bracket_coords(const JetContext& c) {
  std::vector<Rat> out(c.dim, Rat(0));
  const auto& x = c.fields[0];
  const auto& y = c.fields[1];
  for (int l = 0; l < c.dim; ++l) {
    Rat v(0);
    for (int m = 0; m < c.dim; ++m)
      v += x[m].value0() * y[l].partial(m).value0() - y[m].value0() * x[l].partial(m).value0();
    out[l] = v;
  }
  return out;
}

std::vector<Rat> cov_deriv_coords(const JetContext& c) {
  std::vector<Rat> out(c.dim, Rat(0));
  const auto& x = c.fields[0];
  const auto& y = c.fields[1];
  for (int l = 0; l < c.dim; ++l) {
    Rat v(0);
    for (int m = 0; m < c.dim; ++m) {
      v += x[m].value0() * y[l].partial(m).value0();
      for (int n = 0; n < c.dim; ++n)
        v += c.gamma_at(l, m, n).value0() * x[m].value0() * y[n].value0();
    }
    out[l] = v;
  }
  return out;
}

std::vector<Rat> curvature_coords(const JetContext& c) {
  // contraction of the curvature tensor with the three fields at the origin
  TensorJets r = curvature_tensor(c);
  std::vector<Rat> out(c.dim, Rat(0));
  for (int l = 0; l < c.dim; ++l) {
    Rat v(0);
    for (int m = 0; m < c.dim; ++m)
      for (int n = 0; n < c.dim; ++n)
        for (int k = 0; k < c.dim; ++k)
          v += r.at({l, m, n, k}).value0() * c.fields[0][m].value0() *
               c.fields[1][n].value0() * c.fields[2][k].value0();
    out[l] = v;
  }
  return out;
}

std::vector<Rat> x_times_trace_deriv_coords(const JetContext& c, int vec, int tr) {
  std::vector<Rat> out(c.dim, Rat(0));
  Rat scal(0);
  for (int m = 0; m < c.dim; ++m) {
    scal += c.fields[tr][m].partial(m).value0();
    for (int n = 0; n < c.dim; ++n) scal += c.gamma_at(m, m, n).value0() * c.fields[tr][n].value0();
  }
  for (int l = 0; l < c.dim; ++l) out[l] = c.fields[vec][l].value0() * scal;
  return out;
}

}  // namespace

TEST_CASE("truncated polynomial arithmetic") {
  TruncPoly x = TruncPoly::variable(2, 4, 0), y = TruncPoly::variable(2, 4, 1);
  TruncPoly p = x * x * y + y * Rat(3);
  CHECK(p.partial(0) == x * y * Rat(2));
  CHECK(p.partial(1) == x * x + TruncPoly::constant(2, 3, Rat(3)));
  CHECK(p.deriv0({2, 1}) == Rat(2));
  // composition with a shift-free substitution
  std::vector<TruncPoly> args{x + y, y};
  TruncPoly q = p.compose(args);
  CHECK(q == (x + y) * (x + y) * y + y * Rat(3));
  // truncation: degree-5 part of x^2 y * y^2 is dropped at order 4
  TruncPoly high = p * y * y;
  for (const auto& [e, coef] : high.coef()) CHECK(e[0] + e[1] <= 4);
}

TEST_CASE("graph evaluation matches the local formulas") {
  Prng rng(101);
  for (int dim = 2; dim <= 4; ++dim) {
    for (int t = 0; t < 6; ++t) {
      JetContext c = JetContext::random(dim, 3, 3, rng);
      CHECK(evaluate(lie_bracket_op(), c) == lie_bracket_coords(c));
      CHECK(evaluate(covariant_deriv_op(), c) == cov_deriv_coords(c));
      CHECK(evaluate(curvature_op(), c) == curvature_coords(c));
      CHECK(evaluate(times_trace_deriv_op(1, 2), c) == x_times_trace_deriv_coords(c, 0, 1));
      CHECK(evaluate(times_trace_deriv_op(2, 1), c) == x_times_trace_deriv_coords(c, 1, 0));
    }
  }
  // flat connection, linear fields: the curvature vanishes
  JetContext flat;
  flat.dim = 2;
  flat.order = 2;
  flat.gamma.assign(8, TruncPoly(2, 2));
  for (int f = 0; f < 3; ++f) {
    std::vector<TruncPoly> comp;
    for (int l = 0; l < 2; ++l) {
      TruncPoly p(2, 2);
      p.add_term({1, 0}, Rat(f + l + 1));
      p.add_term({0, 1}, Rat(f - l + 2));
      comp.push_back(p);
    }
    flat.fields.push_back(comp);
  }
  auto v = evaluate(curvature_op(), flat);
  for (const Rat& r : v) CHECK(r == 0);
}

TEST_CASE("order bookkeeping raises on insufficient truncation") {
  Prng rng(55);
  JetContext c = JetContext::random(2, 0, 3, rng);
  CHECK_THROWS(evaluate(curvature_op(), c));
}

TEST_CASE("pushforward basics") {
  Prng rng(7);
  int dim = 2;
  JetContext c = JetContext::random(dim, 2, 2, rng);
  // identity
  PolyDiffeo id;
  id.dim = dim;
  id.order = c.order + 2;
  for (int i = 0; i < dim; ++i) id.comp.push_back(TruncPoly::variable(dim, id.order, i));
  JetContext c2 = pushforward(c, id);
  CHECK(c2.gamma == c.gamma);
  for (int f = 0; f < 2; ++f) CHECK(c2.fields[f] == c.fields[f]);

  // linear maps transform the connection with no inhomogeneous term:
  // a flat connection stays flat
  JetContext flat = c;
  for (auto& g : flat.gamma) g = TruncPoly(dim, c.order);
  PolyDiffeo lin = PolyDiffeo::random(dim, c.order + 2, rng);
  // strip the nonlinear part
  for (int i = 0; i < dim; ++i) {
    TruncPoly p(dim, lin.order);
    for (const auto& [e, coef] : lin.comp[i].coef()) {
      int total = 0;
      for (int q : e) total += q;
      if (total == 1) p.add_term(e, coef);
    }
    lin.comp[i] = p;
  }
  JetContext moved = pushforward(flat, lin);
  for (const auto& g : moved.gamma) CHECK(g.is_zero());

  // round trip through a full diffeo restores the jets
  for (int t = 0; t < 4; ++t) {
    PolyDiffeo phi = PolyDiffeo::random(dim, c.order + 4, rng);
    JetContext once = pushforward(c, phi);
    PolyDiffeo psi;
    psi.dim = dim;
    psi.order = phi.order;
    psi.comp = phi.inverse();
    JetContext back = pushforward(once, psi);
    for (int i = 0; i < dim * dim * dim; ++i) {
      TruncPoly diff = back.gamma[i] - c.gamma[i].truncated(back.order);
      CHECK(diff.truncated(c.order - 2).is_zero());
    }
  }
}

TEST_CASE("naturality of the named operators, witnesses for the unnatural") {
  CHECK(naturality_check(curvature_op(), 3, 8, 42).natural);
  CHECK(naturality_check(lie_bracket_op(), 2, 8, 43).natural);
  CHECK(naturality_check(covariant_deriv_op(), 3, 8, 44).natural);

  // a bare connection vertex is not coordinate independent
  Graph g;
  int a = g.add_vertex(VKind::Anchor, 1);
  int nb = g.add_vertex(VKind::Nabla, 2);
  int x = g.add_vertex(VKind::Black, 0, 1);
  int y = g.add_vertex(VKind::Black, 0, 2);
  g.set_out(nb, Target{a, 0});
  g.set_out(x, Target{nb, 1});
  g.set_out(y, Target{nb, 1});
  NaturalityReport rep = naturality_check(LinComb::of(g), 2, 12, 45);
  CHECK_FALSE(rep.natural);
  CHECK_FALSE(rep.witness.empty());
}

TEST_CASE("cocycles are natural and non-cocycles are not (sampled, d = 2)") {
  Bounds bounds;
  SpaceSpec spec{2, 0};
  PerturbationState st = make_state(spec, bounds, false);
  for (int r = 0; r <= st.slice.rmax; ++r)
    for (const SparseVec& z : st.zh[r].basis()) {
      Cocycle c = beta(st, r, z);
      CHECK(naturality_check(c.value, 3, 6, 100 + r).natural);
    }
  // every single basis graph that is not itself closed must fail
  int falsified = 0;
  for (const Bigrade& gr : occupied_bigrades(spec, bounds)) {
    if (gr.white() > 0) continue;
    for (const CanonGraph& g : enumerate_basis(spec, gr, bounds).elems) {
      LinComb x = LinComb::of(g.decode());
      if (delta(x).is_zero()) {
        CHECK(naturality_check(x, 3, 6, 200).natural);
      } else {
        NaturalityReport rep = naturality_check(x, 3, 10, 300);
        CHECK_FALSE(rep.natural);
        ++falsified;
      }
    }
  }
  CHECK(falsified > 0);
}

TEST_CASE("classical identities on random jets") {
  Prng rng(77);
  for (int dim = 2; dim <= 4; ++dim) {
    JetContext c = JetContext::random(dim, 3, 0, rng);
    TensorJets r = curvature_tensor(c);

    // first identity: cyclic sum of the curvature vanishes
    for (int l = 0; l < dim; ++l)
      for (int x = 0; x < dim; ++x)
        for (int y = 0; y < dim; ++y)
          for (int z = 0; z < dim; ++z) {
            TruncPoly cyc = r.at({l, x, y, z}) + r.at({l, y, z, x}) + r.at({l, z, x, y});
            CHECK(cyc.truncated(1).is_zero());
          }

    // second identity: cyclic sum of the derivative in the first three slots
    TensorJets dr = nabla_tensor(r, c);
    for (int l = 0; l < dim; ++l)
      for (int u = 0; u < dim; ++u)
        for (int x = 0; x < dim; ++x)
          for (int y = 0; y < dim; ++y)
            for (int z = 0; z < dim; ++z) {
              TruncPoly cyc =
                  dr.at({l, u, x, y, z}) + dr.at({l, x, y, u, z}) + dr.at({l, y, u, x, z});
              CHECK(cyc.truncated(0).is_zero());
            }
  }
}

TEST_CASE("second-derivative commutator identity for a (1,1) tensor") {
  Prng rng(79);
  for (int dim = 2; dim <= 3; ++dim) {
    JetContext c = JetContext::random(dim, 3, 0, rng);
    TensorJets q = TensorJets::random(dim, 1, 3, rng);
    TensorJets dq = nabla_tensor(q, c);
    TensorJets ddq = nabla_tensor(dq, c);
    TensorJets r = curvature_tensor(c);
    // antisymmetrized second derivative against the curvature action
    for (int l = 0; l < dim; ++l)
      for (int x = 0; x < dim; ++x)
        for (int y = 0; y < dim; ++y)
          for (int z = 0; z < dim; ++z) {
            TruncPoly anti = (ddq.at({l, y, x, z}) - ddq.at({l, x, y, z})) * rat(1, 2);
            TruncPoly rhs(dim, c.order);
            for (int m = 0; m < dim; ++m) {
              rhs = rhs + r.at({l, x, y, m}) * q.at({m, z});
              rhs = rhs - q.at({l, m}) * r.at({m, x, y, z});
            }
            rhs = rhs * rat(-1, 2);
            CHECK((anti - rhs).truncated(0).is_zero());
          }
  }
}

TEST_CASE("variation rule recovered from the transformation law") {
  for (int k = 0; k <= 2; ++k) {
    LinComb fitted = derive_nabla_variation(k, 4242 + k);
    CHECK(fitted == nabla_variation(k));
  }
}

TEST_CASE("dimension-two degeneration of the wheel example") {
  nlohmann::json j = nlohmann::json::parse(fixture_json("u3-wheel"));
  LinComb u3 = lincomb_from_json(j);
  LinComb diff = u3 - curvature_op();
  Prng rng(91);
  // with the connection vanishing at the origin only the top-order part
  // survives evaluation at the origin
  auto top_eval_zero = [&](int dim, int trials) {
    for (int t = 0; t < trials; ++t) {
      JetContext c = JetContext::random(dim, 2, 3, rng);
      for (int l = 0; l < dim; ++l)
        for (int m = 0; m < dim; ++m)
          for (int n = 0; n < dim; ++n) {
            TruncPoly g = c.gamma_at(l, m, n);
            TruncPoly stripped(dim, c.order);
            for (const auto& [e, coef] : g.coef()) {
              int total = 0;
              for (int q : e) total += q;
              if (total >= 1) stripped.add_term(e, coef);
            }
            c.gamma[(l * dim + m) * dim + n] = stripped;
          }
      auto v = evaluate(diff, c);
      bool zero = true;
      for (const Rat& r : v) zero = zero && r == 0;
      if (!zero) return false;
    }
    return true;
  };
  CHECK(top_eval_zero(2, 10));
  CHECK_FALSE(top_eval_zero(3, 10));
}
