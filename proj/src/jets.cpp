#include "natop/jets.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "natop/differential.hpp"
#include "natop/graph_io.hpp"
#include "natop/sparse.hpp"

namespace natop {

std::int64_t TruncPoly::pack(const std::vector<int>& e) const {
  std::int64_t key = 0;
  for (int i = dim_ - 1; i >= 0; --i) key = (key << kBits) | e[i];
  return key;
}

int TruncPoly::degree_of(std::int64_t key) const {
  int d = 0;
  while (key) {
    d += static_cast<int>(key & kMask);
    key >>= kBits;
  }
  return d;
}

void TruncPoly::add_key(std::int64_t key, const Rat& c) {
  if (c == 0) return;
  auto it = c_.find(key);
  if (it == c_.end()) {
    c_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

std::map<std::vector<int>, Rat> TruncPoly::coef() const {
  std::map<std::vector<int>, Rat> out;
  for (const auto& [key, c] : c_) {
    std::vector<int> e(dim_);
    std::int64_t k = key;
    for (int i = 0; i < dim_; ++i) {
      e[i] = static_cast<int>(k & kMask);
      k >>= kBits;
    }
    out.emplace(std::move(e), c);
  }
  return out;
}

TruncPoly TruncPoly::variable(int dim, int order, int i) {
  TruncPoly p(dim, order);
  std::vector<int> e(dim, 0);
  e[i] = 1;
  p.add_term(e, Rat(1));
  return p;
}

TruncPoly TruncPoly::constant(int dim, int order, const Rat& c) {
  TruncPoly p(dim, order);
  p.add_term(std::vector<int>(dim, 0), c);
  return p;
}

void TruncPoly::add_term(const std::vector<int>& expo, const Rat& c) {
  if (c == 0) return;
  int total = std::accumulate(expo.begin(), expo.end(), 0);
  if (total > order_) return;
  for (int e : expo)
    if (e > kMask) throw std::invalid_argument("TruncPoly: exponent too large");
  add_key(pack(expo), c);
}

Rat TruncPoly::coeff(const std::vector<int>& expo) const {
  auto it = c_.find(pack(expo));
  return it == c_.end() ? Rat(0) : it->second;
}

Rat TruncPoly::value0() const {
  auto it = c_.find(0);
  return it == c_.end() ? Rat(0) : it->second;
}

TruncPoly TruncPoly::operator+(const TruncPoly& o) const {
  TruncPoly r(dim_, std::min(order_, o.order_));
  for (const auto& [k, c] : c_)
    if (degree_of(k) <= r.order_) r.add_key(k, c);
  for (const auto& [k, c] : o.c_)
    if (degree_of(k) <= r.order_) r.add_key(k, c);
  return r;
}

TruncPoly TruncPoly::operator-(const TruncPoly& o) const {
  TruncPoly r(dim_, std::min(order_, o.order_));
  for (const auto& [k, c] : c_)
    if (degree_of(k) <= r.order_) r.add_key(k, c);
  for (const auto& [k, c] : o.c_)
    if (degree_of(k) <= r.order_) r.add_key(k, -c);
  return r;
}

TruncPoly TruncPoly::operator*(const TruncPoly& o) const {
  TruncPoly r(dim_, std::min(order_, o.order_));
  for (const auto& [k1, c1] : c_) {
    int d1 = degree_of(k1);
    if (d1 > r.order_) continue;
    for (const auto& [k2, c2] : o.c_) {
      if (d1 + degree_of(k2) > r.order_) continue;
      r.add_key(k1 + k2, c1 * c2);
    }
  }
  return r;
}

TruncPoly TruncPoly::operator*(const Rat& c) const {
  TruncPoly r(dim_, order_);
  if (c == 0) return r;
  for (const auto& [k, v] : c_) r.c_.emplace(k, v * c);
  return r;
}

TruncPoly TruncPoly::partial(int i) const {
  TruncPoly r(dim_, order_ - 1);
  for (const auto& [k, c] : c_) {
    int ei = static_cast<int>((k >> (kBits * i)) & kMask);
    if (ei == 0) continue;
    r.add_key(k - (std::int64_t(1) << (kBits * i)), c * ei);
  }
  return r;
}

TruncPoly TruncPoly::truncated(int order) const {
  TruncPoly r(dim_, order);
  for (const auto& [k, c] : c_)
    if (degree_of(k) <= order) r.add_key(k, c);
  return r;
}

TruncPoly TruncPoly::compose(const std::vector<TruncPoly>& args) const {
  int adim = args.empty() ? 0 : args[0].dim();
  int aorder = args.empty() ? order_ : args[0].order();
  for (const auto& a : args)
    if (a.value0() != 0) throw std::invalid_argument("compose: substitution must fix the origin");
  int rorder = std::min(order_, aorder);
  // power tables up to the needed exponent
  std::vector<std::vector<TruncPoly>> pw(dim_);
  std::vector<int> maxe(dim_, 0);
  for (const auto& [k, c] : c_)
    for (int i = 0; i < dim_; ++i)
      maxe[i] = std::max(maxe[i], static_cast<int>((k >> (kBits * i)) & kMask));
  for (int i = 0; i < dim_; ++i) {
    pw[i].push_back(TruncPoly::constant(adim, rorder, Rat(1)));
    for (int p = 1; p <= maxe[i]; ++p)
      pw[i].push_back(pw[i][p - 1] * args[i].truncated(rorder));
  }
  TruncPoly r(adim, rorder);
  for (const auto& [k, c] : c_) {
    TruncPoly term = TruncPoly::constant(adim, rorder, c);
    for (int i = 0; i < dim_; ++i) {
      int ei = static_cast<int>((k >> (kBits * i)) & kMask);
      if (ei) term = term * pw[i][ei];
    }
    r = r + term;
  }
  return r;
}

Rat TruncPoly::deriv0(const std::vector<int>& alpha) const {
  Rat c = coeff(alpha);
  if (c == 0) return c;
  Int f(1);
  for (int a : alpha)
    for (int k = 2; k <= a; ++k) f *= k;
  return c * Rat(f);
}

JetContext JetContext::random(int dim, int order, int nfields, Prng& rng, long lo, long hi) {
  JetContext ctx;
  ctx.dim = dim;
  ctx.order = order;
  ctx.gamma.assign(dim * dim * dim, TruncPoly(dim, order));
  // iterate over all exponents up to total degree `order`
  std::vector<std::vector<int>> expos;
  std::vector<int> e(dim, 0);
  std::function<void(int, int)> rec = [&](int i, int rest) {
    if (i == dim) {
      expos.push_back(e);
      return;
    }
    for (int a = 0; a <= rest; ++a) {
      e[i] = a;
      rec(i + 1, rest - a);
    }
    e[i] = 0;
  };
  rec(0, order);
  for (int l = 0; l < dim; ++l)
    for (int m = 0; m < dim; ++m)
      for (int n = m; n < dim; ++n) {
        TruncPoly p(dim, order);
        for (const auto& ex : expos) p.add_term(ex, Rat(rng.range(lo, hi)));
        ctx.gamma[(l * dim + m) * dim + n] = p;
        ctx.gamma[(l * dim + n) * dim + m] = p;
      }
  for (int f = 0; f < nfields; ++f) {
    std::vector<TruncPoly> comp;
    for (int l = 0; l < dim; ++l) {
      TruncPoly p(dim, order);
      for (const auto& ex : expos) p.add_term(ex, Rat(rng.range(lo, hi)));
      comp.push_back(p);
    }
    ctx.fields.push_back(std::move(comp));
  }
  return ctx;
}

PolyDiffeo PolyDiffeo::random(int dim, int order, Prng& rng) {
  PolyDiffeo phi;
  phi.dim = dim;
  phi.order = order;
  // unimodular linear part: unit lower times unit upper
  std::vector<std::vector<Rat>> lower(dim, std::vector<Rat>(dim, Rat(0)));
  std::vector<std::vector<Rat>> upper = lower;
  for (int i = 0; i < dim; ++i) {
    lower[i][i] = upper[i][i] = Rat(1);
    for (int j = 0; j < i; ++j) lower[i][j] = Rat(rng.range(-2, 2));
    for (int j = i + 1; j < dim; ++j) upper[i][j] = Rat(rng.range(-2, 2));
  }
  std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(dim, Rat(0)));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) a[i][j] += lower[i][k] * upper[k][j];
  for (int i = 0; i < dim; ++i) {
    TruncPoly p(dim, order);
    for (int j = 0; j < dim; ++j) {
      std::vector<int> e(dim, 0);
      e[j] = 1;
      p.add_term(e, a[i][j]);
    }
    // higher terms
    std::vector<int> ex(dim, 0);
    std::function<void(int, int, int)> rec = [&](int pos, int rest, int total) {
      if (pos == dim) {
        if (total >= 2) p.add_term(ex, Rat(rng.range(-1, 1)));
        return;
      }
      for (int q = 0; q <= rest; ++q) {
        ex[pos] = q;
        rec(pos + 1, rest - q, total + q);
      }
      ex[pos] = 0;
    };
    rec(0, order, 0);
    phi.comp.push_back(p);
  }
  return phi;
}

std::vector<std::vector<Rat>> PolyDiffeo::linear_part() const {
  std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(dim, Rat(0)));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      std::vector<int> e(dim, 0);
      e[j] = 1;
      a[i][j] = comp[i].coeff(e);
    }
  return a;
}

std::vector<TruncPoly> PolyDiffeo::inverse() const {
  // invert the linear part exactly (unimodular by construction; fall back to
  // generic elimination otherwise)
  std::vector<std::vector<Rat>> a = linear_part();
  int n = dim;
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = Rat(1);
  {
    std::vector<std::vector<Rat>> m = a;
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int r = col; r < n; ++r)
        if (m[r][col] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) throw std::invalid_argument("PolyDiffeo: linear part not invertible");
      std::swap(m[piv], m[col]);
      std::swap(inv[piv], inv[col]);
      Rat p = m[col][col];
      for (int j = 0; j < n; ++j) {
        m[col][j] /= p;
        inv[col][j] /= p;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col || m[r][col] == 0) continue;
        Rat f = m[r][col];
        for (int j = 0; j < n; ++j) {
          m[r][j] -= f * m[col][j];
          inv[r][j] -= f * inv[col][j];
        }
      }
    }
  }
  // psi = A^{-1}(y - N(psi)) iterated; N = phi - A
  std::vector<TruncPoly> nonlin;
  for (int i = 0; i < n; ++i) {
    TruncPoly p = comp[i];
    for (int j = 0; j < n; ++j) {
      std::vector<int> e(n, 0);
      e[j] = 1;
      p.add_term(e, -a[i][j]);
    }
    nonlin.push_back(p);
  }
  std::vector<TruncPoly> psi;
  for (int i = 0; i < n; ++i) {
    TruncPoly p(n, order);
    for (int j = 0; j < n; ++j) {
      std::vector<int> e(n, 0);
      e[j] = 1;
      p.add_term(e, inv[i][j]);
    }
    psi.push_back(p);
  }
  for (int it = 0; it < order; ++it) {
    std::vector<TruncPoly> next;
    for (int i = 0; i < n; ++i)
      next.push_back(TruncPoly::variable(n, order, i) - nonlin[i].compose(psi));
    std::vector<TruncPoly> out;
    for (int i = 0; i < n; ++i) {
      TruncPoly p(n, order);
      for (int j = 0; j < n; ++j) p = p + next[j] * inv[i][j];
      out.push_back(p);
    }
    psi = std::move(out);
  }
  return psi;
}

std::vector<Rat> evaluate(const LinComb& x, const JetContext& ctx, const EvalExtra* extra) {
  int dim = ctx.dim;
  std::vector<Rat> out(dim, Rat(0));
  for (const auto& [cg, coef] : x.terms()) {
    Graph g = cg.decode();
    int V = g.vertex_count();
    // order check
    for (const Vertex& v : g.vertices()) {
      int need = v.kind == VKind::Nabla ? v.arity - 2 : v.arity;
      if ((v.kind == VKind::Black || v.kind == VKind::Nabla || v.kind == VKind::White) &&
          need > ctx.order)
        throw std::invalid_argument("evaluate: jet truncation order insufficient");
    }
    std::vector<int> edges;  // vertices with outputs
    int anchor = -1;
    for (int v = 0; v < V; ++v) {
      if (g.vertex(v).kind == VKind::Anchor)
        anchor = v;
      else
        edges.push_back(v);
    }
    std::vector<int> idx(V, -1);  // index carried by the out-edge of v
    std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t pos, const Rat& acc) {
      if (acc == 0) return;
      if (pos == edges.size()) {
        // assemble vertex factors
        Rat prod = acc;
        for (int v = 0; v < V && prod != 0; ++v) {
          const Vertex& vert = g.vertex(v);
          if (vert.kind == VKind::Anchor) continue;
          if (vert.kind == VKind::Black && vert.label < 0) continue;  // leg: handled below
          std::vector<int> alpha(dim, 0);
          if (vert.kind == VKind::Black || vert.kind == VKind::White) {
            for (int s : g.in_sources(v, 0)) ++alpha[idx[s]];
            if (vert.kind == VKind::Black) {
              prod *= ctx.fields.at(vert.label - 1)[idx[v]].deriv0(alpha);
            } else {
              if (!extra || extra->symmetry.empty())
                throw std::invalid_argument("evaluate: white vertex without symmetry jets");
              prod *= extra->symmetry[idx[v]].deriv0(alpha);
            }
          } else {  // Nabla
            for (int s : g.in_sources(v, 0)) ++alpha[idx[s]];
            auto pair = g.in_sources(v, 1);
            TruncPoly gp = ctx.gamma_at(idx[v], idx[pair[0]], idx[pair[1]]);
            prod *= gp.deriv0(alpha);
          }
        }
        // legs contribute their vector components
        for (int v = 0; v < V && prod != 0; ++v) {
          const Vertex& vert = g.vertex(v);
          if (vert.kind == VKind::Black && vert.label < 0) {
            if (!extra) throw std::invalid_argument("evaluate: leg without vector data");
            prod *= extra->leg_vectors.at(vert.label)[idx[v]];
          }
        }
        if (prod != 0) {
          int feeder = g.in_sources(anchor, 0)[0];
          out[idx[feeder]] += coef * prod;
        }
        return;
      }
      for (int i = 0; i < dim; ++i) {
        idx[edges[pos]] = i;
        rec(pos + 1, acc);
      }
      idx[edges[pos]] = -1;
    };
    rec(0, Rat(1));
  }
  return out;
}

JetContext pushforward(const JetContext& ctx, const PolyDiffeo& phi) {
  if (phi.dim != ctx.dim) throw std::invalid_argument("pushforward: dimension mismatch");
  if (phi.order < ctx.order + 2)
    throw std::invalid_argument("pushforward: diffeo truncation order insufficient");
  int dim = ctx.dim;
  std::vector<TruncPoly> psi = phi.inverse();
  std::vector<TruncPoly> psi_t;  // truncated for composition
  for (const auto& p : psi) psi_t.push_back(p.truncated(phi.order));

  JetContext out;
  out.dim = dim;
  out.order = ctx.order;

  // jacobians
  std::vector<std::vector<TruncPoly>> jphi(dim, std::vector<TruncPoly>(dim));
  std::vector<std::vector<TruncPoly>> jpsi(dim, std::vector<TruncPoly>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      jphi[i][j] = phi.comp[i].partial(j);
      jpsi[i][j] = psi[i].partial(j);
    }
  // A = (Jphi) o psi
  std::vector<std::vector<TruncPoly>> a(dim, std::vector<TruncPoly>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a[i][j] = jphi[i][j].compose(psi_t).truncated(ctx.order);

  // fields: X'^l = (A X^m) o psi
  for (const auto& f : ctx.fields) {
    std::vector<TruncPoly> comp(dim, TruncPoly(dim, ctx.order));
    std::vector<TruncPoly> fpsi(dim);
    for (int m = 0; m < dim; ++m) fpsi[m] = f[m].compose(psi_t).truncated(ctx.order);
    for (int l = 0; l < dim; ++l) {
      TruncPoly s(dim, ctx.order);
      for (int m = 0; m < dim; ++m) s = s + a[l][m] * fpsi[m];
      comp[l] = s;
    }
    out.fields.push_back(std::move(comp));
  }

  // connection: G'^l_{mn} = A^l_r [ (G^r_{st} o psi) dpsi^s_m dpsi^t_n + dd psi^r_{mn} ]
  out.gamma.assign(dim * dim * dim, TruncPoly(dim, ctx.order));
  std::vector<TruncPoly> gpsi(dim * dim * dim);
  for (int r = 0; r < dim; ++r)
    for (int s = 0; s < dim; ++s)
      for (int t = 0; t < dim; ++t)
        gpsi[(r * dim + s) * dim + t] =
            ctx.gamma_at(r, s, t).compose(psi_t).truncated(ctx.order);
  for (int l = 0; l < dim; ++l)
    for (int m = 0; m < dim; ++m)
      for (int n = m; n < dim; ++n) {
        TruncPoly total(dim, ctx.order);
        for (int r = 0; r < dim; ++r) {
          TruncPoly inner(dim, ctx.order);
          for (int s = 0; s < dim; ++s)
            for (int t = 0; t < dim; ++t)
              inner = inner + gpsi[(r * dim + s) * dim + t] * jpsi[s][m] * jpsi[t][n];
          inner = inner + psi[r].partial(m).partial(n);
          total = total + a[l][r] * inner;
        }
        out.gamma[(l * dim + m) * dim + n] = total;
        out.gamma[(l * dim + n) * dim + m] = total;
      }
  return out;
}

NaturalityReport naturality_check(const LinComb& x, int dim, int trials, std::uint64_t seed) {
  NaturalityReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.dim = dim;
  int order = x.is_zero() ? 1 : 0;
  for (const auto& [g, c] : x.terms()) order = std::max(order, g.max_arity() + 1);
  int nfields = 0;
  for (const auto& [g, c] : x.terms()) nfields = std::max(nfields, g.field_count());
  Prng rng(seed);
  for (int t = 0; t < trials; ++t) {
    JetContext ctx = JetContext::random(dim, order, nfields, rng);
    PolyDiffeo phi = PolyDiffeo::random(dim, order + 2, rng);
    std::vector<Rat> before = evaluate(x, ctx);
    std::vector<Rat> after = evaluate(x, pushforward(ctx, phi));
    auto lin = phi.linear_part();
    std::vector<Rat> carried(dim, Rat(0));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) carried[i] += lin[i][j] * before[j];
    if (after != carried) {
      rep.natural = false;
      rep.witness = "trial " + std::to_string(t) + ": transported value differs";
      return rep;
    }
  }
  return rep;
}

LinComb derive_nabla_variation(int k, std::uint64_t seed) {
  int dim = 3;
  int order = k + 3;
  Prng rng(seed);

  // fit over the full two-vertex tree basis so absent shapes are verified too
  std::vector<CanonGraph> cand = nabla_tree_basis(k);

  // the pure white replacement (horizontal part), coefficient fixed at -1
  Graph wh;
  {
    int anchor = wh.add_vertex(VKind::Anchor, 1);
    int w = wh.add_vertex(VKind::White, k + 2);
    for (int i = 1; i <= k + 2; ++i) {
      int leg = wh.add_vertex(VKind::Black, 0, -i);
      wh.set_out(leg, Target{w, 0});
    }
    wh.set_out(w, Target{anchor, 0});
  }
  LinComb white_term = LinComb::of(wh);

  int samples = 2 * (static_cast<int>(cand.size()) + 4);
  std::vector<SparseVec> rows;
  std::vector<Rat> rhs;
  for (int s = 0; s < samples; ++s) {
    JetContext ctx = JetContext::random(dim, order, 0, rng);
    EvalExtra extra;
    // symmetry generator with vanishing 0- and 1-jet
    {
      JetContext wctx = JetContext::random(dim, order + 2, 1, rng);
      extra.symmetry = wctx.fields[0];
      for (auto& p : extra.symmetry) {
        TruncPoly q(dim, p.order());
        for (const auto& [e, c] : p.coef()) {
          int total = std::accumulate(e.begin(), e.end(), 0);
          if (total >= 2) q.add_term(e, c);
        }
        p = q;
      }
    }
    for (int i = 1; i <= k + 2; ++i) {
      std::vector<Rat> v(dim);
      for (int j = 0; j < dim; ++j) v[j] = Rat(rng.range(-2, 2));
      extra.leg_vectors[-i] = v;
    }

    // exact variation of the contracted connection jet:
    // -(L_w Gamma expanded) contracted with the legs
    std::vector<TruncPoly> w = extra.symmetry;
    for (int out_l = 0; out_l < dim; ++out_l) {
      // target component: -d^k (L_w Gamma)^{out_l}_{mn} u_1...u_k p1^m p2^n
      TruncPoly contracted(dim, order);
      for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n) {
          TruncPoly lw(dim, order);
          for (int r = 0; r < dim; ++r) {
            lw = lw + w[r] * ctx.gamma_at(out_l, m, n).partial(r);
            lw = lw - ctx.gamma_at(r, m, n) * w[out_l].partial(r);
            lw = lw + ctx.gamma_at(out_l, r, n) * w[r].partial(m);
            lw = lw + ctx.gamma_at(out_l, m, r) * w[r].partial(n);
          }
          lw = lw + w[out_l].partial(m).partial(n);
          contracted =
              contracted + lw * (extra.leg_vectors.at(-(k + 1))[m] *
                                 extra.leg_vectors.at(-(k + 2))[n]);
        }
      // directional derivatives along the derivative legs
      for (int i = 1; i <= k; ++i) {
        TruncPoly next(dim, contracted.order() - 1);
        for (int a = 0; a < dim; ++a)
          next = next + contracted.partial(a) * extra.leg_vectors.at(-i)[a];
        contracted = next;
      }
      Rat target = -contracted.value0();
      // move the fixed white term to the right-hand side
      target -= evaluate(white_term * Rat(-1), ctx, &extra)[out_l];
      SparseVec row;
      for (std::size_t j = 0; j < cand.size(); ++j) {
        Rat val = evaluate(LinComb::of(cand[j].decode()), ctx, &extra)[out_l];
        if (val != 0) row.emplace(static_cast<int>(j), val);
      }
      rows.push_back(std::move(row));
      rhs.push_back(target);
    }
  }
  SparseMat m(static_cast<int>(rows.size()), static_cast<int>(cand.size()));
  SparseVec b;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [j, val] : rows[r]) m.add(static_cast<int>(r), j, val);
    if (rhs[r] != 0) b.emplace(static_cast<int>(r), rhs[r]);
  }
  if (rank(m) != static_cast<int>(cand.size()))
    throw std::runtime_error("derive_nabla_variation: samples do not pin the coefficients");
  auto sol = solve_preimage(m, b);
  if (!sol) throw std::runtime_error("derive_nabla_variation: inconsistent variation system");
  LinComb out;
  for (const auto& [j, c] : *sol) out += LinComb::of(cand[j].decode()) * c;
  return out;
}

const TruncPoly& TensorJets::at(const std::vector<int>& idx) const {
  int flat = 0;
  for (int i : idx) flat = flat * dim + i;
  return comp[flat];
}

TruncPoly& TensorJets::at_mut(const std::vector<int>& idx) {
  int flat = 0;
  for (int i : idx) flat = flat * dim + i;
  return comp[flat];
}

TensorJets TensorJets::zero(int dim, int k, int order) {
  TensorJets t;
  t.dim = dim;
  t.k = k;
  int sz = 1;
  for (int i = 0; i <= k; ++i) sz *= dim;
  t.comp.assign(sz, TruncPoly(dim, order));
  return t;
}

TensorJets TensorJets::random(int dim, int k, int order, Prng& rng) {
  TensorJets t = zero(dim, k, order);
  JetContext helper = JetContext::random(dim, order, static_cast<int>(t.comp.size()), rng);
  for (std::size_t i = 0; i < t.comp.size(); ++i) t.comp[i] = helper.fields[i][0];
  return t;
}

TensorJets nabla_tensor(const TensorJets& t, const JetContext& ctx) {
  int dim = t.dim;
  TensorJets r = TensorJets::zero(dim, t.k + 1, ctx.order);
  std::vector<int> idx(t.k + 2, 0);  // (l, m0, m1..mk)
  std::function<void(int)> rec = [&](int pos) {
    if (pos == t.k + 2) {
      int l = idx[0], m0 = idx[1];
      std::vector<int> rest(idx.begin() + 2, idx.end());
      std::vector<int> tidx;
      tidx.push_back(l);
      tidx.insert(tidx.end(), rest.begin(), rest.end());
      TruncPoly val = t.at(tidx).partial(m0);
      for (int r2 = 0; r2 < dim; ++r2) {
        std::vector<int> t2 = tidx;
        t2[0] = r2;
        val = val + ctx.gamma_at(l, m0, r2) * t.at(t2);
        for (int i = 0; i < t.k; ++i) {
          std::vector<int> t3 = tidx;
          t3[1 + i] = r2;
          val = val - ctx.gamma_at(r2, m0, rest[i]) * t.at(t3);
        }
      }
      std::vector<int> ridx;
      ridx.push_back(l);
      ridx.push_back(m0);
      ridx.insert(ridx.end(), rest.begin(), rest.end());
      r.at_mut(ridx) = val.truncated(ctx.order - 1);
      return;
    }
    for (int i = 0; i < dim; ++i) {
      idx[pos] = i;
      rec(pos + 1);
    }
  };
  rec(0);
  return r;
}

TensorJets curvature_tensor(const JetContext& ctx) {
  int dim = ctx.dim;
  TensorJets r = TensorJets::zero(dim, 3, ctx.order - 1);
  for (int l = 0; l < dim; ++l)
    for (int m = 0; m < dim; ++m)
      for (int n = 0; n < dim; ++n)
        for (int kk = 0; kk < dim; ++kk) {
          TruncPoly val = ctx.gamma_at(l, m, kk).partial(n) - ctx.gamma_at(l, n, kk).partial(m);
          for (int rho = 0; rho < dim; ++rho)
            val = val + ctx.gamma_at(l, n, rho) * ctx.gamma_at(rho, m, kk) -
                  ctx.gamma_at(l, m, rho) * ctx.gamma_at(rho, n, kk);
          r.at_mut({l, m, n, kk}) = val.truncated(ctx.order - 1);
        }
  return r;
}

}  // namespace natop
