#include "natop/quasisym.hpp"

#include <map>
#include <stdexcept>

#include "natop/covdiff.hpp"
#include "natop/enumerate.hpp"
#include "natop/graph_ops.hpp"
#include "natop/scheme.hpp"
#include "natop/sparse.hpp"
#include "natop/young.hpp"

namespace natop {

std::vector<GroupRingElem> quasi_symmetries(const LeadingTerm& leading) {
  int n = leading.arity();
  auto group = symmetric_group(n);
  auto ush = unshuffles(n - 2, 2);
  std::map<Perm, int> row;
  for (std::size_t i = 0; i < ush.size(); ++i) row.emplace(ush[i], static_cast<int>(i));
  SparseMat m(static_cast<int>(ush.size()), static_cast<int>(group.size()));
  for (std::size_t c = 0; c < group.size(); ++c) {
    LeadingTerm img = leading.act(group[c]);
    for (const auto& [u, coef] : img.coeffs()) m.add(row.at(u), static_cast<int>(c), coef);
  }
  std::vector<GroupRingElem> out;
  for (const SparseVec& v : kernel_basis(m).basis()) {
    GroupRingElem s(n);
    for (const auto& [i, coef] : v) s.add(group[i], coef);
    out.push_back(std::move(s));
  }
  return out;
}

LinComb leading_part(const LinComb& op, int n) {
  LinComb out;
  for (const auto& [g, c] : op.terms()) {
    if (g.nabla_count() != 1 || g.max_nabla_arity() != n) continue;
    Graph gr = g.decode();
    bool flat = true;
    for (const Vertex& v : gr.vertices())
      if (v.kind == VKind::Black && v.arity > 0) flat = false;
    if (flat) out.add(g, c);
  }
  return out;
}

LinComb apply_group_ring(const LinComb& op, const GroupRingElem& s) {
  LinComb out;
  for (const auto& [g, c] : s.terms()) out += act_fields(op, g) * c;
  return out;
}

LinComb deviation(const LinComb& op, const LeadingTerm& leading, const GroupRingElem& s) {
  if (!leading.act(s).is_zero())
    throw std::invalid_argument("deviation: element is not a quasi-symmetry");
  return apply_group_ring(op, s);
}

namespace {

IdentityReport report_one(const std::string& name, int n, const LinComb& dev) {
  IdentityReport r;
  r.name = name;
  r.arity = n;
  r.vanishes = dev.is_zero();
  r.c_order = dev.is_zero() ? 0 : dev.max_c_order();
  r.vf_order = dev.is_zero() ? 0 : dev.max_vf_order();
  return r;
}

}  // namespace

std::vector<IdentityReport> bianchi_suite(const LinComb& dn, int n) {
  std::vector<IdentityReport> out;
  // pair antisymmetry
  {
    GroupRingElem s = GroupRingElem::unit(n) +
                      GroupRingElem::single(Perm::transposition(n, n - 2, n - 1));
    out.push_back(report_one("pair-antisymmetry", n, apply_group_ring(dn, s)));
  }
  // cyclic sum over the last three inputs
  {
    Perm c = Perm::cycle(n, {n - 2, n - 1, n});
    GroupRingElem s =
        GroupRingElem::unit(n) + GroupRingElem::single(c) + GroupRingElem::single(c.then(c));
    out.push_back(report_one("cyclic-last-three", n, apply_group_ring(dn, s)));
  }
  if (n >= 4) {  // cyclic sum over inputs n-3, n-2, n-1
    Perm c = Perm::cycle(n, {n - 3, n - 2, n - 1});
    GroupRingElem s =
        GroupRingElem::unit(n) + GroupRingElem::single(c) + GroupRingElem::single(c.then(c));
    out.push_back(report_one("cyclic-second-triple", n, apply_group_ring(dn, s)));
  }
  if (n >= 5) {  // first-block transpositions
    for (int i = 1; i < n - 3; ++i) {
      GroupRingElem s = GroupRingElem::single(Perm::transposition(n, i, i + 1)) -
                        GroupRingElem::unit(n);
      out.push_back(report_one("first-block-swap-" + std::to_string(i), n,
                               apply_group_ring(dn, s)));
    }
  }
  return out;
}

std::vector<IdentityReport> insertion_symmetry_suite(const LinComb& vn, int n) {
  std::vector<IdentityReport> out;
  for (int i = 1; i < n - 1; ++i) {
    GroupRingElem s =
        GroupRingElem::single(Perm::transposition(n, i, i + 1)) - GroupRingElem::unit(n);
    out.push_back(
        report_one("insertion-swap-" + std::to_string(i), n, apply_group_ring(vn, s)));
  }
  return out;
}

LinComb leading_act(const LinComb& u_leading, const Perm& g) { return act_fields(u_leading, g); }

LinComb trace_times_slot(const LinComb& op, int j) {
  Graph wire;
  int a = wire.add_vertex(VKind::Anchor, 1);
  int x = wire.add_vertex(VKind::Black, 0, j);
  wire.set_out(x, Target{a, 0});
  return mul_trace(op, j, LinComb::of(wire));
}

std::optional<Perm> trace_commutation_perm(int n, int j, const Perm& sigma) {
  Bounds bounds;
  GradedBasis basis = enumerate_basis(SpaceSpec{n, n}, Bigrade{-1, 1}, bounds);
  // under the relabelling action the traced slot moves to sigma(j)
  int ji = sigma(j);
  for (const Perm& tilde : symmetric_group(n)) {
    bool ok = true;
    int tested = 0;
    for (const CanonGraph& cg : basis.elems) {
      LinComb o = LinComb::of(cg.decode());
      LinComb lhs, rhs;
      try {  // graphs whose traced slot feeds the anchor carry no trace
        lhs = act_fields(trace_times_slot(o, j), sigma);
      } catch (const std::invalid_argument&) {
        continue;
      }
      ++tested;
      try {
        rhs = trace_times_slot(act_fields(o, tilde), ji);
      } catch (const std::invalid_argument&) {
        ok = false;  // defined on one side only: wrong candidate
        break;
      }
      if (!(lhs == rhs)) {
        ok = false;
        break;
      }
    }
    if (ok && tested > 0) return tilde;
  }
  return std::nullopt;
}

NormalizeResult normalize_leading(const LinComb& u_leading, int n) {
  Bounds bounds;
  GradedBasis basis = enumerate_basis(SpaceSpec{n, n}, Bigrade{-1, 1}, bounds);
  auto group = symmetric_group(n);
  int ng = static_cast<int>(group.size());
  int cols = (n + 1) * ng;  // c and c_1..c_n over the group basis

  // classify rows: pure graphs (no wheel) correspond to unshuffles
  auto ush = unshuffles(n - 2, 2);
  std::map<CanonGraph, int> pure_row;  // -> unshuffle index
  for (std::size_t i = 0; i < ush.size(); ++i) {
    LinComb one = leading_realization(LeadingTerm::of(ush[i]));
    if (one.size() != 1) throw std::logic_error("normalize_leading: basis realization");
    pure_row.emplace(one.terms().begin()->first, static_cast<int>(i));
  }

  int nwheel = 0;
  std::map<int, int> wheel_row;  // basis index -> wheel row id
  for (int i = 0; i < basis.dim(); ++i)
    if (!pure_row.count(basis.elems[i])) wheel_row.emplace(i, nwheel++);

  // constraints: every wheel coordinate vanishes, the pure part sums to zero
  // (kernel membership), and unavailable columns are pinned to zero; rows
  // nwheel..nwheel+cols hold the sum and the pins
  SparseMat constraint(nwheel + 1 + cols, cols);
  SparseMat pure(static_cast<int>(ush.size()), cols);
  auto add_image = [&](int col, const LinComb& img) {
    for (const auto& [g, c] : img.terms()) {
      int bi = basis.find(g);
      if (bi < 0) throw std::logic_error("normalize_leading: image outside the basis");
      auto pu = pure_row.find(g);
      if (pu != pure_row.end()) {
        pure.add(pu->second, col, c);
        constraint.add(nwheel, col, c);
      } else {
        constraint.add(wheel_row.at(bi), col, c);
      }
    }
  };
  std::vector<char> column_ok(cols, 1);
  for (int gi = 0; gi < ng; ++gi) {
    add_image(gi, leading_act(u_leading, group[gi]));
    for (int j = 1; j <= n; ++j) {
      // a trace over a slot that feeds the output is undefined ("the trace
      // makes sense" assumption); such columns are simply not available
      try {
        add_image(j * ng + gi, trace_times_slot(leading_act(u_leading, group[gi]), j));
      } catch (const std::invalid_argument&) {
        column_ok[j * ng + gi] = 0;
      }
    }
  }
  for (int col = 0; col < cols; ++col)
    if (!column_ok[col]) constraint.add(nwheel + 1 + col, col, Rat(1));

  // admissible solutions
  Subspace v = kernel_basis(constraint);
  NormalizeResult res;
  res.c = GroupRingElem(n);
  res.cj.assign(n, GroupRingElem(n));

  // the achievable pure parts
  std::vector<SparseVec> w_basis;
  for (const SparseVec& x : v.basis()) w_basis.push_back(pure.apply(x));

  auto to_leading = [&](const SparseVec& w) {
    LeadingTerm l(n);
    for (const auto& [i, c] : w) l.add(ush[i], c);
    return l;
  };

  // try small deterministic combinations until one generates
  for (int t = 1; t <= 4 * static_cast<int>(w_basis.size()) + 4 && !res.generating; ++t) {
    SparseVec combo, wsum;
    Rat tt(1);
    for (std::size_t i = 0; i < w_basis.size(); ++i) {
      combo = vec_axpy(combo, tt, v.basis()[i]);
      wsum = vec_axpy(wsum, tt, w_basis[i]);
      tt *= t;
    }
    LeadingTerm l = to_leading(wsum);
    if (l.is_zero() || !is_generator(l)) continue;
    res.generating = true;
    res.achieved = l;
    for (const auto& [col, coef] : combo) {
      int block = col / ng, gi = col % ng;
      if (block == 0)
        res.c.add(group[gi], coef);
      else
        res.cj[block - 1].add(group[gi], coef);
    }
  }
  return res;
}

}  // namespace natop
