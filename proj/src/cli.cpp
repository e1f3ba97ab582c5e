#include "natop/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "natop/covdiff.hpp"
#include "natop/differential.hpp"
#include "natop/graph_io.hpp"
#include "natop/graph_ops.hpp"
#include "natop/jets.hpp"
#include "natop/perturb.hpp"
#include "natop/quasisym.hpp"
#include "natop/render.hpp"
#include "natop/scheme.hpp"
#include "natop/young.hpp"

namespace natop {

const char* kVersion = "1.0.0";

namespace {

using nlohmann::json;

struct Common {
  int max_vertices = 10;
  int max_arity = 6;
  int jobs = 1;
  std::string json_path;

  Bounds bounds() const { return Bounds{max_vertices, max_arity}; }
};

void add_common(CLI::App* cmd, Common* c) {
  cmd->add_option("--max-vertices", c->max_vertices, "vertex cap for enumerations");
  cmd->add_option("--max-arity", c->max_arity, "arity cap for enumerations");
  cmd->add_option("--jobs", c->jobs, "worker cap for parallel sections");
  cmd->add_option("--json", c->json_path, "write the machine-readable report here");
}

int finish(const Common& c, json report, bool ok) {
  report["version"] = kVersion;
  report["status"] = ok ? "verified" : "failed";
  if (!c.json_path.empty()) {
    std::ofstream f(c.json_path);
    f << report.dump(2) << "\n";
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

LeadingTerm leading_by_name(const std::string& name, int n) {
  if (name == "K") return LeadingTerm::curvature_type(n);
  if (name == "N") return LeadingTerm::normal_type(n);
  // otherwise a file with {"arity":n, "coeffs":[{"images":[...], "coef":"p/q"}]}
  std::ifstream f(name);
  if (!f) throw std::invalid_argument("cannot open leading-term file " + name);
  json j = json::parse(f);
  LeadingTerm x(j.at("arity").get<int>());
  for (const auto& t : j.at("coeffs"))
    x.add(Perm(t.at("images").get<std::vector<int>>()), rat_parse(t.at("coef").get<std::string>()));
  return x;
}

LinComb lincomb_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return lincomb_from_json(json::parse(f));
}

json identity_reports_json(const std::vector<IdentityReport>& reps) {
  json out = json::array();
  for (const auto& r : reps)
    out.push_back(json{{"name", r.name},
                       {"arity", r.arity},
                       {"vanishes", r.vanishes},
                       {"c_order", r.c_order},
                       {"vf_order", r.vf_order}});
  return out;
}

// ---- subcommand bodies ----

int cmd_dim(const Common& c, int d) {
  json rep;
  rep["command"] = "dim";
  rep["fields"] = d;
  rep["bounds"] = {{"max_vertices", c.max_vertices}, {"max_arity", c.max_arity}};
  SpaceSpec spec{d, 0};
  json table = json::array();
  for (const Bigrade& g : occupied_bigrades(spec, c.bounds())) {
    GradedBasis b = enumerate_basis(spec, g, c.bounds());
    table.push_back(json{{"p", g.p}, {"q", g.q}, {"dim", b.dim()}});
  }
  rep["bigraded_dimensions"] = table;

  PerturbationState st = make_state(spec, c.bounds(), false);
  int total = 0;
  json zh = json::array();
  json basis_ops = json::array();
  for (int r = 0; r <= st.slice.rmax; ++r) {
    zh.push_back(json{{"nabla_count", r}, {"dim", st.zh[r].dim()}});
    total += st.zh[r].dim();
    if (d <= 2) {
      for (const SparseVec& z : st.zh[r].basis()) {
        Cocycle co = beta(st, r, z);
        basis_ops.push_back(json{{"formula", render(co.value)},
                                 {"cocycle", lincomb_json(co.value)}});
      }
    }
  }
  rep["horizontal_cocycle_dimensions"] = zh;
  rep["natural_operator_dimension"] = total;
  if (d <= 2) rep["basis"] = basis_ops;

  bool ok = true;
  if (d == 1) ok = total == 1;
  if (d == 2) {
    ok = total == 4;
    // the four named operators span the same cocycle space
    std::vector<LinComb> named{covariant_deriv_op(),
                               act_fields(covariant_deriv_op(), Perm::transposition(2, 1, 2)),
                               times_trace_deriv_op(1, 2), times_trace_deriv_op(2, 1)};
    GradedBasis all = enumerate_degree0(spec, c.bounds());
    std::vector<SparseVec> named_vecs, lifted;
    for (const auto& op : named) named_vecs.push_back(lincomb_to_vec(op, all));
    for (int r = 0; r <= st.slice.rmax; ++r)
      for (const SparseVec& z : st.zh[r].basis())
        lifted.push_back(lincomb_to_vec(beta(st, r, z).value, all));
    Subspace nspan = Subspace::span(all.dim(), named_vecs);
    Subspace lspan = Subspace::span(all.dim(), lifted);
    ok = ok && nspan.dim() == 4 && lspan.dim() == 4;
    for (const auto& v : named_vecs) ok = ok && lspan.contains(v);
    json named_json = json::array();
    for (const auto& op : named) named_json.push_back(render(op));
    rep["named_basis"] = named_json;
  }
  return finish(c, rep, ok);
}

int cmd_kernel_module(const Common& c, int n) {
  json rep;
  rep["command"] = "kernel-module";
  rep["arity"] = n;
  auto ush = unshuffles(n - 2, 2);
  SparseMat theta(1, static_cast<int>(ush.size()));
  for (std::size_t i = 0; i < ush.size(); ++i) theta.add(0, static_cast<int>(i), Rat(-1));
  int dim_kernel = kernel_basis(theta).dim();
  rep["dim"] = dim_kernel;
  Int hook_sum(0);
  json decomp = json::array();
  for (const auto& [dgm, dim] : two_column_decomposition(n)) {
    json rows = json::array();
    for (int r : dgm.rows()) rows.push_back(r);
    decomp.push_back(json{{"shape", rows}, {"dim", dim.str()}});
    hook_sum += dim;
  }
  rep["two_column_decomposition"] = decomp;
  rep["hook_length_sum"] = hook_sum.str();
  bool ok = dim_kernel == n * (n - 1) / 2 - 1 && hook_sum == dim_kernel;
  return finish(c, rep, ok);
}

int cmd_check_cocycle(const Common& c, const std::string& path) {
  json rep;
  rep["command"] = "check-cocycle";
  rep["input"] = path;
  LinComb x = lincomb_from_file(path);
  LinComb dx = delta(x);
  rep["terms"] = x.size();
  rep["differential_terms"] = dx.size();
  if (!dx.is_zero()) rep["witness"] = render(dx);
  return finish(c, rep, dx.is_zero());
}

int cmd_quasisym(const Common& c, int n, const std::string& leading_name) {
  json rep;
  rep["command"] = "quasisym";
  rep["arity"] = n;
  rep["leading"] = leading_name;
  LeadingTerm lt = leading_by_name(leading_name, n);
  auto ann = quasi_symmetries(lt);
  rep["annihilator_dim"] = ann.size();
  json basis = json::array();
  for (std::size_t i = 0; i < ann.size() && i < 8; ++i) basis.push_back(ann[i].str());
  rep["annihilator_sample"] = basis;
  // containment of the named elements
  json named = json::array();
  auto contains = [&](const GroupRingElem& s) { return lt.act(s).is_zero(); };
  if (leading_name == "K") {
    GroupRingElem anti =
        GroupRingElem::unit(n) + GroupRingElem::single(Perm::transposition(n, n - 2, n - 1));
    Perm cyc = Perm::cycle(n, {n - 2, n - 1, n});
    GroupRingElem cyc3 = GroupRingElem::unit(n) + GroupRingElem::single(cyc) +
                         GroupRingElem::single(cyc.then(cyc));
    named.push_back(json{{"name", "pair-antisymmetry"}, {"contained", contains(anti)}});
    named.push_back(json{{"name", "cyclic-last-three"}, {"contained", contains(cyc3)}});
  }
  if (leading_name == "N") {
    GroupRingElem sym =
        GroupRingElem::unit(n) - GroupRingElem::single(Perm::transposition(n, n - 1, n));
    GroupRingElem total(n);
    for (const Perm& g : symmetric_group(n)) total.add(g, Rat(1));
    named.push_back(json{{"name", "pair-symmetry"}, {"contained", contains(sym)}});
    named.push_back(json{{"name", "full-sum"}, {"contained", contains(total)}});
  }
  rep["named_elements"] = named;
  bool ok = true;
  for (const auto& e : named) ok = ok && e.at("contained").get<bool>();
  return finish(c, rep, ok);
}

int cmd_ideal_basis(const Common& c, int n, const std::string& leading_name,
                    const std::string& family, const std::string& mode) {
  json rep;
  rep["command"] = "ideal-basis";
  rep["arity"] = n;
  rep["family"] = family;
  rep["mode"] = mode;
  bool equivariant = mode != "plain";
  bool ok = true;
  if (family == "V") {
    Cocycle nu = ideal_insertion(n - 1, equivariant, c.bounds());
    rep["cocycle"] = lincomb_json(nu.value);
    rep["formula"] = render(nu.value);
    rep["is_cocycle"] = delta(nu.value).is_zero();
    ok = delta(nu.value).is_zero();
    if (equivariant) {
      bool stable = true;
      for (int i = 1; i < n - 1; ++i) {
        LinComb diff =
            act_fields(nu.value, Perm::transposition(n - 1, i, i + 1)) - nu.value;
        stable = stable && diff.is_zero();
      }
      rep["fully_symmetric"] = stable;
      ok = ok && stable;
    }
  } else {
    rep["leading"] = leading_name;
    LeadingTerm lt = leading_by_name(leading_name, n);
    Cocycle vs = ideal_generator(n, lt, equivariant, c.bounds());
    rep["cocycle"] = lincomb_json(vs.value);
    rep["formula"] = render(vs.value);
    bool cocycle = delta(vs.value).is_zero();
    rep["is_cocycle"] = cocycle;
    ok = cocycle;
    if (equivariant) {
      auto ann = quasi_symmetries(lt);
      bool killed = true;
      for (const auto& s : ann) killed = killed && apply_group_ring(vs.value, s).is_zero();
      rep["quasi_symmetries_annihilate"] = killed;
      rep["annihilator_dim"] = ann.size();
      ok = ok && killed;
    }
  }
  return finish(c, rep, ok);
}

int cmd_correction(const Common& c, int n) {
  json rep;
  rep["command"] = "correction";
  rep["arity"] = n;
  Cocycle ideal = ideal_generator(n, LeadingTerm::curvature_type(n), true, c.bounds());
  LinComb baseline = curvature_derivative_sym_op(n);
  LinComb p = correction_term(ideal, baseline);
  rep["correction_is_zero"] = p.is_zero();
  rep["correction_terms"] = p.size();
  if (!p.is_zero()) {
    rep["c_order"] = p.max_c_order();
    rep["vf_order"] = p.max_vf_order();
    rep["correction"] = lincomb_json(p);
  }
  bool expected_zero = n <= 4;
  bool ok = expected_zero ? p.is_zero() : true;
  return finish(c, rep, ok);
}

int cmd_bianchi(const Common& c, const std::string& family, int n) {
  json rep;
  rep["command"] = "bianchi";
  rep["family"] = family;
  rep["arity"] = n;
  std::vector<IdentityReport> reps;
  if (family == "V") {
    reps = insertion_symmetry_suite(field_derivative_sym_op(n), n);
  } else {
    reps = bianchi_suite(curvature_derivative_op(n), n);
  }
  rep["identities"] = identity_reports_json(reps);
  bool ok = true;
  for (const auto& r : reps) {
    bool expect_zero = true;
    if (family == "K" && r.name.rfind("first-block-swap", 0) == 0) expect_zero = false;
    if (expect_zero) ok = ok && r.vanishes;
    else ok = ok && !r.vanishes && r.c_order <= n - 3;
  }
  return finish(c, rep, ok);
}

int cmd_naturality(const Common& c, const std::string& path, int dim, int trials,
                   std::uint64_t seed) {
  json rep;
  rep["command"] = "naturality";
  rep["input"] = path;
  rep["dim"] = dim;
  rep["trials"] = trials;
  rep["seed"] = seed;
  LinComb x = lincomb_from_file(path);
  NaturalityReport nr = naturality_check(x, dim, trials, seed);
  rep["natural"] = nr.natural;
  if (!nr.natural) rep["witness"] = nr.witness;
  return finish(c, rep, nr.natural);
}

int cmd_normalize_leading(const Common& c, const std::string& path) {
  json rep;
  rep["command"] = "normalize-leading";
  rep["input"] = path;
  LinComb u = lincomb_from_file(path);
  int n = 0;
  for (const auto& [g, coef] : u.terms()) n = std::max(n, g.field_count());
  rep["arity"] = n;
  NormalizeResult res = normalize_leading(u, n);
  rep["stability_dim"] = res.stability_dim;
  rep["generating"] = res.generating;
  if (res.generating) {
    rep["c"] = res.c.str();
    json cj = json::array();
    for (const auto& e : res.cj) cj.push_back(e.str());
    rep["cj"] = cj;
    rep["achieved_leading"] = res.achieved.str();
  }
  // NotGenerating is a value, not an error: report success either way
  return finish(c, rep, true);
}

int cmd_emit_fixture(const Common& c, const std::string& name, const std::string& out_path) {
  std::string body = fixture_json(name);
  if (out_path.empty()) {
    std::cout << body << "\n";
  } else {
    std::ofstream f(out_path);
    f << body << "\n";
  }
  return 0;
}

}  // namespace

namespace {

// permutation of 1..n with the listed images pinned, completed in order
Perm pinned_perm(int n, const std::vector<std::pair<int, int>>& pins) {
  std::vector<int> img(n, 0);
  std::vector<char> used(n + 1, 0);
  for (const auto& [from, to] : pins) {
    img[from - 1] = to;
    used[to] = 1;
  }
  int next = 1;
  for (int i = 0; i < n; ++i) {
    if (img[i]) continue;
    while (used[next]) ++next;
    img[i] = next;
    used[next] = 1;
  }
  return Perm(img);
}

}  // namespace

std::string fixture_json(const std::string& name) {
  auto dump = [](const LinComb& x) { return lincomb_json(x).dump(2); };
  if (name == "curvature") return dump(curvature_op());
  if (name == "lie-bracket") return dump(lie_bracket_op());
  if (name == "cov-deriv") return dump(covariant_deriv_op());
  if (name == "identity") return dump(identity_op());
  LinComb r = curvature_op();
  auto traced_curv = [&](const std::vector<int>& slots, int vec) {
    // slots = images of the three curvature inputs (9 marks the traced one)
    LinComb rl = act_fields(
        r, pinned_perm(9, {{1, slots[0]}, {2, slots[1]}, {3, slots[2]}}));
    Graph wire;
    int a = wire.add_vertex(VKind::Anchor, 1);
    int x = wire.add_vertex(VKind::Black, 0, vec);
    wire.set_out(x, Target{a, 0});
    return mul_trace(rl, 9, LinComb::of(wire));
  };
  if (name == "u3-traces" || name == "u3-traces-leading") {
    // R(x1,x2)(x3) + tr(R(-,x3)(x1)) x2 + tr(R(-,x3)(x2)) x1
    LinComb u = r + traced_curv({9, 3, 1}, 2) + traced_curv({9, 3, 2}, 1);
    if (name == "u3-traces") return dump(u);
    return dump(leading_part(u, 3));
  }
  if (name == "u3-wheel" || name == "u3-wheel-leading") {
    // x1 tr(R(x2,-)(x3)) + x2 tr(R(-,x1)(x3))
    LinComb u = traced_curv({2, 9, 3}, 1) + traced_curv({9, 1, 3}, 2);
    if (name == "u3-wheel") return dump(u);
    return dump(leading_part(u, 3));
  }
  throw std::invalid_argument("unknown fixture " + name);
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"exact calculus of connection/vector-field operators on decorated graphs"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  int d = 1, n = 3, ndim = 3, trials = 20;
  std::uint64_t seed = 1;
  std::string path, leading = "K", family = "D", mode = "equivariant", out_path, fam_bianchi = "K";

  auto* cdim = app.add_subcommand("dim", "dimension of the operator space");
  cdim->add_option("d", d, "number of vector-field inputs")->required();
  add_common(cdim, &common);

  auto* ckm = app.add_subcommand("kernel-module", "admissible leading-term module");
  ckm->add_option("n", n)->required();
  add_common(ckm, &common);

  auto* ccc = app.add_subcommand("check-cocycle", "verify a combination is closed");
  ccc->add_option("file", path)->required();
  add_common(ccc, &common);

  auto* cqs = app.add_subcommand("quasisym", "annihilator of a leading term");
  cqs->add_option("n", n)->required();
  cqs->add_option("--leading", leading, "K, N, or a file");
  add_common(cqs, &common);

  auto* cib = app.add_subcommand("ideal-basis", "streamlined generator cocycle");
  cib->add_option("n", n)->required();
  cib->add_option("--leading", leading);
  cib->add_option("--family", family, "D or V");
  cib->add_option("--mode", mode, "equivariant or plain");
  add_common(cib, &common);

  auto* cco = app.add_subcommand("correction", "difference from the symmetrized derivative");
  cco->add_option("n", n)->required();
  add_common(cco, &common);

  auto* cbi = app.add_subcommand("bianchi", "identity suite for a generator family");
  cbi->add_option("n", n)->required();
  cbi->add_option("--family", fam_bianchi, "K or V");
  add_common(cbi, &common);

  auto* cna = app.add_subcommand("naturality", "jet-transformation test");
  cna->add_option("file", path)->required();
  cna->add_option("--dim", ndim);
  cna->add_option("--trials", trials);
  cna->add_option("--seed", seed);
  add_common(cna, &common);

  auto* cnl = app.add_subcommand("normalize-leading", "group-ring normalization");
  cnl->add_option("file", path)->required();
  add_common(cnl, &common);

  auto* cef = app.add_subcommand("emit-fixture", "write a named fixture combination");
  cef->add_option("name", path)->required();
  cef->add_option("--out", out_path);
  add_common(cef, &common);

  std::vector<const char*> argv;
  argv.push_back("natop");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cdim->parsed()) return cmd_dim(common, d);
    if (ckm->parsed()) return cmd_kernel_module(common, n);
    if (ccc->parsed()) return cmd_check_cocycle(common, path);
    if (cqs->parsed()) return cmd_quasisym(common, n, leading);
    if (cib->parsed()) return cmd_ideal_basis(common, n, leading, family, mode);
    if (cco->parsed()) return cmd_correction(common, n);
    if (cbi->parsed()) return cmd_bianchi(common, fam_bianchi, n);
    if (cna->parsed()) return cmd_naturality(common, path, ndim, trials, seed);
    if (cnl->parsed()) return cmd_normalize_leading(common, path);
    if (cef->parsed()) return cmd_emit_fixture(common, path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace natop
