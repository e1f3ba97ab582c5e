#include "natop/opexpr.hpp"

#include <cctype>
#include <stdexcept>

#include "natop/graph_io.hpp"
#include "natop/graph_ops.hpp"

namespace natop {

namespace {

struct Tok {
  enum Kind { LParen, RParen, Sym, Str, End } kind;
  std::string text;
};

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;
  Tok next() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos >= s.size()) return {Tok::End, ""};
    char c = s[pos];
    if (c == '(') {
      ++pos;
      return {Tok::LParen, "("};
    }
    if (c == ')') {
      ++pos;
      return {Tok::RParen, ")"};
    }
    if (c == '"') {
      std::size_t end = s.find('"', pos + 1);
      if (end == std::string::npos) throw std::invalid_argument("unterminated string");
      Tok t{Tok::Str, s.substr(pos + 1, end - pos - 1)};
      pos = end + 1;
      return t;
    }
    std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' &&
           s[pos] != ')')
      ++pos;
    return {Tok::Sym, s.substr(start, pos - start)};
  }
  Tok peeked;
  bool has_peek = false;
  Tok peek() {
    if (!has_peek) {
      peeked = next();
      has_peek = true;
    }
    return peeked;
  }
  Tok take() {
    if (has_peek) {
      has_peek = false;
      return peeked;
    }
    return next();
  }
};

struct Partial {
  Graph g;
  int root;
  Rat coef;
};

using Value = std::vector<Partial>;

int union_into(Graph& dst, const Graph& src, std::vector<int>* remap) {
  remap->assign(src.vertex_count(), -1);
  for (int v = 0; v < src.vertex_count(); ++v) {
    const Vertex& x = src.vertex(v);
    (*remap)[v] = dst.add_vertex(x.kind, x.arity, x.label);
  }
  for (int v = 0; v < src.vertex_count(); ++v)
    if (src.out(v)) {
      Target t = *src.out(v);
      dst.set_out((*remap)[v], Target{(*remap)[t.v], t.g});
    }
  return 0;
}

Perm parse_cycles(const std::string& text) {
  // degree = largest number mentioned
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  int maxn = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] != '(') ++i;
    if (i >= text.size()) break;
    ++i;
    std::vector<int> cyc;
    while (i < text.size() && text[i] != ')') {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i > start) {
        int v = std::stoi(text.substr(start, i - start));
        cyc.push_back(v);
        maxn = std::max(maxn, v);
      } else {
        ++i;
      }
    }
    ++i;
    if (!cyc.empty()) cycles.push_back(cyc);
  }
  Perm p = Perm::identity(maxn);
  for (const auto& c : cycles) p = p.then(Perm::cycle(maxn, c));
  return p;
}

struct Compiler {
  Lexer lex;

  explicit Compiler(const std::string& src) : lex{src} {}

  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("operator expression: " + msg);
  }

  int slot_ref(const std::string& sym) {
    if (sym.size() < 2 || sym[0] != 'x') return -1;
    for (std::size_t i = 1; i < sym.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(sym[i]))) return -1;
    return std::stoi(sym.substr(1));
  }

  Value atom_slot(int k) {
    Partial p;
    p.root = p.g.add_vertex(VKind::VNode, 0, k);
    p.coef = Rat(1);
    return {p};
  }

  Value parse() {
    Tok t = lex.take();
    if (t.kind == Tok::Sym) {
      int k = slot_ref(t.text);
      if (k < 1) fail("expected a field reference, got '" + t.text + "'");
      return atom_slot(k);
    }
    if (t.kind != Tok::LParen) fail("expected '(' or a field reference");
    Tok head = lex.take();
    if (head.kind != Tok::Sym) fail("expected an operator head");

    if (head.text == "D" || head.text == "V") {
      Tok nt = lex.take();
      int n = std::stoi(nt.text);
      int nargs = head.text == "D" ? n : n - 1;
      if (head.text == "D" && n < 3) fail("D needs arity >= 3");
      if (head.text == "V" && n < 1) fail("V needs arity >= 1");
      std::vector<Value> args;
      for (int i = 0; i < nargs; ++i) args.push_back(parse());
      int label = 0;
      if (head.text == "V") {
        Tok lt = lex.take();
        label = lt.kind == Tok::Sym ? slot_ref(lt.text) : -1;
        if (label < 1) fail("the last operand of V must be a field reference");
      }
      expect_rparen();
      // cartesian product over argument terms
      Value out{{Graph{}, -1, Rat(1)}};
      out[0].root = out[0].g.add_vertex(head.text == "D" ? VKind::DNode : VKind::VNode, nargs,
                                        label);
      Value acc = out;
      for (int i = 0; i < nargs; ++i) {
        Value next;
        for (const Partial& base : acc)
          for (const Partial& arg : args[i]) {
            Partial np = base;
            std::vector<int> remap;
            union_into(np.g, arg.g, &remap);
            np.g.set_out(remap[arg.root], Target{np.root, i});
            np.coef = base.coef * arg.coef;
            next.push_back(std::move(np));
          }
        acc = std::move(next);
      }
      return acc;
    }
    if (head.text == "tr") {
      Tok kt = lex.take();
      int k = std::stoi(kt.text);
      Value o = parse();
      Value v = parse();
      expect_rparen();
      Value out;
      for (const Partial& po : o)
        for (const Partial& pv : v) {
          // find the 0-ary insertion labelled k in po
          int traced = -1;
          for (int u = 0; u < po.g.vertex_count(); ++u)
            if (po.g.vertex(u).kind == VKind::VNode && po.g.vertex(u).arity == 0 &&
                po.g.vertex(u).label == k)
              traced = u;
          if (traced < 0) fail("tr: field x" + std::to_string(k) + " not an order-0 input");
          if (traced == po.root) fail("tr: cannot trace a bare wire");
          Target hole = *po.g.out(traced);
          Partial np = pv;
          std::vector<int> remap;
          union_into(np.g, po.g, &remap);
          // close the wheel: the traced operator's root feeds the hole
          np.g.set_out(remap[po.root], Target{remap[hole.v], hole.g});
          // drop the traced insertion: rebuild without it
          Graph clean;
          std::vector<int> cmap(np.g.vertex_count(), -1);
          for (int u = 0; u < np.g.vertex_count(); ++u) {
            if (u == remap[traced]) continue;
            const Vertex& x = np.g.vertex(u);
            cmap[u] = clean.add_vertex(x.kind, x.arity, x.label);
          }
          for (int u = 0; u < np.g.vertex_count(); ++u) {
            if (u == remap[traced] || !np.g.out(u)) continue;
            Target t = *np.g.out(u);
            clean.set_out(cmap[u], Target{cmap[t.v], t.g});
          }
          np.coef = po.coef * pv.coef;
          np.root = cmap[np.root];
          np.g = std::move(clean);
          out.push_back(std::move(np));
        }
      return out;
    }
    if (head.text == "+") {
      Value out;
      while (lex.peek().kind != Tok::RParen) {
        Value v = parse();
        out.insert(out.end(), v.begin(), v.end());
      }
      expect_rparen();
      return out;
    }
    if (head.text == "*") {
      Tok ct = lex.take();
      Rat c = rat_parse(ct.text);
      Value v = parse();
      expect_rparen();
      for (Partial& p : v) p.coef = p.coef * c;
      return v;
    }
    if (head.text == "perm") {
      Tok st = lex.take();
      if (st.kind != Tok::Str) fail("perm expects a cycle string");
      Perm sigma = parse_cycles(st.text);
      Value v = parse();
      expect_rparen();
      for (Partial& p : v)
        for (int u = 0; u < p.g.vertex_count(); ++u) {
          Vertex& x = p.g.vertex(u);
          if (x.kind == VKind::VNode && x.label >= 1 && x.label <= sigma.size())
            x.label = sigma(x.label);
        }
      return v;
    }
    fail("unknown head '" + head.text + "'");
  }

  void expect_rparen() {
    Tok t = lex.take();
    if (t.kind != Tok::RParen) fail("expected ')'");
  }
};

}  // namespace

LinComb parse_operator_expr(const std::string& src) {
  Compiler c(src);
  Value v = c.parse();
  LinComb out;
  for (const Partial& p : v) {
    Graph g = p.g;
    int anchor = g.add_vertex(VKind::Anchor, 1);
    g.set_out(p.root, Target{anchor, 0});
    std::string why;
    if (!g.well_formed(&why)) throw std::invalid_argument("operator expression: " + why);
    out.add_graph(g, p.coef);
  }
  return out;
}

std::string operator_expr_grammar() {
  return "e ::= xK | (D n e1 ... en) | (V n e1 ... e_{n-1} xK) | (tr K eO eV)\n"
         "    | (+ e1 e2 ...) | (* p/q e) | (perm \"(1 2)(3 4)\" e)\n";
}

}  // namespace natop
