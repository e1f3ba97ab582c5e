#include "natop/lincomb.hpp"

#include <algorithm>

namespace natop {

LinComb LinComb::of(const Graph& g, const Rat& c, std::vector<int> white_order) {
  LinComb l;
  l.add_graph(g, c, std::move(white_order));
  return l;
}

void LinComb::add(const CanonGraph& g, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    terms_.emplace(g, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LinComb::add_graph(const Graph& g, const Rat& c, std::vector<int> white_order) {
  CanonResult r = canonicalize(g, std::move(white_order));
  if (r.zero) return;
  add(r.graph, c * r.sign);
}

LinComb LinComb::operator+(const LinComb& o) const {
  LinComb r = *this;
  for (const auto& [g, c] : o.terms_) r.add(g, c);
  return r;
}

LinComb LinComb::operator-(const LinComb& o) const {
  LinComb r = *this;
  for (const auto& [g, c] : o.terms_) r.add(g, -c);
  return r;
}

LinComb LinComb::operator*(const Rat& c) const {
  LinComb r;
  if (c == 0) return r;
  for (const auto& [g, d] : terms_) r.terms_.emplace(g, c * d);
  return r;
}

LinComb& LinComb::operator+=(const LinComb& o) {
  for (const auto& [g, c] : o.terms_) add(g, c);
  return *this;
}

Rat LinComb::coeff(const CanonGraph& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Rat(0) : it->second;
}

LinComb LinComb::map_terms(const std::function<LinComb(const CanonGraph&)>& f) const {
  LinComb out;
  for (const auto& [g, c] : terms_) out += f(g) * c;
  return out;
}

namespace {
int vf_order_of(const CanonGraph& cg) {
  Graph g = cg.decode();
  int s = 0;
  for (const Vertex& v : g.vertices())
    if (v.kind == VKind::Black || v.kind == VKind::VNode) s += v.arity;
  return s;
}
}  // namespace

int LinComb::max_vf_order() const {
  int m = 0;
  for (const auto& [g, c] : terms_) m = std::max(m, vf_order_of(g));
  return m;
}

int LinComb::max_c_order() const {
  int m = 0;
  for (const auto& [g, c] : terms_) m = std::max(m, std::max(0, g.max_nabla_arity() - 2));
  return m;
}

int LinComb::min_nabla_count() const {
  int m = -1;
  for (const auto& [g, c] : terms_) {
    int n = g.nabla_count();
    if (m < 0 || n < m) m = n;
  }
  return m < 0 ? 0 : m;
}

int LinComb::max_nabla_count() const {
  int m = 0;
  for (const auto& [g, c] : terms_) m = std::max(m, g.nabla_count());
  return m;
}

std::string LinComb::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [g, c] : terms_) {
    if (!out.empty()) out += "  +  ";
    out += rat_str(c) + " * <" + g.key() + ">";
  }
  return out;
}

}  // namespace natop
