#include "natop/leading_term.hpp"

#include <algorithm>
#include <stdexcept>

namespace natop {

Perm LeadingTerm::coset_rep(const Perm& g) {
  int n = g.size();
  std::vector<int> img = g.images();
  std::sort(img.begin(), img.end() - 2);
  if (img[n - 2] > img[n - 1]) std::swap(img[n - 2], img[n - 1]);
  return Perm(img);
}

LeadingTerm LeadingTerm::of(const Perm& g, const Rat& c) {
  LeadingTerm x(g.size());
  x.add(g, c);
  return x;
}

LeadingTerm LeadingTerm::curvature_type(int n) {
  if (n < 3) throw std::invalid_argument("curvature_type: arity must be >= 3");
  LeadingTerm x(n);
  x.add(Perm::identity(n), Rat(-1));
  x.add(Perm::transposition(n, n - 2, n - 1), Rat(1));
  return x;
}

LeadingTerm LeadingTerm::normal_type(int n) {
  if (n < 3) throw std::invalid_argument("normal_type: arity must be >= 3");
  LeadingTerm x(n);
  Rat c(Int(2), Int(n) * Int(n - 1));
  for (const Perm& u : unshuffles(n - 2, 2)) x.add(u, c);
  x.add(Perm::identity(n), Rat(-1));
  return x;
}

Rat LeadingTerm::coeff(const Perm& u) const {
  auto it = coeffs_.find(u);
  return it == coeffs_.end() ? Rat(0) : it->second;
}

void LeadingTerm::add(const Perm& g, const Rat& c) {
  if (c == 0) return;
  Perm u = coset_rep(g);
  auto it = coeffs_.find(u);
  if (it == coeffs_.end()) {
    coeffs_.emplace(std::move(u), c);
  } else {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

LeadingTerm LeadingTerm::operator+(const LeadingTerm& o) const {
  LeadingTerm r = *this;
  for (const auto& [u, c] : o.coeffs_) r.add(u, c);
  return r;
}

LeadingTerm LeadingTerm::operator-(const LeadingTerm& o) const {
  LeadingTerm r = *this;
  for (const auto& [u, c] : o.coeffs_) r.add(u, -c);
  return r;
}

LeadingTerm LeadingTerm::operator*(const Rat& c) const {
  LeadingTerm r(n_);
  if (c == 0) return r;
  for (const auto& [u, d] : coeffs_) r.coeffs_.emplace(u, c * d);
  return r;
}

LeadingTerm LeadingTerm::act(const Perm& g) const {
  if (g.size() != n_) throw std::invalid_argument("LeadingTerm::act: arity mismatch");
  LeadingTerm r(n_);
  for (const auto& [u, c] : coeffs_) r.add(u.then(g), c);
  return r;
}

LeadingTerm LeadingTerm::act(const GroupRingElem& s) const {
  LeadingTerm r(n_);
  for (const auto& [g, c] : s.terms()) r = r + act(g) * c;
  return r;
}

Rat LeadingTerm::theta() const {
  Rat sum(0);
  for (const auto& [u, c] : coeffs_) sum += c;
  return -sum;
}

std::string LeadingTerm::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [u, c] : coeffs_) {
    if (!first) out += " + ";
    out += rat_str(c) + "*[" + u.str() + "]";
    first = false;
  }
  return out;
}

}  // namespace natop
