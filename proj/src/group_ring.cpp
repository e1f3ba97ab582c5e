#include "natop/group_ring.hpp"

namespace natop {

GroupRingElem GroupRingElem::single(const Perm& p, const Rat& c) {
  GroupRingElem e(p.size());
  e.add(p, c);
  return e;
}

void GroupRingElem::add(const Perm& p, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
  GroupRingElem r = *this;
  for (const auto& [p, c] : o.terms_) r.add(p, c);
  return r;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const {
  GroupRingElem r = *this;
  for (const auto& [p, c] : o.terms_) r.add(p, -c);
  return r;
}

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
  GroupRingElem r(n_);
  for (const auto& [p, c] : terms_)
    for (const auto& [q, d] : o.terms_) r.add(p.then(q), c * d);
  return r;
}

GroupRingElem GroupRingElem::operator*(const Rat& c) const {
  GroupRingElem r(n_);
  if (c == 0) return r;
  for (const auto& [p, d] : terms_) r.add(p, c * d);
  return r;
}

bool GroupRingElem::operator<(const GroupRingElem& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  return terms_ < o.terms_;
}

std::string GroupRingElem::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) out += " + ";
    out += rat_str(c) + "*" + p.str();
    first = false;
  }
  return out;
}

}  // namespace natop
