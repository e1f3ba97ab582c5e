#include "natop/perm.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace natop {

Perm Perm::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Perm(std::move(v));
}

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int x : img_) {
    if (x < 1 || x > size() || seen[x - 1]) throw std::invalid_argument("Perm: not a bijection");
    seen[x - 1] = 1;
  }
}

Perm Perm::transposition(int n, int a, int b) {
  Perm p = identity(n);
  std::swap(p.img_[a - 1], p.img_[b - 1]);
  return p;
}

Perm Perm::cycle(int n, const std::vector<int>& c) {
  Perm p = identity(n);
  for (std::size_t i = 0; i < c.size(); ++i) p.img_[c[i] - 1] = c[(i + 1) % c.size()];
  return p;
}

Perm Perm::then(const Perm& g) const {
  assert(size() == g.size());
  std::vector<int> v(size());
  for (int i = 0; i < size(); ++i) v[i] = g.img_[img_[i] - 1];
  return Perm(std::move(v));
}

Perm Perm::inverse() const {
  std::vector<int> v(size());
  for (int i = 0; i < size(); ++i) v[img_[i] - 1] = i + 1;
  return Perm(std::move(v));
}

int Perm::sign() const {
  std::vector<char> seen(size(), 0);
  int sgn = 1;
  for (int i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = img_[j] - 1) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sgn = -sgn;
  }
  return sgn;
}

bool Perm::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (img_[i] != i + 1) return false;
  return true;
}

std::string Perm::str() const {
  std::vector<char> seen(size(), 0);
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (seen[i] || img_[i] == i + 1) {
      seen[i] = 1;
      continue;
    }
    out += "(";
    bool first = true;
    for (int j = i; !seen[j]; j = img_[j] - 1) {
      seen[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::vector<Perm> symmetric_group(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Perm> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::vector<Perm> unshuffles(int p, int q) {
  int n = p + q;
  std::vector<Perm> out;
  // choose the image set of the first block; both blocks are then sorted
  std::vector<int> pick(p);
  std::vector<char> mask(n + 1, 0);
  std::function<void(int, int)> rec = [&](int start, int got) {
    if (got == p) {
      std::vector<int> img;
      img.reserve(n);
      img.insert(img.end(), pick.begin(), pick.end());
      for (int x = 1; x <= n; ++x)
        if (!mask[x]) img.push_back(x);
      out.emplace_back(img);
      return;
    }
    for (int x = start; x <= n; ++x) {
      mask[x] = 1;
      pick[got] = x;
      rec(x + 1, got + 1);
      mask[x] = 0;
    }
  };
  rec(1, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace natop
