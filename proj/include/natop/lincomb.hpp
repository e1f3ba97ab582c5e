#pragma once

#include <functional>
#include <map>
#include <string>

#include "natop/canon.hpp"
#include "natop/rational.hpp"

namespace natop {

// Sparse rational combination of canonical graphs.
class LinComb {
 public:
  LinComb() = default;

  static LinComb of(const Graph& g, const Rat& c = Rat(1), std::vector<int> white_order = {});

  const std::map<CanonGraph, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const CanonGraph& g, const Rat& c);
  void add_graph(const Graph& g, const Rat& c, std::vector<int> white_order = {});
  LinComb operator+(const LinComb& o) const;
  LinComb operator-(const LinComb& o) const;
  LinComb operator*(const Rat& c) const;
  LinComb& operator+=(const LinComb& o);
  bool operator==(const LinComb& o) const { return terms_ == o.terms_; }

  Rat coeff(const CanonGraph& g) const;

  // apply f to every term; f returns the image of a single graph
  LinComb map_terms(const std::function<LinComb(const CanonGraph&)>& f) const;

  int max_vf_order() const;   // max over terms of sum of black arities
  int max_c_order() const;    // max over terms of max nabla arity - 2 (0 if none)
  int min_nabla_count() const;
  int max_nabla_count() const;

  std::string str() const;

 private:
  std::map<CanonGraph, Rat> terms_;
};

}  // namespace natop
