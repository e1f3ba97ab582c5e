#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace natop {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long num, long den = 1) { return Rat(Int(num), Int(den)); }

// Canonical "n" or "n/d" form, d > 0.
inline std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

Rat rat_parse(const std::string& s);

}  // namespace natop
