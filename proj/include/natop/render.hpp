#pragma once

#include <string>

#include "natop/lincomb.hpp"

namespace natop {

// Human-readable formula for a graph: jets written as x3[a,b] (field 3
// differentiated along a and b), connection symbols as G[a,...](p,q), wheels
// as tr(# -> ...), schemes with D/V heads.
std::string render_graph(const CanonGraph& g, bool latex = false);
std::string render(const LinComb& x, bool latex = false);

}  // namespace natop
