#pragma once

#include "torusrec/document.hpp"

namespace torusrec {

// Built-in instances on the unit-square torus.
//
//   k7_uniform, k7_weird, k7_negative
//       the symmetric complete graph on 7 vertices, v_i = (i/7, 3i/7 mod 1),
//       edge classes i -> i+1, i -> i+2, i -> i+3 (7 edges each, in that
//       order).  All three names share the graph and carry the three stress
//       tables "uniform", "weird", and "negative"; the name mirrors the
//       scenario the instance is usually loaded for.
//   grid_N  (N >= 1, e.g. grid_4)
//       the N x N square grid map with rightward and upward edges and a
//       "uniform" stress table.
//
// Throws std::invalid_argument for unknown names.
GraphDocument builtin_instance(const std::string& name);

// The K7 graph above without geometry: same combinatorics and shifts,
// vertices all at the origin.  Useful as a harmonic-positioning blueprint.
TorusGraph k7_blueprint();

}  // namespace torusrec
