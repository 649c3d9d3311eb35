#pragma once

#include "torusrec/torus_graph.hpp"

namespace torusrec {

// Edge-indexed values are always stated for the forward dart; the backward
// dart carries the negated value.
using Circulation = Eigen::VectorXd;

// Flow conservation at every vertex:  sum over outgoing darts of the signed
// value is zero.  Throws std::invalid_argument on a length mismatch.
bool is_circulation(const TorusGraph& g, const Circulation& phi, double tol = 1e-9);

// Integral of the shift vectors against the flow, i.e. homology_matrix * phi.
// Rejects non-circulations.
Vec2 homology_class(const TorusGraph& g, const Circulation& phi, double tol = 1e-9);

// For circulations the displacement pairing agrees with the shift pairing:
//     displacement_matrix * phi == homology_matrix * phi
// because the vertex-coordinate contributions telescope away under
// conservation.  Returns the max component deviation.
double harmonic_identity_gap(const TorusGraph& g, const Circulation& phi);
bool check_harmonic_identity(const TorusGraph& g, const Circulation& phi,
                             double tol = 1e-9);

// A cocirculation assigns a value per edge such that the signed sum around
// every face boundary vanishes.  Its cohomology class can be stated against
// two dual conventions; both are recorded.
struct Cocirculation {
    Eigen::RowVectorXd theta;
    Vec2 rotated_class;   // class in the quarter-turned dual
    Vec2 standard_class;  // class in the unrotated dual
};

// The two rows of the homology matrix, packaged as cocirculations.  Row
// sums around every face vanish exactly (the same integers that certify
// face closure).  Rotated-dual classes are (1,0) and (0,1); standard-dual
// classes are (0,1) and (-1,0).
struct CocirculationRows {
    Cocirculation row_x;
    Cocirculation row_y;
};

CocirculationRows cocirculation_rows(const TorusGraph& g);

// Fundamental cycles of a breadth-first spanning tree grown from vertex 0
// scanning incident edges in index order: one circulation per non-tree
// edge, value +1 there, +-1 along the tree return path.  Their homology
// classes span the classes attainable by circulations.
std::vector<Circulation> cycle_basis(const TorusGraph& g);

}  // namespace torusrec
