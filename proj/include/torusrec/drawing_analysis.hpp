#pragma once

#include "torusrec/torus_graph.hpp"

namespace torusrec {

// All geometry below happens in native coordinates of the graph's torus, so
// verdicts do not depend on which lattice basis represents the torus.

struct CoincidentVertexPair {
    int a = 0, b = 0;      // a <= b
    Vec2i offset;          // lattice translate of b realizing the coincidence
    double distance = 0.0;
};

struct CrossingEdgePair {
    int edge_a = 0, edge_b = 0;  // edge_a <= edge_b
    Vec2i offset;                // translate applied to edge_b's lift
    double param_a = 0.0;        // crossing parameter along each segment
    double param_b = 0.0;
};

struct OverlapEdgePair {
    enum Kind {
        Collinear,        // positive-length shared subsegment
        EndpointContact,  // an endpoint touches the other segment's interior
    };
    int edge_a = 0, edge_b = 0;  // edge_a <= edge_b
    Vec2i offset;
    Kind kind = Collinear;
    double extent = 0.0;  // overlap length (Collinear) or 0 (contact)
};

struct DegeneracyReport {
    std::vector<CoincidentVertexPair> coincident_vertex_pairs;
    std::vector<CrossingEdgePair> crossing_edge_pairs;
    std::vector<OverlapEdgePair> overlapping_edge_pairs;
    std::vector<int> self_intersecting_faces;

    bool empty() const {
        return coincident_vertex_pairs.empty() && crossing_edge_pairs.empty() &&
               overlapping_edge_pairs.empty() && self_intersecting_faces.empty();
    }
};

// Exhaustive pairwise degeneracy scan in the universal cover.  Every edge
// pair (including an edge against its own translates) is tested against all
// lattice offsets whose lifted bounding boxes come within tolerance; shared
// combinatorial endpoints are exempt at the shared lift only.  Pairs are
// recorded once, lower index first; self-pairs use the lexicographically
// positive offset.
DegeneracyReport analyze_drawing(const TorusGraph& g, double tol = 1e-9);

struct FacePolygon {
    int face = 0;
    std::vector<Dart> darts;
    std::vector<Vec2> corners;  // native universal-cover corner per dart tail
    double closure_gap = 0.0;
};

// Boundary polylines of all faces, traced dart by dart from the lift of the
// first dart's tail.  Throws std::runtime_error if a boundary fails to
// close within tol (broken homology data).
std::vector<FacePolygon> face_polygons(const TorusGraph& g, double tol = 1e-9);

bool is_embedding(const TorusGraph& g, double tol = 1e-9);

// Re-expresses the torus over the basis (old basis) * U for a unimodular
// integer matrix U: the lattice, the native geometry, and every verdict
// above are unchanged.  Throws std::invalid_argument if |det U| != 1.
TorusGraph change_torus_basis(const TorusGraph& g, const Eigen::Matrix2i& u);

}  // namespace torusrec
