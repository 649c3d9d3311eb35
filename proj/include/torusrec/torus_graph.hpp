#pragma once

#include <string>
#include <vector>

#include "torusrec/flat_torus.hpp"

namespace torusrec {

// Graphs are stored as combinatorial maps.  Edge k owns the two darts 2k
// (forward, tail -> head) and 2k+1 (backward); reversal flips the low bit.
// Each dart carries an integer shift vector recording which lattice
// translate of the head it points to, so the dart's displacement is
//     head + shift - tail        (reference coordinates).
// Reversal must negate the shift.
using Dart = int;

inline Dart rev(Dart d) { return d ^ 1; }
inline int edge_of(Dart d) { return d >> 1; }
inline bool is_forward(Dart d) { return (d & 1) == 0; }
inline Dart forward_dart(int edge) { return 2 * edge; }
inline Dart backward_dart(int edge) { return 2 * edge + 1; }

struct TorusGraph {
    struct Edge {
        int tail = 0;
        int head = 0;
    };

    FlatTorus torus;
    std::vector<Vec2> vertices;          // reference coordinates in [0,1)^2
    std::vector<Edge> edges;
    std::vector<Vec2i> dart_shifts;      // per dart, antisymmetric under rev
    std::vector<std::vector<Dart>> rotation;  // ccw outgoing darts per vertex

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int dart_count() const { return 2 * edge_count(); }

    int tail_of(Dart d) const {
        const Edge& e = edges[edge_of(d)];
        return is_forward(d) ? e.tail : e.head;
    }
    int head_of(Dart d) const { return tail_of(rev(d)); }

    Vec2i shift_of(Dart d) const { return dart_shifts[d]; }

    // Reference-coordinate displacement of a dart.
    Vec2 displacement(Dart d) const {
        return vertices[head_of(d)] + shift_of(d).cast<double>() - vertices[tail_of(d)];
    }
};

struct Violation {
    enum Kind {
        BadIndex,          // edge endpoint or rotation entry out of range
        BadShift,          // shift arrays sized wrong or rev-antisymmetry broken
        BadRotation,       // rotation lists are not a partition of outgoing darts
        SingularTorus,
        ZeroLengthEdge,
        Disconnected,
        EulerMismatch,     // dart orbits do not close up to V - E + F = 0
        FaceNotClosed,     // homology vectors around a face do not cancel
        CoordinateRange,   // vertex coordinates outside [0,1)^2
    };
    Kind kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(Violation::Kind k) const;
    std::string to_string() const;
};

// Checks every structural invariant: index ranges, shift antisymmetry,
// rotation consistency, nonsingular torus, nonzero edge displacements,
// connectivity, Euler characteristic zero, and exact face closure.
ValidationReport validate(const TorusGraph& g);

// Faces are the orbits of d -> rotation-predecessor of rev(d); with a
// counterclockwise rotation system this walks each face boundary ccw
// (interior on the left).  Only valid when the rotation lists are sound.
struct FaceSet {
    std::vector<std::vector<Dart>> orbits;
    std::vector<int> face_of;  // dart -> orbit index

    int count() const { return static_cast<int>(orbits.size()); }
};

FaceSet face_orbits(const TorusGraph& g);

// 2 x E matrix whose column e is the displacement of the forward dart of e.
Eigen::Matrix2Xd displacement_matrix(const TorusGraph& g);

// 2 x E integer matrix of forward-dart shift vectors.
Eigen::Matrix2Xi homology_matrix(const TorusGraph& g);

struct NativeCoords {
    std::vector<Vec2> vertices;        // basis * reference position
    Eigen::Matrix2Xd displacements;    // basis * displacement_matrix
};

NativeCoords native_coords(const TorusGraph& g);

// Fills the rotation lists by sorting outgoing darts counterclockwise by
// the angle of their native displacement.  Throws std::runtime_error when
// two darts at a vertex are angularly indistinguishable.
void rotation_from_geometry(TorusGraph& g, double angle_tol = 1e-12);

// Reduces raw reference coordinates into [0,1)^2, compensating every dart
// shift so displacements are unchanged.  Raw coordinates may be any reals.
void normalize_coordinates(TorusGraph& g, const std::vector<Vec2>& raw);

// Shortest representative of a reference-coordinate difference: the shift
// k minimizing |raw + k|, ties broken toward lexicographically smaller k.
Vec2i shortest_shift(const Vec2& raw);

}  // namespace torusrec
