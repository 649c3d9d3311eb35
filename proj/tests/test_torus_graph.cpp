#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "torusrec/instances.hpp"
#include "torusrec/torus_graph.hpp"

using namespace torusrec;

namespace {

TorusGraph k7() { return builtin_instance("k7_uniform").graph; }

// One vertex, loops (1,0), (0,1), (1,1): the diagonal triangulation of the
// square torus.  Two triangular faces.
TorusGraph one_vertex_triangulation() {
    TorusGraph g;
    g.vertices = {Vec2(0.25, 0.25)};
    g.edges = {{0, 0}, {0, 0}, {0, 0}};
    g.dart_shifts = {Vec2i(1, 0), Vec2i(-1, 0), Vec2i(0, 1),
                     Vec2i(0, -1), Vec2i(1, 1), Vec2i(-1, -1)};
    rotation_from_geometry(g);
    return g;
}

}  // namespace

TEST_CASE("dart arithmetic") {
    CHECK(rev(6) == 7);
    CHECK(rev(7) == 6);
    CHECK(edge_of(7) == 3);
    CHECK(forward_dart(3) == 6);
    CHECK(backward_dart(3) == 7);
    CHECK(is_forward(6));
    CHECK_FALSE(is_forward(7));
}

TEST_CASE("k7 instance structure is the frozen one") {
    TorusGraph g = k7();
    REQUIRE(g.vertex_count() == 7);
    REQUIRE(g.edge_count() == 21);

    // tail, head, shift per edge
    const int expect[21][4] = {
        {0, 1, 0, 0},  {1, 2, 0, 0}, {2, 3, 0, 1},  {3, 4, 0, 0}, {4, 5, 0, 1},
        {5, 6, 0, 0},  {6, 0, 1, 1}, {0, 2, 0, -1}, {1, 3, 0, 0}, {2, 4, 0, 0},
        {3, 5, 0, 0},  {4, 6, 0, 0}, {5, 0, 1, 0},  {6, 1, 1, 0}, {0, 3, 0, 0},
        {1, 4, 0, 0},  {2, 5, 0, 1}, {3, 6, 0, 0},  {4, 0, 1, 1}, {5, 1, 1, 0},
        {6, 2, 1, 0}};
    for (int e = 0; e < 21; ++e) {
        CAPTURE(e);
        CHECK(g.edges[e].tail == expect[e][0]);
        CHECK(g.edges[e].head == expect[e][1]);
        CHECK(g.shift_of(forward_dart(e)) == Vec2i(expect[e][2], expect[e][3]));
        CHECK(g.shift_of(backward_dart(e)) == Vec2i(-expect[e][2], -expect[e][3]));
    }
    CHECK(g.rotation[0] == std::vector<Dart>{37, 13, 14, 28, 0, 25});

    // The three edge classes have displacements A, B, C regardless of the
    // wraparound, e.g. edge 6 runs 6 -> 0 across the corner.
    Vec2 a(1.0 / 7, 3.0 / 7), b(2.0 / 7, -1.0 / 7), c(3.0 / 7, 2.0 / 7);
    for (int e = 0; e < 7; ++e) {
        CHECK((g.displacement(forward_dart(e)) - a).norm() < 1e-15);
        CHECK((g.displacement(forward_dart(7 + e)) - b).norm() < 1e-15);
        CHECK((g.displacement(forward_dart(14 + e)) - c).norm() < 1e-15);
    }
}

TEST_CASE("k7 validates with 14 faces") {
    TorusGraph g = k7();
    ValidationReport rep = validate(g);
    CHECK(rep.ok());
    FaceSet faces = face_orbits(g);
    CHECK(faces.count() == 14);
    for (const auto& orbit : faces.orbits) CHECK(orbit.size() == 3);
    // every dart in exactly one face
    std::vector<int> seen(g.dart_count(), 0);
    for (const auto& orbit : faces.orbits)
        for (Dart d : orbit) seen[d]++;
    for (int d = 0; d < g.dart_count(); ++d) CHECK(seen[d] == 1);
}

TEST_CASE("displacement and homology matrices agree through the telescope") {
    TorusGraph g = k7();
    Eigen::Matrix2Xd disp = displacement_matrix(g);
    Eigen::Matrix2Xi hom = homology_matrix(g);
    for (int e = 0; e < g.edge_count(); ++e) {
        Vec2 expected = g.vertices[g.edges[e].head] + hom.col(e).cast<double>() -
                        g.vertices[g.edges[e].tail];
        CHECK((disp.col(e) - expected).norm() == 0.0);
    }
}

TEST_CASE("one-vertex triangulation") {
    TorusGraph g = one_vertex_triangulation();
    ValidationReport rep = validate(g);
    CHECK(rep.ok());
    FaceSet faces = face_orbits(g);
    CHECK(faces.count() == 2);
    for (const auto& orbit : faces.orbits) CHECK(orbit.size() == 3);
}

TEST_CASE("validate flags broken shift antisymmetry") {
    TorusGraph g = k7();
    g.dart_shifts[backward_dart(2)] = Vec2i(0, 0);  // forward is (0,1)
    ValidationReport rep = validate(g);
    CHECK_FALSE(rep.ok());
    CHECK(rep.has(Violation::BadShift));
}

TEST_CASE("validate flags out-of-range coordinates") {
    TorusGraph g = k7();
    g.vertices[3] = Vec2(1.5, 0.25);
    CHECK(validate(g).has(Violation::CoordinateRange));
}

TEST_CASE("validate flags singular torus") {
    TorusGraph g = k7();
    g.torus.basis << 1, 1, 1, 1;
    CHECK(validate(g).has(Violation::SingularTorus));
}

TEST_CASE("validate flags zero-length edges") {
    TorusGraph g = builtin_instance("grid_1").graph;
    REQUIRE(g.edge_count() == 2);
    g.dart_shifts[forward_dart(0)] = Vec2i(0, 0);  // was (1,0)
    g.dart_shifts[backward_dart(0)] = Vec2i(0, 0);
    CHECK(validate(g).has(Violation::ZeroLengthEdge));
}

TEST_CASE("validate flags broken face closure") {
    // dropping edge 2's wraparound leaves both triangles at that edge open
    // (the edge keeps a nonzero displacement, so only closure breaks)
    TorusGraph g = k7();
    g.dart_shifts[forward_dart(2)] = Vec2i(0, 0);  // was (0,1)
    g.dart_shifts[backward_dart(2)] = Vec2i(0, 0);
    ValidationReport rep = validate(g);
    CHECK(rep.has(Violation::FaceNotClosed));
    CHECK_FALSE(rep.has(Violation::ZeroLengthEdge));
}

TEST_CASE("validate flags rotation lists that are not a partition") {
    TorusGraph g = k7();
    g.rotation[0][0] = g.rotation[0][1];  // duplicate, and one dart missing
    CHECK(validate(g).has(Violation::BadRotation));
}

TEST_CASE("validate flags a disconnected map") {
    // two disjoint copies of the single-square map
    TorusGraph g;
    g.vertices = {Vec2(0, 0), Vec2(0.5, 0.5)};
    g.edges = {{0, 0}, {0, 0}, {1, 1}, {1, 1}};
    g.dart_shifts = {Vec2i(1, 0), Vec2i(-1, 0), Vec2i(0, 1), Vec2i(0, -1),
                     Vec2i(1, 0), Vec2i(-1, 0), Vec2i(0, 1), Vec2i(0, -1)};
    g.rotation = {{0, 2, 1, 3}, {4, 6, 5, 7}};
    ValidationReport rep = validate(g);
    CHECK(rep.has(Violation::Disconnected));
}

TEST_CASE("validate flags bad endpoint indices") {
    TorusGraph g = k7();
    g.edges[5].head = 11;
    CHECK(validate(g).has(Violation::BadIndex));
}

TEST_CASE("rotation_from_geometry rejects angularly equal darts") {
    TorusGraph g;
    g.vertices = {Vec2(0, 0), Vec2(0.5, 0)};
    // both edges leave vertex 0 pointing in the +x direction
    g.edges = {{0, 1}, {0, 1}};
    g.dart_shifts = {Vec2i(0, 0), Vec2i(0, 0), Vec2i(1, 0), Vec2i(-1, 0)};
    CHECK_THROWS_AS(rotation_from_geometry(g), std::runtime_error);
}

TEST_CASE("normalize_coordinates reduces and compensates") {
    TorusGraph g = k7();
    std::vector<Vec2> raw = g.vertices;
    raw[1] += Vec2(3, -2);
    raw[4] += Vec2(-1, 5);
    // the drawing defined by the raw positions and the current shifts is
    // what must survive the reduction
    Eigen::Matrix2Xd expected(2, g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        expected.col(e) = raw[g.edges[e].head] +
                          g.shift_of(forward_dart(e)).cast<double>() -
                          raw[g.edges[e].tail];
    }
    normalize_coordinates(g, raw);
    for (const Vec2& v : g.vertices) {
        CHECK(v.x() >= 0.0);
        CHECK(v.x() < 1.0);
        CHECK(v.y() >= 0.0);
        CHECK(v.y() < 1.0);
    }
    CHECK((displacement_matrix(g) - expected).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK(validate(g).ok());
}

TEST_CASE("shortest_shift picks the nearest representative") {
    CHECK(shortest_shift(Vec2(0.6, 0.0)) == Vec2i(-1, 0));
    CHECK(shortest_shift(Vec2(0.4, 0.0)) == Vec2i(0, 0));
    CHECK(shortest_shift(Vec2(-0.7, 0.9)) == Vec2i(1, -1));
    // exact tie resolved toward the lexicographically smaller shift
    CHECK(shortest_shift(Vec2(0.5, 0.0)) == Vec2i(-1, 0));
}

TEST_CASE("flat torus coordinate maps invert each other") {
    FlatTorus t = FlatTorus::from_basis((Mat2() << 2, 1, 0, 3).finished());
    Vec2 ref(0.3, 0.8);
    CHECK((t.to_reference(t.to_native(ref)) - ref).norm() < 1e-15);
    CHECK(t.det() == doctest::Approx(6.0));
    CHECK(t.nonsingular());
    FlatTorus sq = FlatTorus::square();
    CHECK((sq.to_native(ref) - ref).norm() == 0.0);
}
