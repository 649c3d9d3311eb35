#include "doctest.h"

#include <algorithm>
#include <set>

#include "torusrec/drawing_analysis.hpp"
#include "torusrec/instances.hpp"
#include "torusrec/reciprocal.hpp"

using namespace torusrec;

namespace {

DualDrawing weird_orthogonal_dual() {
    GraphDocument doc = builtin_instance("k7_weird");
    const StressVector& w = doc.stresses.at("weird");
    OrthogonalFamilyResult fam = orthogonal_torus_family(doc.graph, w);
    TorusGraph primal = doc.graph;
    primal.torus = FlatTorus::from_basis(fam.family->base);
    return build_dual_drawing(primal, w, ReciprocalMode::Orthogonal, primal.torus);
}

}  // namespace

TEST_CASE("the symmetric k7 drawing is an embedding") {
    TorusGraph g = builtin_instance("k7_uniform").graph;
    DegeneracyReport rep = analyze_drawing(g);
    CHECK(rep.empty());
    CHECK(is_embedding(g));
}

TEST_CASE("grids are embeddings") {
    for (const char* name : {"grid_1", "grid_2", "grid_4"}) {
        CAPTURE(name);
        CHECK(is_embedding(builtin_instance(name).graph));
    }
}

TEST_CASE("the weird orthogonal dual degenerates exactly as documented") {
    DualDrawing dual = weird_orthogonal_dual();
    DegeneracyReport rep = analyze_drawing(dual.graph);

    CHECK(rep.coincident_vertex_pairs.size() == 7);
    for (const CoincidentVertexPair& p : rep.coincident_vertex_pairs) {
        CHECK(p.a < p.b);
        CHECK(p.distance < 1e-12);
    }
    // the coincidences pair up all 14 dual vertices
    std::set<int> seen;
    for (const CoincidentVertexPair& p : rep.coincident_vertex_pairs) {
        seen.insert(p.a);
        seen.insert(p.b);
    }
    CHECK(seen.size() == 14);

    int collinear = 0;
    for (const OverlapEdgePair& p : rep.overlapping_edge_pairs) {
        if (p.kind == OverlapEdgePair::Collinear) {
            ++collinear;
            CHECK(p.extent > 0.1);
        }
    }
    CHECK(collinear == 21);

    CHECK(rep.self_intersecting_faces.size() >= 1);
    CHECK_FALSE(is_embedding(dual.graph));
}

TEST_CASE("coincident vertices are reported once with their offset") {
    TorusGraph g;
    g.vertices = {Vec2(0.5, 0.5), Vec2(0.5, 0.5)};
    g.edges = {{0, 1}, {0, 1}, {0, 1}};
    g.dart_shifts = {Vec2i(1, 0), Vec2i(-1, 0), Vec2i(0, 1),
                     Vec2i(0, -1), Vec2i(1, 1), Vec2i(-1, -1)};
    rotation_from_geometry(g);
    REQUIRE(validate(g).ok());

    DegeneracyReport rep = analyze_drawing(g);
    REQUIRE(rep.coincident_vertex_pairs.size() == 1);
    CHECK(rep.coincident_vertex_pairs[0].a == 0);
    CHECK(rep.coincident_vertex_pairs[0].b == 1);
    CHECK(rep.coincident_vertex_pairs[0].offset == Vec2i(0, 0));
    CHECK(rep.coincident_vertex_pairs[0].distance == 0.0);
    // endpoint meetings at the coincident pair are owned by the vertex
    // report, not duplicated as edge contacts
    CHECK(rep.crossing_edge_pairs.empty());
    CHECK(rep.overlapping_edge_pairs.empty());
}

TEST_CASE("crossings are classified with interior parameters") {
    DualDrawing dual = weird_orthogonal_dual();
    DegeneracyReport rep = analyze_drawing(dual.graph);
    CHECK_FALSE(rep.crossing_edge_pairs.empty());
    NativeCoords nat = native_coords(dual.graph);
    const Mat2& m = dual.graph.torus.basis;
    for (const CrossingEdgePair& p : rep.crossing_edge_pairs) {
        CHECK(p.param_a > 0.0);
        CHECK(p.param_a < 1.0);
        CHECK(p.param_b > 0.0);
        CHECK(p.param_b < 1.0);
        // the parameters name the same point on both segments
        Vec2 on_a = nat.vertices[dual.graph.edges[p.edge_a].tail] +
                    p.param_a * nat.displacements.col(p.edge_a);
        Vec2 on_b = nat.vertices[dual.graph.edges[p.edge_b].tail] +
                    m * p.offset.cast<double>() +
                    p.param_b * nat.displacements.col(p.edge_b);
        CHECK((on_a - on_b).norm() < 1e-9);
    }
}

TEST_CASE("face polygons of the unit square map") {
    TorusGraph g = builtin_instance("grid_1").graph;
    std::vector<FacePolygon> polys = face_polygons(g);
    REQUIRE(polys.size() == 1);
    const FacePolygon& p = polys[0];
    REQUIRE(p.corners.size() == 4);
    CHECK(p.closure_gap < 1e-15);

    // counterclockwise unit square from wherever the trace starts
    std::vector<Vec2> expected = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
    int start = -1;
    for (int i = 0; i < 4; ++i) {
        if ((p.corners[0] - expected[i]).norm() < 1e-12) start = i;
    }
    REQUIRE(start >= 0);
    for (int i = 0; i < 4; ++i) {
        CAPTURE(i);
        CHECK((p.corners[i] - expected[(start + i) % 4]).norm() < 1e-12);
    }
}

TEST_CASE("k7 face polygons close into triangles") {
    TorusGraph g = builtin_instance("k7_uniform").graph;
    std::vector<FacePolygon> polys = face_polygons(g);
    REQUIRE(polys.size() == 14);
    for (const FacePolygon& p : polys) {
        CHECK(p.darts.size() == 3);
        CHECK(p.corners.size() == 3);
        CHECK(p.closure_gap < 1e-15);
    }
}

TEST_CASE("face_polygons rejects broken homology data") {
    TorusGraph g = builtin_instance("k7_uniform").graph;
    g.dart_shifts[forward_dart(2)] = Vec2i(0, 0);
    g.dart_shifts[backward_dart(2)] = Vec2i(0, 0);
    CHECK_THROWS_AS(face_polygons(g), std::runtime_error);
}

TEST_CASE("torus change of basis preserves geometry and verdicts") {
    TorusGraph g = builtin_instance("k7_uniform").graph;
    Eigen::Matrix2i u;
    u << 1, 1, 0, 1;

    TorusGraph h = change_torus_basis(g, u);
    CHECK(validate(h).ok());
    // same lattice: basis columns generate it
    CHECK((h.torus.basis - g.torus.basis * u.cast<double>()).lpNorm<Eigen::Infinity>() ==
          0.0);
    // native edge geometry is untouched
    NativeCoords before = native_coords(g);
    NativeCoords after = native_coords(h);
    CHECK((before.displacements - after.displacements).lpNorm<Eigen::Infinity>() <
          1e-12);
    CHECK(is_embedding(h));

    // a second change with the inverse returns to the original drawing
    Eigen::Matrix2i uinv;
    uinv << 1, -1, 0, 1;
    TorusGraph back = change_torus_basis(h, uinv);
    CHECK((back.torus.basis - g.torus.basis).lpNorm<Eigen::Infinity>() == 0.0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        CHECK((back.vertices[v] - g.vertices[v]).norm() < 1e-12);
    }
    for (int d = 0; d < g.dart_count(); ++d) {
        CHECK(back.dart_shifts[d] == g.dart_shifts[d]);
    }
}

TEST_CASE("degenerate drawings stay degenerate under change of basis") {
    DualDrawing dual = weird_orthogonal_dual();
    DegeneracyReport before = analyze_drawing(dual.graph);
    Eigen::Matrix2i u;
    u << 2, 1, 1, 1;  // determinant 1
    TorusGraph h = change_torus_basis(dual.graph, u);
    DegeneracyReport after = analyze_drawing(h);
    CHECK(after.coincident_vertex_pairs.size() == before.coincident_vertex_pairs.size());
    CHECK(after.crossing_edge_pairs.size() == before.crossing_edge_pairs.size());
    CHECK(after.overlapping_edge_pairs.size() == before.overlapping_edge_pairs.size());
    CHECK(after.self_intersecting_faces.size() ==
          before.self_intersecting_faces.size());
}

TEST_CASE("change_torus_basis rejects non-unimodular matrices") {
    TorusGraph g = builtin_instance("grid_1").graph;
    Eigen::Matrix2i u;
    u << 2, 0, 0, 1;
    CHECK_THROWS_AS(change_torus_basis(g, u), std::invalid_argument);
}

TEST_CASE("pair ordering conventions hold") {
    DualDrawing dual = weird_orthogonal_dual();
    DegeneracyReport rep = analyze_drawing(dual.graph);
    for (const CrossingEdgePair& p : rep.crossing_edge_pairs) {
        CHECK(p.edge_a <= p.edge_b);
    }
    for (const OverlapEdgePair& p : rep.overlapping_edge_pairs) {
        CHECK(p.edge_a <= p.edge_b);
        if (p.edge_a == p.edge_b) {
            // self-pairs carry the lexicographically positive offset
            bool positive = p.offset.x() > 0 ||
                            (p.offset.x() == 0 && p.offset.y() > 0);
            CHECK(positive);
        }
    }
}
