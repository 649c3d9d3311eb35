#include "doctest.h"

#include <cmath>

#include "torusrec/instances.hpp"
#include "torusrec/reciprocal.hpp"

using namespace torusrec;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Places the drawing on another torus; reference coordinates, shifts, and
// the combinatorial map stay put.
TorusGraph on_torus(const TorusGraph& g, const Mat2& basis) {
    TorusGraph out = g;
    out.torus = FlatTorus::from_basis(basis);
    return out;
}

// Pairing of the source homology rows with the dual reference
// displacements, a 2x2 matrix characterizing the dual's cohomology classes.
Mat2 class_pairing(const TorusGraph& primal, const DualDrawing& dual) {
    Eigen::Matrix2Xd lambda = homology_matrix(primal).cast<double>();
    Eigen::Matrix2Xd dual_disp = displacement_matrix(dual.graph);
    Mat2 out = Mat2::Zero();
    for (int k = 0; k < dual.graph.edge_count(); ++k) {
        out += lambda.col(dual.edge_map[k]) * dual_disp.col(k).transpose();
    }
    return out;
}

}  // namespace

TEST_CASE("parallel criterion singles out identity covariance") {
    GraphDocument doc = builtin_instance("k7_uniform");
    ParallelCriterion crit = parallel_criterion(doc.graph, doc.stresses.at("uniform"));
    CHECK_FALSE(crit.reciprocal);
    CHECK(crit.deviation == doctest::Approx(1.0).epsilon(1e-9));

    for (double s : {0.1, 1.0 / std::sqrt(3.0), 1.0, 3.0}) {
        CAPTURE(s);
        StressVector w = s * StressVector::Ones(21);
        CHECK_FALSE(parallel_criterion(doc.graph, w).reciprocal);
    }

    // grids with the uniform stress have identity covariance
    GraphDocument grid = builtin_instance("grid_3");
    ParallelCriterion gcrit = parallel_criterion(grid.graph, grid.stresses.at("uniform"));
    CHECK(gcrit.reciprocal);
    CHECK(gcrit.deviation < 1e-12);
}

TEST_CASE("parallel criterion requires an equilibrium stress") {
    GraphDocument doc = builtin_instance("k7_uniform");
    StressVector w = doc.stresses.at("uniform");
    w[0] += 0.25;
    CHECK_THROWS_AS(parallel_criterion(doc.graph, w), std::invalid_argument);
}

TEST_CASE("force tori of the k7 stresses") {
    GraphDocument doc = builtin_instance("k7_uniform");
    Mat2 expected;
    expected << 2, 1, 1, 2;
    FlatTorus n = parallel_force_torus(doc.graph, doc.stresses.at("uniform"));
    CHECK((n.basis - expected).lpNorm<Eigen::Infinity>() < 1e-12);

    // J * C * J^T for symmetric C swaps the diagonal and negates gamma
    Mat2 expected_orth;
    expected_orth << 2, -1, -1, 2;
    FlatTorus no = orthogonal_force_torus(doc.graph, doc.stresses.at("uniform"));
    CHECK((no.basis - expected_orth).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("orthogonal family of the weird stress") {
    GraphDocument doc = builtin_instance("k7_uniform");
    OrthogonalFamilyResult fam =
        orthogonal_torus_family(doc.graph, doc.stresses.at("weird"));
    REQUIRE(fam.status == OrthogonalFamilyResult::Family);
    REQUIRE(fam.family.has_value());

    Mat2 base_expected;
    base_expected << 17.0 / 7, 6.0 / 7, 0, 1;
    CHECK((fam.family->base - base_expected).lpNorm<Eigen::Infinity>() < 1e-12);

    // family members contain themselves; the document torus does not qualify
    CHECK_FALSE(fam.family->contains(Mat2::Identity()));
    for (double sigma : {0.5, 1.0, 2.0}) {
        for (double deg : {0.0, 90.0, 137.0}) {
            CAPTURE(sigma);
            CAPTURE(deg);
            CHECK(fam.family->contains(fam.family->member(sigma, deg * kPi / 180)));
        }
    }
    CHECK((fam.family->member(1.0, 0.0) - fam.family->base).lpNorm<Eigen::Infinity>() ==
          0.0);

    // the base torus is its own orthogonal force torus
    TorusGraph rebased = on_torus(doc.graph, fam.family->base);
    FlatTorus n = orthogonal_force_torus(rebased, doc.stresses.at("weird"));
    CHECK((n.basis - fam.family->base).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("orthogonal family rescale and impossible branches") {
    GraphDocument doc = builtin_instance("k7_uniform");

    OrthogonalFamilyResult scaled =
        orthogonal_torus_family(doc.graph, doc.stresses.at("uniform"));
    REQUIRE(scaled.status == OrthogonalFamilyResult::RescaleNeeded);
    REQUIRE(scaled.rescaled.has_value());
    double s = 1.0 / std::sqrt(3.0);
    CHECK((*scaled.rescaled - s * StressVector::Ones(21)).lpNorm<Eigen::Infinity>() <
          1e-12);
    REQUIRE(scaled.family.has_value());
    Mat2 base_expected;
    base_expected << 2 * s, -s, 0, 1;
    CHECK((scaled.family->base - base_expected).lpNorm<Eigen::Infinity>() < 1e-12);
    // the rescaled stress now has determinant one
    CHECK(std::abs(covariance(doc.graph, *scaled.rescaled).det() - 1.0) < 1e-12);

    OrthogonalFamilyResult neg =
        orthogonal_torus_family(doc.graph, doc.stresses.at("negative"));
    CHECK(neg.status == OrthogonalFamilyResult::Impossible);
    CHECK_FALSE(neg.family.has_value());
    CHECK(neg.reason.find("-0.99999") != std::string::npos);
}

TEST_CASE("dual displacement rows follow the mode conventions") {
    GraphDocument doc = builtin_instance("k7_uniform");
    const TorusGraph& g = doc.graph;
    StressVector w = doc.stresses.at("weird");
    Eigen::Matrix2Xd disp = displacement_matrix(g);

    Eigen::MatrixX2d par = dual_displacements(g, w, ReciprocalMode::Parallel);
    for (int e = 0; e < 21; ++e) {
        CHECK((par.row(e).transpose() - w[e] * disp.col(e)).norm() < 1e-15);
    }

    TorusGraph skew = on_torus(g, (Mat2() << 2, 1, 0, 3).finished());
    Eigen::MatrixX2d orth = dual_displacements(skew, w, ReciprocalMode::Orthogonal);
    Mat2 j = quarter_turn();
    for (int e = 0; e < 21; ++e) {
        Vec2 expected = j * (skew.torus.basis * (w[e] * disp.col(e)));
        CHECK((orth.row(e).transpose() - expected).norm() < 1e-14);
    }
}

TEST_CASE("parallel dual on the force torus verifies and pairs to identity") {
    GraphDocument doc = builtin_instance("k7_uniform");
    const TorusGraph& g = doc.graph;
    const StressVector& w = doc.stresses.at("uniform");
    FlatTorus n = parallel_force_torus(g, w);

    DualDrawing dual = build_dual_drawing(g, w, ReciprocalMode::Parallel, n);
    CHECK(dual.mode == ReciprocalMode::Parallel);
    CHECK(dual.graph.vertex_count() == 14);
    CHECK(dual.graph.edge_count() == 21);
    CHECK(validate(dual.graph).ok());
    CHECK((dual.source_torus.basis - g.torus.basis).lpNorm<Eigen::Infinity>() == 0.0);

    ReciprocalReport rep = verify_reciprocal(g, dual, w);
    CHECK(rep.ok());
    CHECK(rep.max_angle_error < 1e-9);
    CHECK(rep.max_length_error < 1e-9);

    CHECK((class_pairing(g, dual) - Mat2::Identity()).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("orthogonal dual on the family torus verifies and pairs to the rotation") {
    GraphDocument doc = builtin_instance("k7_uniform");
    const StressVector& w = doc.stresses.at("weird");
    OrthogonalFamilyResult fam = orthogonal_torus_family(doc.graph, w);
    REQUIRE(fam.status == OrthogonalFamilyResult::Family);

    TorusGraph primal = on_torus(doc.graph, fam.family->base);
    DualDrawing dual =
        build_dual_drawing(primal, w, ReciprocalMode::Orthogonal, primal.torus);
    CHECK(validate(dual.graph).ok());

    ReciprocalReport rep = verify_reciprocal(primal, dual, w);
    CHECK(rep.ok());
    CHECK(rep.max_angle_error < 1e-9);
    CHECK(rep.max_length_error < 1e-9);

    Mat2 rotation_pattern;
    rotation_pattern << 0, 1, -1, 0;
    CHECK((class_pairing(primal, dual) - rotation_pattern).lpNorm<Eigen::Infinity>() <
          1e-9);

    // negative stresses flip the dual dart against J * (primal direction);
    // verify_reciprocal accounts for that, so flipping a weight must fail
    StressVector wrong = w;
    wrong[7] = -wrong[7];
    ReciprocalReport bad = verify_reciprocal(primal, dual, wrong);
    CHECK_FALSE(bad.ok());
}

TEST_CASE("grid parallel reciprocal lives on the same torus") {
    GraphDocument doc = builtin_instance("grid_2");
    const TorusGraph& g = doc.graph;
    const StressVector& w = doc.stresses.at("uniform");
    REQUIRE(parallel_criterion(g, w).reciprocal);

    DualDrawing dual = build_dual_drawing(g, w, ReciprocalMode::Parallel, g.torus);
    CHECK(validate(dual.graph).ok());
    CHECK(verify_reciprocal(g, dual, w).ok());
    CHECK((dual.graph.torus.basis - g.torus.basis).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("dual of the parallel dual returns to the source torus") {
    GraphDocument doc = builtin_instance("k7_uniform");
    const TorusGraph& g = doc.graph;
    const StressVector& w = doc.stresses.at("uniform");
    FlatTorus n = parallel_force_torus(g, w);
    DualDrawing dual = build_dual_drawing(g, w, ReciprocalMode::Parallel, n);

    // the reciprocal weights invert the source weights edge by edge
    StressVector w_star(dual.graph.edge_count());
    for (int k = 0; k < dual.graph.edge_count(); ++k) {
        w_star[k] = 1.0 / w[dual.edge_map[k]];
    }
    EquilibriumReport eq = is_equilibrium(dual.graph, w_star, 1e-9);
    CHECK(eq.equilibrium);

    FlatTorus back = parallel_force_torus(dual.graph, w_star);
    CHECK((back.basis - g.torus.basis).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("verify_reciprocal rejects the wrong mode wholesale") {
    GraphDocument doc = builtin_instance("k7_uniform");
    const TorusGraph& g = doc.graph;
    const StressVector& w = doc.stresses.at("uniform");
    DualDrawing dual =
        build_dual_drawing(g, w, ReciprocalMode::Parallel, parallel_force_torus(g, w));
    dual.mode = ReciprocalMode::Orthogonal;
    ReciprocalReport rep = verify_reciprocal(g, dual, w);
    CHECK(rep.violations.size() == 21);
}

TEST_CASE("verify_reciprocal pinpoints a perturbed dual vertex") {
    GraphDocument doc = builtin_instance("k7_uniform");
    const TorusGraph& g = doc.graph;
    const StressVector& w = doc.stresses.at("uniform");
    DualDrawing dual =
        build_dual_drawing(g, w, ReciprocalMode::Parallel, parallel_force_torus(g, w));
    dual.graph.vertices[2] += Vec2(3e-4, -2e-4);

    ReciprocalReport rep = verify_reciprocal(g, dual, w);
    CHECK_FALSE(rep.ok());
    for (const ReciprocalViolation& v : rep.violations) {
        CAPTURE(v.edge);
        bool incident = dual.graph.edges[v.edge].tail == 2 ||
                        dual.graph.edges[v.edge].head == 2;
        CHECK(incident);
    }
    // dual vertices have degree three in a triangulation's dual
    CHECK(rep.violations.size() == 3);
}

TEST_CASE("build_dual_drawing rejects a torus that misses the force lattice") {
    GraphDocument doc = builtin_instance("k7_uniform");
    const TorusGraph& g = doc.graph;
    const StressVector& w = doc.stresses.at("uniform");
    FlatTorus n = parallel_force_torus(g, w);
    FlatTorus off = FlatTorus::from_basis(0.9 * n.basis);
    CHECK_THROWS_AS(build_dual_drawing(g, w, ReciprocalMode::Parallel, off),
                    std::runtime_error);
}

TEST_CASE("build_dual_drawing requires equilibrium") {
    GraphDocument doc = builtin_instance("k7_uniform");
    StressVector w = doc.stresses.at("uniform");
    w[11] = 2.0;
    CHECK_THROWS_AS(build_dual_drawing(doc.graph, w, ReciprocalMode::Parallel,
                                       doc.graph.torus),
                    std::invalid_argument);
}

TEST_CASE("mode names") {
    CHECK(std::string(mode_name(ReciprocalMode::Parallel)) == "parallel");
    CHECK(std::string(mode_name(ReciprocalMode::Orthogonal)) == "orthogonal");
}
