#include "torusrec/reciprocal.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <stdexcept>

namespace torusrec {

const char* mode_name(ReciprocalMode mode) {
    return mode == ReciprocalMode::Orthogonal ? "orthogonal" : "parallel";
}

namespace {

void require_equilibrium(const TorusGraph& g, const StressVector& omega,
                         const char* what) {
    if (!is_equilibrium(g, omega).equilibrium) {
        throw std::invalid_argument(std::string(what) +
                                    ": stress is not in equilibrium");
    }
}

// Native dual displacement rows on the plane, before any torus is chosen:
// parallel duals copy the scaled native source edges, orthogonal duals
// quarter-turn them.
Eigen::MatrixX2d native_dual_rows(const TorusGraph& g, const StressVector& omega,
                                  ReciprocalMode mode) {
    Eigen::Matrix2Xd cols = g.torus.basis * displacement_matrix(g);
    if (mode == ReciprocalMode::Orthogonal) cols = quarter_turn() * cols;
    return (cols * omega.asDiagonal()).transpose();
}

}  // namespace

bool TorusFamily::contains(const Mat2& m, double tol) const {
    Mat2 s = m * base.inverse();
    double scale = std::max(1.0, s.lpNorm<Eigen::Infinity>());
    bool shape = std::abs(s(0, 0) - s(1, 1)) <= tol * scale &&
                 std::abs(s(0, 1) + s(1, 0)) <= tol * scale;
    return shape && s.determinant() > tol * tol;
}

ParallelCriterion parallel_criterion(const TorusGraph& g, const StressVector& omega,
                                     double tol) {
    require_equilibrium(g, omega, "parallel_criterion");
    ParallelCriterion out;
    out.cov = covariance(g, omega);
    out.deviation = (out.cov.matrix() - Mat2::Identity()).lpNorm<Eigen::Infinity>();
    out.reciprocal = out.deviation <= tol;
    return out;
}

OrthogonalFamilyResult orthogonal_torus_family(const TorusGraph& g,
                                               const StressVector& omega,
                                               double tol) {
    require_equilibrium(g, omega, "orthogonal_torus_family");
    OrthogonalFamilyResult out;
    out.cov = covariance(g, omega);
    double det = out.cov.det();

    auto base_of = [](const CovarianceMatrix& c) {
        Mat2 b;
        b << c.beta, -c.gamma, 0.0, 1.0;
        return b;
    };

    if (std::abs(det - 1.0) <= tol) {
        out.status = OrthogonalFamilyResult::Family;
        out.family = TorusFamily{base_of(out.cov)};
    } else if (det > 0.0) {
        out.status = OrthogonalFamilyResult::RescaleNeeded;
        double s = 1.0 / std::sqrt(det);
        out.rescaled = StressVector(omega * s);
        CovarianceMatrix scaled{out.cov.alpha * s, out.cov.beta * s,
                                out.cov.gamma * s};
        out.family = TorusFamily{base_of(scaled)};
    } else {
        out.status = OrthogonalFamilyResult::Impossible;
        char detval[32];
        std::snprintf(detval, sizeof detval, "%.17g", det);
        out.reason = std::string("covariance determinant is ") + detval +
                     " <= 0; no scaling of the stress is orthogonally reciprocal "
                     "on any flat torus";
    }
    return out;
}

Eigen::MatrixX2d dual_displacements(const TorusGraph& g, const StressVector& omega,
                                    ReciprocalMode mode) {
    require_stress(g, omega);
    if (!g.torus.nonsingular()) {
        throw std::invalid_argument("dual_displacements: singular torus basis");
    }
    if (mode == ReciprocalMode::Parallel) {
        // Source-reference rows; valid on every torus.
        return (displacement_matrix(g) * omega.asDiagonal()).transpose();
    }
    return native_dual_rows(g, omega, mode);
}

FlatTorus parallel_force_torus(const TorusGraph& g, const StressVector& omega) {
    return FlatTorus::from_basis(g.torus.basis * covariance(g, omega).matrix());
}

FlatTorus orthogonal_force_torus(const TorusGraph& g, const StressVector& omega) {
    Mat2 j = quarter_turn();
    return FlatTorus::from_basis(j * g.torus.basis * covariance(g, omega).matrix() *
                                 j.transpose());
}

DualDrawing build_dual_drawing(const TorusGraph& g, const StressVector& omega,
                               ReciprocalMode mode, const FlatTorus& target) {
    require_equilibrium(g, omega, "build_dual_drawing");
    if (!target.nonsingular()) {
        throw std::invalid_argument("build_dual_drawing: singular target torus");
    }

    FaceSet faces = face_orbits(g);
    const int nf = faces.count();
    const int ne = g.edge_count();

    Eigen::MatrixX2d native = native_dual_rows(g, omega, mode);
    Eigen::MatrixX2d ref = native * target.basis.transpose().inverse();

    DualDrawing dual;
    dual.mode = mode;
    dual.source_torus = g.torus;
    dual.edge_map.resize(ne);
    for (int e = 0; e < ne; ++e) dual.edge_map[e] = e;

    TorusGraph& h = dual.graph;
    h.torus = target;
    h.edges.resize(ne);
    for (int e = 0; e < ne; ++e) {
        h.edges[e].tail = faces.face_of[backward_dart(e)];
        h.edges[e].head = faces.face_of[forward_dart(e)];
    }

    // Rotation at a dual vertex: walking a face counterclockwise, the duals
    // of the reversed boundary darts fan out of the face in ccw order.
    h.rotation.resize(nf);
    for (int f = 0; f < nf; ++f) {
        h.rotation[f].reserve(faces.orbits[f].size());
        for (Dart c : faces.orbits[f]) h.rotation[f].push_back(rev(c));
    }

    // Integrate positions over a BFS spanning tree of the dual graph.
    std::vector<std::vector<std::pair<int, int>>> adj(nf);  // (edge, neighbor)
    for (int e = 0; e < ne; ++e) {
        if (h.edges[e].tail == h.edges[e].head) continue;
        adj[h.edges[e].tail].push_back({e, h.edges[e].head});
        adj[h.edges[e].head].push_back({e, h.edges[e].tail});
    }

    std::vector<Vec2> raw(nf, Vec2::Zero());
    std::vector<char> placed(nf, 0);
    std::deque<int> queue;
    if (nf > 0) {
        placed[0] = 1;
        queue.push_back(0);
    }
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        for (auto [e, other] : adj[f]) {
            if (placed[other]) continue;
            placed[other] = 1;
            Vec2 step = ref.row(e).transpose();
            raw[other] = raw[f] + (h.edges[e].tail == f ? step : Vec2(-step));
            queue.push_back(other);
        }
    }
    for (int f = 0; f < nf; ++f) {
        if (!placed[f]) {
            throw std::runtime_error("build_dual_drawing: dual graph disconnected");
        }
    }

    h.dart_shifts.assign(2 * ne, Vec2i::Zero());
    for (int e = 0; e < ne; ++e) {
        Vec2 gap = ref.row(e).transpose() - (raw[h.edges[e].head] - raw[h.edges[e].tail]);
        Vec2 rounded(std::round(gap.x()), std::round(gap.y()));
        if ((gap - rounded).lpNorm<Eigen::Infinity>() > 1e-6) {
            throw std::runtime_error(
                "build_dual_drawing: homology vector of dual edge " +
                std::to_string(e) + " is not integral (" + std::to_string(gap.x()) +
                ", " + std::to_string(gap.y()) +
                "); target torus does not carry this force diagram");
        }
        h.dart_shifts[forward_dart(e)] = rounded.cast<int>();
        h.dart_shifts[backward_dart(e)] = -rounded.cast<int>();
    }

    h.vertices.resize(nf);
    normalize_coordinates(h, raw);
    return dual;
}

ReciprocalReport verify_reciprocal(const TorusGraph& g, const DualDrawing& dual,
                                   const StressVector& omega, double tol) {
    require_stress(g, omega);
    if (static_cast<int>(dual.edge_map.size()) != dual.graph.edge_count()) {
        throw std::invalid_argument("verify_reciprocal: edge_map is not total");
    }
    ReciprocalReport rep;
    Mat2 j = quarter_turn();
    for (int k = 0; k < dual.graph.edge_count(); ++k) {
        int e = dual.edge_map[k];
        Vec2 u = g.torus.to_native(g.displacement(forward_dart(e)));
        Vec2 v = dual.graph.torus.to_native(dual.graph.displacement(forward_dart(k)));
        Vec2 expected =
            omega[e] * (dual.mode == ReciprocalMode::Orthogonal ? Vec2(j * u) : u);

        double denom = std::max(u.norm() * v.norm(), 1e-300);
        double angle_error;
        if (dual.mode == ReciprocalMode::Orthogonal) {
            angle_error = std::abs(u.dot(v)) / denom;
        } else {
            angle_error = std::abs(u.x() * v.y() - u.y() * v.x()) / denom;
        }
        double length_error = std::abs(v.norm() - std::abs(omega[e]) * u.norm());
        bool flipped = v.dot(expected) < 0.0;

        rep.max_angle_error = std::max(rep.max_angle_error, angle_error);
        rep.max_length_error = std::max(rep.max_length_error, length_error);
        if (angle_error > tol ||
            length_error > tol * std::max(1.0, expected.norm()) || flipped) {
            rep.violations.push_back({e, angle_error, length_error, flipped});
        }
    }
    return rep;
}

}  // namespace torusrec
