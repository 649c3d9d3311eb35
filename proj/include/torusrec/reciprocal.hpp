#pragma once

#include <optional>
#include <string>

#include "torusrec/stress.hpp"

namespace torusrec {

enum class ReciprocalMode { Orthogonal, Parallel };

const char* mode_name(ReciprocalMode mode);

// A drawing of the dual map.  Dual vertices enumerate the faces of the
// source graph; dual edge e shares its index with source edge e, with the
// forward dual dart running from the face right of e to the face left of
// it.  edge_map makes the correspondence explicit for consumers.
struct DualDrawing {
    TorusGraph graph;
    ReciprocalMode mode = ReciprocalMode::Parallel;
    std::vector<int> edge_map;  // dual edge index -> source edge index
    FlatTorus source_torus;
};

struct ParallelCriterion {
    bool reciprocal = false;
    CovarianceMatrix cov;
    double deviation = 0.0;  // infinity norm of covariance - identity
};

// A stress admits a parallel reciprocal diagram exactly when its covariance
// is the identity; the verdict is the same on every flat torus.
ParallelCriterion parallel_criterion(const TorusGraph& g, const StressVector& omega,
                                     double tol = 1e-9);

// Tori on which a stress is orthogonally reciprocal form the family
// sigma * R * base over rotations R and scales sigma > 0.  The family
// exists iff the covariance determinant is 1; a positive determinant != 1
// only calls for rescaling the stress by 1/sqrt(det); a nonpositive
// determinant rules every scaling out.
struct TorusFamily {
    Mat2 base;  // [[beta, -gamma], [0, 1]]

    Mat2 member(double sigma, double angle_radians) const {
        return sigma * rotation2d(angle_radians) * base;
    }
    // Whether m lies in the family, i.e. m * base^{-1} is a positive
    // rotation-scale matrix [[a, -b], [b, a]] with a^2 + b^2 > 0.
    bool contains(const Mat2& m, double tol = 1e-9) const;
};

struct OrthogonalFamilyResult {
    enum Status { Family, RescaleNeeded, Impossible };
    Status status = Impossible;
    CovarianceMatrix cov;
    std::optional<TorusFamily> family;          // Family and RescaleNeeded
    std::optional<StressVector> rescaled;       // RescaleNeeded: omega/sqrt(det)
    std::string reason;                         // Impossible
};

OrthogonalFamilyResult orthogonal_torus_family(const TorusGraph& g,
                                               const StressVector& omega,
                                               double tol = 1e-9);

// Dual displacement rows, one per edge.
//   Parallel:   omega_e * Delta_e^T in source reference coordinates;
//               the same rows serve on every torus.
//   Orthogonal: native rows (J * M * Delta * Omega)^T, the quarter-turned
//               omega-scaled native source displacements on T_M.
// Throws on a singular torus basis.
Eigen::MatrixX2d dual_displacements(const TorusGraph& g, const StressVector& omega,
                                    ReciprocalMode mode);

// Force torus of the parallel force diagram: N = M * covariance.
FlatTorus parallel_force_torus(const TorusGraph& g, const StressVector& omega);

// Force torus of the orthogonal force diagram: N = J * M * covariance * J^T.
FlatTorus orthogonal_force_torus(const TorusGraph& g, const StressVector& omega);

// Lays out the dual map on the target torus by integrating the reference
// dual displacements over a breadth-first spanning tree of the dual graph
// (lowest-index face at the origin, dual adjacency scanned in edge order).
// Homology vectors of non-tree dual edges must come out integral within
// 1e-6, which holds whenever the target torus generates the force lattice;
// otherwise throws std::runtime_error.  Requires omega in equilibrium.
DualDrawing build_dual_drawing(const TorusGraph& g, const StressVector& omega,
                               ReciprocalMode mode, const FlatTorus& target);

struct ReciprocalViolation {
    int edge = 0;            // source edge index
    double angle_error;      // |sin| (parallel) or |cos| (orthogonal) of pair
    double length_error;     // | |e*| - |omega| * |e| |
    bool direction_flipped;  // dual dart opposes the expected direction
};

struct ReciprocalReport {
    std::vector<ReciprocalViolation> violations;
    double max_angle_error = 0.0;
    double max_length_error = 0.0;
    bool ok() const { return violations.empty(); }
};

// Checks the defining reciprocal conditions edge by edge, comparing native
// displacements of the dual (on its torus) against native displacements of
// the source (on its torus): the angle law for the mode, the length law
// |e*| = |omega_e| * |e|, and the direction convention that negative
// stresses reverse the dual dart.
ReciprocalReport verify_reciprocal(const TorusGraph& g, const DualDrawing& dual,
                                   const StressVector& omega, double tol = 1e-9);

}  // namespace torusrec
