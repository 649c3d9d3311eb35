#pragma once

#include "torusrec/torus_graph.hpp"

namespace torusrec {

// Per-edge weights, one per forward dart; entries must be nonzero.
using StressVector = Eigen::VectorXd;

// Throws std::invalid_argument on length mismatch or a zero entry.
void require_stress(const TorusGraph& g, const StressVector& omega,
                    double tol = 1e-12);

struct EquilibriumReport {
    bool equilibrium = false;
    std::vector<Vec2> residuals;   // per vertex, reference coordinates
    double max_residual = 0.0;     // infinity norm over vertices
    double scale = 0.0;            // sum of |omega_e| * |edge displacement|
};

// A stress is in equilibrium when the weighted displacements of the darts
// leaving each vertex cancel.  The tolerance is relative: the residual
// bound is tol * (sum of |omega_e| * ||Delta_e||).
EquilibriumReport is_equilibrium(const TorusGraph& g, const StressVector& omega,
                                 double tol = 1e-9);

struct CovarianceMatrix {
    double alpha = 0.0;  // sum of omega * dx^2
    double beta = 0.0;   // sum of omega * dy^2
    double gamma = 0.0;  // sum of omega * dx * dy

    Mat2 matrix() const {
        Mat2 m;
        m << alpha, gamma, gamma, beta;
        return m;
    }
    double det() const { return alpha * beta - gamma * gamma; }
};

// The weighted second moment of the reference displacements, equal to the
// matrix product (displacements) * diag(omega) * (displacements)^T.
CovarianceMatrix covariance(const TorusGraph& g, const StressVector& omega);

// Orthonormal basis of the space of equilibrium stresses: the nullspace of
// the 2V x E system stacking both residual components of every vertex.
// Columns of the result are the basis vectors; the space may be empty.
// Rank decisions use a singular-value cutoff of 1e-10 times the largest
// singular value.
Eigen::MatrixXd stress_space(const TorusGraph& g);

// Positions the vertices of a combinatorial blueprint so that omega becomes
// an equilibrium stress: solves the weighted Laplacian system with the
// given dart shifts as the inhomogeneity, pins `pin` at the origin, and
// reduces the solution into [0,1)^2.  The blueprint's coordinates are
// ignored; its torus is replaced by `torus`.  If the blueprint has no
// rotation lists they are derived from the solved geometry.
// Throws std::invalid_argument for non-positive omega and
// std::runtime_error if the Laplacian is singular (disconnected blueprint).
TorusGraph harmonic_position(const TorusGraph& blueprint, const StressVector& omega,
                             const FlatTorus& torus, int pin = 0);

}  // namespace torusrec
