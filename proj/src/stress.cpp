#include "torusrec/stress.hpp"

#include <stdexcept>

#include <Eigen/SVD>

namespace torusrec {

void require_stress(const TorusGraph& g, const StressVector& omega, double tol) {
    if (omega.size() != g.edge_count()) {
        throw std::invalid_argument("stress vector: expected " +
                                    std::to_string(g.edge_count()) +
                                    " entries, got " + std::to_string(omega.size()));
    }
    for (int e = 0; e < omega.size(); ++e) {
        if (std::abs(omega[e]) <= tol) {
            throw std::invalid_argument("stress vector: entry " + std::to_string(e) +
                                        " is zero");
        }
    }
}

EquilibriumReport is_equilibrium(const TorusGraph& g, const StressVector& omega,
                                 double tol) {
    require_stress(g, omega);
    EquilibriumReport rep;
    rep.residuals.assign(g.vertex_count(), Vec2::Zero());
    for (int e = 0; e < g.edge_count(); ++e) {
        Vec2 d = g.displacement(forward_dart(e));
        rep.residuals[g.edges[e].tail] += omega[e] * d;
        rep.residuals[g.edges[e].head] -= omega[e] * d;
        rep.scale += std::abs(omega[e]) * d.norm();
    }
    for (const Vec2& r : rep.residuals) {
        rep.max_residual = std::max(rep.max_residual, r.lpNorm<Eigen::Infinity>());
    }
    rep.equilibrium = rep.max_residual <= tol * rep.scale;
    return rep;
}

CovarianceMatrix covariance(const TorusGraph& g, const StressVector& omega) {
    require_stress(g, omega);
    CovarianceMatrix c;
    for (int e = 0; e < g.edge_count(); ++e) {
        Vec2 d = g.displacement(forward_dart(e));
        c.alpha += omega[e] * d.x() * d.x();
        c.beta += omega[e] * d.y() * d.y();
        c.gamma += omega[e] * d.x() * d.y();
    }
    return c;
}

Eigen::MatrixXd stress_space(const TorusGraph& g) {
    const int nv = g.vertex_count();
    const int ne = g.edge_count();
    Eigen::MatrixXd system = Eigen::MatrixXd::Zero(2 * nv, ne);
    for (int e = 0; e < ne; ++e) {
        Vec2 d = g.displacement(forward_dart(e));
        system.block<2, 1>(2 * g.edges[e].tail, e) += d;
        system.block<2, 1>(2 * g.edges[e].head, e) -= d;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
    const auto& sing = svd.singularValues();
    double cutoff = sing.size() > 0 ? 1e-10 * sing[0] : 0.0;
    int rank = 0;
    while (rank < sing.size() && sing[rank] > cutoff) ++rank;
    return svd.matrixV().rightCols(ne - rank);
}

TorusGraph harmonic_position(const TorusGraph& blueprint, const StressVector& omega,
                             const FlatTorus& torus, int pin) {
    require_stress(blueprint, omega);
    for (int e = 0; e < omega.size(); ++e) {
        if (omega[e] <= 0.0) {
            throw std::invalid_argument(
                "harmonic_position: omega must be strictly positive");
        }
    }
    const int nv = blueprint.vertex_count();
    if (pin < 0 || pin >= nv) throw std::invalid_argument("harmonic_position: bad pin");

    {
        std::vector<std::vector<int>> adj(nv);
        for (const auto& e : blueprint.edges) {
            adj[e.tail].push_back(e.head);
            adj[e.head].push_back(e.tail);
        }
        std::vector<char> visited(nv, 0);
        std::vector<int> stack{pin};
        visited[pin] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (!visited[w]) {
                    visited[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != nv) {
            throw std::runtime_error(
                "harmonic_position: blueprint is disconnected, Laplacian singular");
        }
    }

    // Weighted Laplacian over the free vertices: loops cancel out, every
    // other edge couples its endpoints.  The right-hand side collects the
    // shift contributions, one column per axis.
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(nv, nv);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nv, 2);
    for (int e = 0; e < blueprint.edge_count(); ++e) {
        int t = blueprint.edges[e].tail;
        int h = blueprint.edges[e].head;
        if (t == h) continue;
        double w = omega[e];
        Vec2 shift = blueprint.shift_of(forward_dart(e)).cast<double>();
        lap(t, t) += w;
        lap(h, h) += w;
        lap(t, h) -= w;
        lap(h, t) -= w;
        rhs.row(t) += w * shift.transpose();
        rhs.row(h) -= w * shift.transpose();
    }

    std::vector<int> free;
    free.reserve(nv - 1);
    for (int v = 0; v < nv; ++v)
        if (v != pin) free.push_back(v);

    Eigen::MatrixXd sub(free.size(), free.size());
    Eigen::MatrixXd subrhs(free.size(), 2);
    for (size_t i = 0; i < free.size(); ++i) {
        subrhs.row(i) = rhs.row(free[i]);
        for (size_t j = 0; j < free.size(); ++j) sub(i, j) = lap(free[i], free[j]);
    }
    std::vector<Vec2> raw(nv, Vec2::Zero());
    if (!free.empty()) {
        Eigen::LDLT<Eigen::MatrixXd> solver(sub);
        Eigen::MatrixXd sol = solver.solve(subrhs);
        if (solver.info() != Eigen::Success ||
            (sub * sol - subrhs).lpNorm<Eigen::Infinity>() >
                1e-8 * (1.0 + subrhs.lpNorm<Eigen::Infinity>())) {
            throw std::runtime_error("harmonic_position: Laplacian solve failed");
        }
        for (size_t i = 0; i < free.size(); ++i) raw[free[i]] = sol.row(i).transpose();
    }

    TorusGraph out = blueprint;
    out.torus = torus;
    normalize_coordinates(out, raw);
    if (out.rotation.empty() ||
        static_cast<int>(out.rotation.size()) != nv) {
        rotation_from_geometry(out);
    }
    return out;
}

}  // namespace torusrec
