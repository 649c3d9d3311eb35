#include "torusrec/flows.hpp"

#include <deque>
#include <stdexcept>

namespace torusrec {

namespace {

void require_edge_vector(const TorusGraph& g, const Eigen::VectorXd& v,
                         const char* what) {
    if (v.size() != g.edge_count()) {
        throw std::invalid_argument(std::string(what) + ": expected " +
                                    std::to_string(g.edge_count()) +
                                    " entries, got " + std::to_string(v.size()));
    }
}

}  // namespace

bool is_circulation(const TorusGraph& g, const Circulation& phi, double tol) {
    require_edge_vector(g, phi, "is_circulation");
    Eigen::VectorXd net = Eigen::VectorXd::Zero(g.vertex_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        net[g.edges[e].tail] -= phi[e];
        net[g.edges[e].head] += phi[e];
    }
    return net.lpNorm<Eigen::Infinity>() <= tol;
}

Vec2 homology_class(const TorusGraph& g, const Circulation& phi, double tol) {
    if (!is_circulation(g, phi, tol)) {
        throw std::invalid_argument("homology_class: vector is not a circulation");
    }
    return homology_matrix(g).cast<double>() * phi;
}

double harmonic_identity_gap(const TorusGraph& g, const Circulation& phi) {
    require_edge_vector(g, phi, "harmonic_identity_gap");
    Vec2 lhs = displacement_matrix(g) * phi;
    Vec2 rhs = homology_matrix(g).cast<double>() * phi;
    return (lhs - rhs).lpNorm<Eigen::Infinity>();
}

bool check_harmonic_identity(const TorusGraph& g, const Circulation& phi,
                             double tol) {
    return harmonic_identity_gap(g, phi) <= tol;
}

CocirculationRows cocirculation_rows(const TorusGraph& g) {
    FaceSet faces = face_orbits(g);
    Eigen::Matrix2Xi lam = homology_matrix(g);
    for (const auto& orbit : faces.orbits) {
        Vec2i total = Vec2i::Zero();
        for (Dart d : orbit) total += g.shift_of(d);
        if (total != Vec2i::Zero()) {
            throw std::runtime_error(
                "cocirculation_rows: face shifts do not cancel; graph invalid");
        }
    }
    CocirculationRows rows;
    rows.row_x.theta = lam.row(0).cast<double>();
    rows.row_y.theta = lam.row(1).cast<double>();
    rows.row_x.rotated_class = Vec2(1.0, 0.0);
    rows.row_y.rotated_class = Vec2(0.0, 1.0);
    rows.row_x.standard_class = Vec2(0.0, 1.0);
    rows.row_y.standard_class = Vec2(-1.0, 0.0);
    return rows;
}

std::vector<Circulation> cycle_basis(const TorusGraph& g) {
    const int nv = g.vertex_count();
    const int ne = g.edge_count();

    // Breadth-first tree from vertex 0; adjacency scanned in edge order.
    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (edge, other end)
    for (int e = 0; e < ne; ++e) {
        if (g.edges[e].tail == g.edges[e].head) continue;  // loops never in tree
        adj[g.edges[e].tail].push_back({e, g.edges[e].head});
        adj[g.edges[e].head].push_back({e, g.edges[e].tail});
    }

    std::vector<int> parent_edge(nv, -1);
    std::vector<int> parent(nv, -1);
    std::vector<char> visited(nv, 0);
    std::vector<char> in_tree(ne, 0);
    std::deque<int> queue;
    if (nv > 0) {
        visited[0] = 1;
        queue.push_back(0);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto [e, w] : adj[v]) {
            if (visited[w]) continue;
            visited[w] = 1;
            parent[w] = v;
            parent_edge[w] = e;
            in_tree[e] = 1;
            queue.push_back(w);
        }
    }

    // Flow of +1 from a vertex up to the root along tree edges.
    auto push_to_root = [&](int v, double sign, Circulation& phi) {
        while (parent[v] >= 0) {
            int e = parent_edge[v];
            // forward dart of e runs tail -> head; flowing v -> parent is
            // +1 on the forward dart when v is the tail.
            phi[e] += (g.edges[e].tail == v) ? sign : -sign;
            v = parent[v];
        }
    };

    std::vector<Circulation> basis;
    for (int e = 0; e < ne; ++e) {
        if (in_tree[e]) continue;
        Circulation phi = Circulation::Zero(ne);
        phi[e] = 1.0;  // flow tail -> head
        push_to_root(g.edges[e].head, 1.0, phi);
        push_to_root(g.edges[e].tail, -1.0, phi);
        basis.push_back(std::move(phi));
    }
    return basis;
}

}  // namespace torusrec
