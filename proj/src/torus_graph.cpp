#include "torusrec/torus_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace torusrec {

bool ValidationReport::has(Violation::Kind k) const {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
}

std::string ValidationReport::to_string() const {
    if (ok()) return "valid\n";
    std::ostringstream out;
    for (const Violation& v : violations) out << v.detail << "\n";
    return out.str();
}

namespace {

// Structural soundness needed before orbits can even be traversed.
bool check_structure(const TorusGraph& g, std::vector<Violation>& out) {
    bool ok = true;
    const int nv = g.vertex_count();
    const int ne = g.edge_count();

    for (int e = 0; e < ne; ++e) {
        const auto& ed = g.edges[e];
        if (ed.tail < 0 || ed.tail >= nv || ed.head < 0 || ed.head >= nv) {
            out.push_back({Violation::BadIndex,
                           "edge " + std::to_string(e) + " endpoint out of range"});
            ok = false;
        }
    }
    if (static_cast<int>(g.dart_shifts.size()) != 2 * ne) {
        out.push_back({Violation::BadShift, "dart shift array has wrong length"});
        return false;
    }
    for (int e = 0; e < ne; ++e) {
        if (g.dart_shifts[2 * e] != -g.dart_shifts[2 * e + 1]) {
            out.push_back({Violation::BadShift,
                           "edge " + std::to_string(e) +
                               ": reversed dart shift is not the negation"});
            ok = false;
        }
    }
    for (int v = 0; v < nv; ++v) {
        const Vec2& p = g.vertices[v];
        if (!(p.x() >= 0.0 && p.x() < 1.0 && p.y() >= 0.0 && p.y() < 1.0)) {
            out.push_back({Violation::CoordinateRange,
                           "vertex " + std::to_string(v) + " outside [0,1)^2"});
            ok = false;
        }
    }

    if (static_cast<int>(g.rotation.size()) != nv) {
        out.push_back({Violation::BadRotation, "rotation list count != vertex count"});
        return false;
    }
    std::vector<int> seen(2 * ne, 0);
    for (int v = 0; v < nv && ok; ++v) {
        for (Dart d : g.rotation[v]) {
            if (d < 0 || d >= 2 * ne) {
                out.push_back({Violation::BadIndex,
                               "rotation at vertex " + std::to_string(v) +
                                   " lists dart " + std::to_string(d)});
                return false;
            }
            if (g.tail_of(d) != v) {
                out.push_back({Violation::BadRotation,
                               "dart " + std::to_string(d) + " listed at vertex " +
                                   std::to_string(v) + " but its tail is " +
                                   std::to_string(g.tail_of(d))});
                ok = false;
            }
            if (++seen[d] > 1) {
                out.push_back({Violation::BadRotation,
                               "dart " + std::to_string(d) + " listed twice"});
                ok = false;
            }
        }
    }
    if (ok) {
        for (Dart d = 0; d < 2 * ne; ++d) {
            if (!seen[d]) {
                out.push_back({Violation::BadRotation,
                               "dart " + std::to_string(d) + " missing from rotation"});
                ok = false;
            }
        }
    }
    return ok;
}

}  // namespace

ValidationReport validate(const TorusGraph& g) {
    ValidationReport rep;
    if (!g.torus.nonsingular()) {
        rep.violations.push_back({Violation::SingularTorus,
                                  "torus basis is singular (|det| <= 1e-12)"});
    }
    if (!check_structure(g, rep.violations)) return rep;

    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.displacement(forward_dart(e)).norm() == 0.0) {
            rep.violations.push_back({Violation::ZeroLengthEdge,
                                      "edge " + std::to_string(e) +
                                          " has zero displacement"});
        }
    }

    // Connectivity over the underlying graph.
    if (g.vertex_count() > 0) {
        std::vector<char> visited(g.vertex_count(), 0);
        std::deque<int> queue{0};
        visited[0] = 1;
        int reached = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (Dart d : g.rotation[v]) {
                int w = g.head_of(d);
                if (!visited[w]) {
                    visited[w] = 1;
                    ++reached;
                    queue.push_back(w);
                }
            }
        }
        if (reached != g.vertex_count()) {
            rep.violations.push_back({Violation::Disconnected,
                                      std::to_string(g.vertex_count() - reached) +
                                          " vertices unreachable from vertex 0"});
        }
    }

    FaceSet faces = face_orbits(g);
    int euler = g.vertex_count() - g.edge_count() + faces.count();
    if (euler != 0) {
        rep.violations.push_back({Violation::EulerMismatch,
                                  "V - E + F = " + std::to_string(euler) +
                                      ", map is not cellular on the torus"});
    }
    for (int f = 0; f < faces.count(); ++f) {
        Vec2i total = Vec2i::Zero();
        for (Dart d : faces.orbits[f]) total += g.shift_of(d);
        if (total != Vec2i::Zero()) {
            rep.violations.push_back({Violation::FaceNotClosed,
                                      "face " + std::to_string(f) +
                                          " shift vectors sum to (" +
                                          std::to_string(total.x()) + "," +
                                          std::to_string(total.y()) + ")"});
        }
    }
    return rep;
}

FaceSet face_orbits(const TorusGraph& g) {
    const int nd = g.dart_count();
    // Position of each dart inside its rotation list.
    std::vector<int> slot(nd, -1);
    for (const auto& rot : g.rotation)
        for (int i = 0; i < static_cast<int>(rot.size()); ++i) slot[rot[i]] = i;

    auto face_next = [&](Dart d) {
        Dart r = rev(d);
        const auto& rot = g.rotation[g.tail_of(r)];
        int i = slot[r];
        return rot[(i + rot.size() - 1) % rot.size()];
    };

    FaceSet fs;
    fs.face_of.assign(nd, -1);
    for (Dart d = 0; d < nd; ++d) {
        if (fs.face_of[d] >= 0) continue;
        std::vector<Dart> orbit;
        Dart c = d;
        while (fs.face_of[c] < 0) {
            fs.face_of[c] = fs.count();
            orbit.push_back(c);
            c = face_next(c);
        }
        fs.orbits.push_back(std::move(orbit));
    }
    return fs;
}

Eigen::Matrix2Xd displacement_matrix(const TorusGraph& g) {
    Eigen::Matrix2Xd m(2, g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) m.col(e) = g.displacement(forward_dart(e));
    return m;
}

Eigen::Matrix2Xi homology_matrix(const TorusGraph& g) {
    Eigen::Matrix2Xi m(2, g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) m.col(e) = g.shift_of(forward_dart(e));
    return m;
}

NativeCoords native_coords(const TorusGraph& g) {
    NativeCoords nc;
    nc.vertices.reserve(g.vertices.size());
    for (const Vec2& p : g.vertices) nc.vertices.push_back(g.torus.to_native(p));
    nc.displacements = g.torus.basis * displacement_matrix(g);
    return nc;
}

void rotation_from_geometry(TorusGraph& g, double angle_tol) {
    const int nv = g.vertex_count();
    std::vector<std::vector<Dart>> out(nv);
    for (int e = 0; e < g.edge_count(); ++e) {
        out[g.edges[e].tail].push_back(forward_dart(e));
        out[g.edges[e].head].push_back(backward_dart(e));
    }
    for (int v = 0; v < nv; ++v) {
        auto& darts = out[v];
        std::vector<double> angle(darts.size());
        std::vector<int> order(darts.size());
        for (size_t i = 0; i < darts.size(); ++i) {
            Vec2 u = g.torus.to_native(g.displacement(darts[i]));
            angle[i] = std::atan2(u.y(), u.x());
            order[i] = static_cast<int>(i);
        }
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (angle[a] != angle[b]) return angle[a] < angle[b];
            return darts[a] < darts[b];
        });
        for (size_t i = 0; darts.size() > 1 && i < darts.size(); ++i) {
            double a = angle[order[i]];
            double b = angle[order[(i + 1) % darts.size()]];
            double gap = std::abs(b - a);
            gap = std::min(gap, std::abs(gap - 2.0 * M_PI));
            if (gap <= angle_tol) {
                throw std::runtime_error(
                    "rotation_from_geometry: darts " + std::to_string(darts[order[i]]) +
                    " and " + std::to_string(darts[order[(i + 1) % darts.size()]]) +
                    " at vertex " + std::to_string(v) + " leave at the same angle");
            }
        }
        std::vector<Dart> sorted(darts.size());
        for (size_t i = 0; i < darts.size(); ++i) sorted[i] = darts[order[i]];
        darts = std::move(sorted);
    }
    g.rotation = std::move(out);
}

void normalize_coordinates(TorusGraph& g, const std::vector<Vec2>& raw) {
    const int nv = g.vertex_count();
    std::vector<Vec2i> whole(nv);
    g.vertices.resize(nv);
    for (int v = 0; v < nv; ++v) {
        Vec2 f = fract(raw[v]);
        whole[v] = (raw[v] - f).cast<int>();
        g.vertices[v] = f;
    }
    // displacement = head + shift - tail stays fixed when head/tail drop
    // whole parts: fold those parts into the shifts.
    for (int e = 0; e < g.edge_count(); ++e) {
        Vec2i adjust = whole[g.edges[e].head] - whole[g.edges[e].tail];
        g.dart_shifts[forward_dart(e)] += adjust;
        g.dart_shifts[backward_dart(e)] -= adjust;
    }
}

Vec2i shortest_shift(const Vec2& raw) {
    Vec2i best = Vec2i::Zero();
    double best_norm = std::numeric_limits<double>::infinity();
    bool found = false;
    for (int kx = -1; kx <= 1; ++kx) {
        for (int ky = -1; ky <= 1; ++ky) {
            Vec2 d = raw + Vec2(kx, ky);
            double n = d.squaredNorm();
            bool better = !found || n < best_norm ||
                          (n == best_norm &&
                           (kx < best.x() || (kx == best.x() && ky < best.y())));
            if (better) {
                best = Vec2i(kx, ky);
                best_norm = n;
                found = true;
            }
        }
    }
    return best;
}

}  // namespace torusrec
