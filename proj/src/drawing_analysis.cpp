#include "torusrec/drawing_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace torusrec {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 d = b - a;
    double len2 = d.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return (p - (a + t * d)).norm();
}

double segment_distance(const Vec2& a1, const Vec2& b1, const Vec2& a2,
                        const Vec2& b2) {
    double best = point_segment_distance(a1, a2, b2);
    best = std::min(best, point_segment_distance(b1, a2, b2));
    best = std::min(best, point_segment_distance(a2, a1, b1));
    best = std::min(best, point_segment_distance(b2, a1, b1));
    return best;
}

struct SegmentEvent {
    enum Type { None, Crossing, CollinearOverlap, Contact } type = None;
    double param_a = 0.0, param_b = 0.0;  // Crossing
    double extent = 0.0;                  // CollinearOverlap
    Vec2 point;                           // Contact location
    bool end_a = false;                   // contact involves an endpoint of a
    bool end_b = false;
};

// Classifies the interaction of two closed segments.  Proper crossings
// require both parameters strictly inside (tol, 1-tol); everything that
// merely comes within tol of touching is a Contact or, for collinear
// segments sharing more than a point, a CollinearOverlap.
SegmentEvent classify_segments(const Vec2& a1, const Vec2& b1, const Vec2& a2,
                               const Vec2& b2, double tol) {
    SegmentEvent ev;
    Vec2 d1 = b1 - a1;
    Vec2 d2 = b2 - a2;
    Vec2 r = a2 - a1;
    double n1 = d1.norm();
    double n2 = d2.norm();
    double cr = cross2(d1, d2);

    if (std::abs(cr) <= tol * n1 * n2) {
        if (n1 == 0.0 || std::abs(cross2(r, d1)) / std::max(n1, 1e-300) > tol) {
            return ev;  // parallel but on distinct lines
        }
        Vec2 u = d1 / n1;
        double t0 = r.dot(u);
        double t1 = t0 + d2.dot(u);
        double lo = std::max(0.0, std::min(t0, t1));
        double hi = std::min(n1, std::max(t0, t1));
        if (hi - lo > tol) {
            ev.type = SegmentEvent::CollinearOverlap;
            ev.extent = hi - lo;
            return ev;
        }
        if (hi - lo >= -tol) {
            // single-point touch along the common line
            double mid = 0.5 * (lo + hi);
            ev.type = SegmentEvent::Contact;
            ev.point = a1 + mid * u;
            ev.end_a = (ev.point - a1).norm() <= tol || (ev.point - b1).norm() <= tol;
            ev.end_b = (ev.point - a2).norm() <= tol || (ev.point - b2).norm() <= tol;
            return ev;
        }
        return ev;
    }

    double s = cross2(r, d2) / cr;
    double t = cross2(r, d1) / cr;
    if (s > tol && s < 1.0 - tol && t > tol && t < 1.0 - tol) {
        ev.type = SegmentEvent::Crossing;
        ev.param_a = s;
        ev.param_b = t;
        return ev;
    }
    if (segment_distance(a1, b1, a2, b2) <= tol) {
        // Locate the touch through the closest endpoint projection; the
        // raw line-intersection parameters explode for near-parallel pairs.
        auto project = [](const Vec2& p, const Vec2& a, const Vec2& b) {
            Vec2 d = b - a;
            double len2 = d.squaredNorm();
            double t = len2 == 0.0 ? 0.0 : std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
            return Vec2(a + t * d);
        };
        struct Witness {
            Vec2 on_a, on_b;
        };
        Witness candidates[4] = {{project(a2, a1, b1), a2},
                                 {project(b2, a1, b1), b2},
                                 {a1, project(a1, a2, b2)},
                                 {b1, project(b1, a2, b2)}};
        const Witness* best = &candidates[0];
        for (const Witness& w : candidates) {
            if ((w.on_a - w.on_b).norm() < (best->on_a - best->on_b).norm()) best = &w;
        }
        ev.type = SegmentEvent::Contact;
        ev.point = 0.5 * (best->on_a + best->on_b);
        ev.end_a = (ev.point - a1).norm() <= tol || (ev.point - b1).norm() <= tol;
        ev.end_b = (ev.point - a2).norm() <= tol || (ev.point - b2).norm() <= tol;
    }
    return ev;
}

struct Box {
    double lo[2], hi[2];
};

Box segment_box(const Vec2& a, const Vec2& b) {
    return {{std::min(a.x(), b.x()), std::min(a.y(), b.y())},
            {std::max(a.x(), b.x()), std::max(a.y(), b.y())}};
}

}  // namespace

DegeneracyReport analyze_drawing(const TorusGraph& g, double tol) {
    DegeneracyReport rep;
    const Mat2& m = g.torus.basis;
    const int nv = g.vertex_count();
    const int ne = g.edge_count();

    // --- vertex coincidences -------------------------------------------
    for (int a = 0; a < nv; ++a) {
        for (int b = a + 1; b < nv; ++b) {
            Vec2 diff = g.vertices[b] - g.vertices[a];
            Vec2i center(-std::lround(diff.x()), -std::lround(diff.y()));
            double best = std::numeric_limits<double>::infinity();
            Vec2i best_k = center;
            for (int kx = -1; kx <= 1; ++kx) {
                for (int ky = -1; ky <= 1; ++ky) {
                    Vec2i k = center + Vec2i(kx, ky);
                    double d = (m * (diff + k.cast<double>())).norm();
                    if (d < best) {
                        best = d;
                        best_k = k;
                    }
                }
            }
            if (best <= tol) {
                rep.coincident_vertex_pairs.push_back({a, b, best_k, best});
            }
        }
    }

    // --- edge pairs over lattice translates ----------------------------
    // Offsets are enumerated from reference-coordinate bounding boxes with
    // enough slack to cover the tolerance mapped back through the basis.
    double slack = 0.5 + tol * m.inverse().lpNorm<Eigen::Infinity>();

    std::vector<Vec2> ref_a(ne), ref_d(ne);
    for (int e = 0; e < ne; ++e) {
        ref_a[e] = g.vertices[g.edges[e].tail];
        ref_d[e] = g.displacement(forward_dart(e));
    }

    auto shared_lift_exempt = [&](int ea, int eb, const Vec2i& k, const Vec2& pt,
                                  double tol_) {
        // Endpoint lifts of ea's segment: tail at offset 0, head at shift.
        // Endpoint lifts of eb's translate: tail at k, head at k + shift.
        struct End {
            int vertex;
            Vec2i lift;
        };
        End ends_a[2] = {{g.edges[ea].tail, Vec2i::Zero()},
                         {g.edges[ea].head, g.shift_of(forward_dart(ea))}};
        End ends_b[2] = {{g.edges[eb].tail, k},
                         {g.edges[eb].head, Vec2i(k + g.shift_of(forward_dart(eb)))}};
        for (const End& x : ends_a) {
            Vec2 px = m * (g.vertices[x.vertex] + x.lift.cast<double>());
            if ((px - pt).norm() > tol_) continue;
            for (const End& y : ends_b) {
                Vec2 py = m * (g.vertices[y.vertex] + y.lift.cast<double>());
                if ((py - pt).norm() > tol_) continue;
                if (x.vertex == y.vertex && x.lift == y.lift) return true;   // shared
                if (x.vertex != y.vertex) return true;  // vertex pass reports it
            }
        }
        return false;
    };

    for (int ea = 0; ea < ne; ++ea) {
        Vec2 a1 = m * ref_a[ea];
        Vec2 b1 = m * (ref_a[ea] + ref_d[ea]);
        Box box1 = segment_box(ref_a[ea], ref_a[ea] + ref_d[ea]);
        for (int eb = ea; eb < ne; ++eb) {
            Box box2 = segment_box(ref_a[eb], ref_a[eb] + ref_d[eb]);
            int klo[2], khi[2];
            for (int axis = 0; axis < 2; ++axis) {
                klo[axis] = static_cast<int>(
                    std::ceil(box1.lo[axis] - box2.hi[axis] - slack));
                khi[axis] = static_cast<int>(
                    std::floor(box1.hi[axis] - box2.lo[axis] + slack));
            }
            for (int kx = klo[0]; kx <= khi[0]; ++kx) {
                for (int ky = klo[1]; ky <= khi[1]; ++ky) {
                    Vec2i k(kx, ky);
                    if (ea == eb) {
                        // one representative per unordered translate pair
                        if (kx < 0 || (kx == 0 && ky <= 0)) continue;
                    }
                    Vec2 shiftv = m * k.cast<double>();
                    SegmentEvent ev = classify_segments(
                        a1, b1, m * ref_a[eb] + shiftv,
                        m * (ref_a[eb] + ref_d[eb]) + shiftv, tol);
                    switch (ev.type) {
                        case SegmentEvent::Crossing:
                            rep.crossing_edge_pairs.push_back(
                                {ea, eb, k, ev.param_a, ev.param_b});
                            break;
                        case SegmentEvent::CollinearOverlap:
                            rep.overlapping_edge_pairs.push_back(
                                {ea, eb, k, OverlapEdgePair::Collinear, ev.extent});
                            break;
                        case SegmentEvent::Contact:
                            if (ev.end_a && ev.end_b &&
                                shared_lift_exempt(ea, eb, k, ev.point, tol)) {
                                break;
                            }
                            rep.overlapping_edge_pairs.push_back(
                                {ea, eb, k, OverlapEdgePair::EndpointContact, 0.0});
                            break;
                        case SegmentEvent::None:
                            break;
                    }
                }
            }
        }
    }

    // --- self-intersecting faces ----------------------------------------
    for (const FacePolygon& poly : face_polygons(g, std::max(tol, 1e-9))) {
        const int n = static_cast<int>(poly.corners.size());
        if (n < 2) continue;
        bool bad = false;

        for (int i = 0; i < n && !bad; ++i) {
            for (int j = i + 1; j < n && !bad; ++j) {
                if ((poly.corners[i] - poly.corners[j]).norm() <= tol) bad = true;
            }
        }

        auto side = [&](int i) {
            Vec2 c0 = poly.corners[i];
            Vec2 c1 = i + 1 < n ? poly.corners[i + 1]
                                : poly.corners[0];  // last side closes the loop
            return std::pair<Vec2, Vec2>(c0, c1);
        };
        for (int i = 0; i < n && !bad; ++i) {
            auto [a1, b1] = side(i);
            for (int j = i + 1; j < n && !bad; ++j) {
                auto [a2, b2] = side(j);
                bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
                if (adjacent) {
                    // a boundary that doubles back on itself along the
                    // shared corner pinches the face
                    Vec2 u = b1 - a1;
                    Vec2 v = b2 - a2;
                    if (std::abs(cross2(u, v)) <= tol * u.norm() * v.norm() &&
                        u.dot(v) < 0.0) {
                        bad = true;
                    }
                    continue;
                }
                SegmentEvent ev = classify_segments(a1, b1, a2, b2, tol);
                if (ev.type != SegmentEvent::None) bad = true;
            }
        }
        if (bad) rep.self_intersecting_faces.push_back(poly.face);
    }

    return rep;
}

std::vector<FacePolygon> face_polygons(const TorusGraph& g, double tol) {
    FaceSet faces = face_orbits(g);
    NativeCoords nat = native_coords(g);
    std::vector<FacePolygon> out;
    out.reserve(faces.count());
    for (int f = 0; f < faces.count(); ++f) {
        FacePolygon poly;
        poly.face = f;
        poly.darts = faces.orbits[f];
        Vec2 cursor = nat.vertices[g.tail_of(poly.darts.front())];
        for (Dart d : poly.darts) {
            poly.corners.push_back(cursor);
            Vec2 step = nat.displacements.col(edge_of(d));
            cursor += is_forward(d) ? step : Vec2(-step);
        }
        poly.closure_gap = (cursor - poly.corners.front()).norm();
        if (poly.closure_gap > tol) {
            throw std::runtime_error("face_polygons: face " + std::to_string(f) +
                                     " fails to close (gap " +
                                     std::to_string(poly.closure_gap) + ")");
        }
        out.push_back(std::move(poly));
    }
    return out;
}

bool is_embedding(const TorusGraph& g, double tol) {
    return analyze_drawing(g, tol).empty();
}

TorusGraph change_torus_basis(const TorusGraph& g, const Eigen::Matrix2i& u) {
    int det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    if (det != 1 && det != -1) {
        throw std::invalid_argument("change_torus_basis: matrix is not unimodular");
    }
    Eigen::Matrix2i uinv;
    uinv << u(1, 1), -u(0, 1), -u(1, 0), u(0, 0);
    uinv *= det;  // adjugate over +-1 determinant

    TorusGraph out = g;
    out.torus.basis = g.torus.basis * u.cast<double>();
    for (int d = 0; d < g.dart_count(); ++d) {
        out.dart_shifts[d] = uinv * g.dart_shifts[d];
    }
    std::vector<Vec2> raw(g.vertex_count());
    Mat2 uinvd = uinv.cast<double>();
    for (int v = 0; v < g.vertex_count(); ++v) raw[v] = uinvd * g.vertices[v];
    normalize_coordinates(out, raw);
    return out;
}

}  // namespace torusrec
