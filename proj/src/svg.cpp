#include "torusrec/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "torusrec/drawing_analysis.hpp"

namespace torusrec {

namespace {

struct Mapper {
    double min_x = 0, max_y = 0, scale = 1;

    double x(double v) const { return (v - min_x) * scale; }
    double y(double v) const { return (max_y - v) * scale; }  // flip to SVG axes
};

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

void emit_line(std::ostream& out, const Mapper& map, const Vec2& a, const Vec2& b,
               const std::string& cls) {
    out << "<line class=\"" << cls << "\" x1=\"" << px(map.x(a.x())) << "\" y1=\""
        << px(map.y(a.y())) << "\" x2=\"" << px(map.x(b.x())) << "\" y2=\""
        << px(map.y(b.y())) << "\"/>\n";
}

void emit_parallelogram(std::ostream& out, const Mapper& map, const Mat2& basis,
                        const std::string& cls) {
    Vec2 corners[4] = {Vec2::Zero(), basis.col(0), basis.col(0) + basis.col(1),
                       basis.col(1)};
    out << "<polygon class=\"" << cls << "\" points=\"";
    for (int i = 0; i < 4; ++i) {
        if (i) out << " ";
        out << px(map.x(corners[i].x())) << "," << px(map.y(corners[i].y()));
    }
    out << "\"/>\n";
}

struct Degenerate {
    std::set<int> vertices;
    std::set<int> edges;
    std::set<int> faces;
};

Degenerate degenerate_elements(const TorusGraph& g) {
    Degenerate bad;
    DegeneracyReport rep = analyze_drawing(g);
    for (const auto& p : rep.coincident_vertex_pairs) {
        bad.vertices.insert(p.a);
        bad.vertices.insert(p.b);
    }
    for (const auto& p : rep.crossing_edge_pairs) {
        bad.edges.insert(p.edge_a);
        bad.edges.insert(p.edge_b);
    }
    for (const auto& p : rep.overlapping_edge_pairs) {
        bad.edges.insert(p.edge_a);
        bad.edges.insert(p.edge_b);
    }
    for (int f : rep.self_intersecting_faces) bad.faces.insert(f);
    return bad;
}

void draw_graph(std::ostream& out, const Mapper& map, const TorusGraph& g,
                const RenderOptions& opt, bool is_overlay) {
    NativeCoords nat = native_coords(g);
    Degenerate bad = degenerate_elements(g);
    const Mat2& m = g.torus.basis;
    const int reach = opt.tile ? 1 : 0;

    const char* edge_cls = is_overlay ? "dedge" : "edge";
    const char* ghost_cls = is_overlay ? "dghost" : "ghost";
    const char* vertex_cls = is_overlay ? "dvertex" : "vertex";

    for (int ky = -reach; ky <= reach; ++ky) {
        for (int kx = -reach; kx <= reach; ++kx) {
            Vec2 off = m * Vec2(kx, ky);
            bool center = kx == 0 && ky == 0;
            for (int e = 0; e < g.edge_count(); ++e) {
                Vec2 a = nat.vertices[g.edges[e].tail] + off;
                Vec2 b = a + nat.displacements.col(e);
                std::string cls = center ? edge_cls : ghost_cls;
                if (bad.edges.count(e)) cls += " bad";
                emit_line(out, map, a, b, cls);
            }
        }
    }
    for (int ky = -reach; ky <= reach; ++ky) {
        for (int kx = -reach; kx <= reach; ++kx) {
            Vec2 off = m * Vec2(kx, ky);
            bool center = kx == 0 && ky == 0;
            for (int v = 0; v < g.vertex_count(); ++v) {
                Vec2 p = nat.vertices[v] + off;
                std::string cls = vertex_cls;
                if (!center) cls += " faint";
                if (bad.vertices.count(v)) cls += " bad";
                out << "<circle class=\"" << cls << "\" cx=\"" << px(map.x(p.x()))
                    << "\" cy=\"" << px(map.y(p.y())) << "\" r=\""
                    << (is_overlay ? "2.6" : "3.4") << "\"/>\n";
            }
        }
    }
    if (opt.labels && !is_overlay) {
        for (int v = 0; v < g.vertex_count(); ++v) {
            Vec2 p = nat.vertices[v];
            out << "<text class=\"label\" x=\"" << px(map.x(p.x()) + 5.0) << "\" y=\""
                << px(map.y(p.y()) - 5.0) << "\">" << v << "</text>\n";
        }
    }
}

}  // namespace

std::string render_svg(const TorusGraph& g, const RenderOptions& opt) {
    // Bounds cover the relevant translate neighborhood of every lattice.
    double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    auto grow = [&](const Mat2& basis) {
        int reach = opt.tile ? 1 : 0;
        for (int i = -reach; i <= reach + 1; ++i) {
            for (int j = -reach; j <= reach + 1; ++j) {
                Vec2 c = basis * Vec2(i, j);
                lo_x = std::min(lo_x, c.x());
                hi_x = std::max(hi_x, c.x());
                lo_y = std::min(lo_y, c.y());
                hi_y = std::max(hi_y, c.y());
            }
        }
    };
    grow(g.torus.basis);
    if (opt.overlay) grow(opt.overlay->graph.torus.basis);

    double margin = 0.06 * std::max(hi_x - lo_x, hi_y - lo_y) + 1e-9;
    Mapper map{lo_x - margin, hi_y + margin, opt.scale};
    double width = (hi_x - lo_x + 2 * margin) * opt.scale;
    double height = (hi_y - lo_y + 2 * margin) * opt.scale;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << px(width)
        << " " << px(height) << "\" width=\"" << px(width) << "\" height=\""
        << px(height) << "\">\n";
    out << "<style>\n"
           ".cell{fill:none;stroke:#888;stroke-width:1;stroke-dasharray:6 3}\n"
           ".dcell{fill:none;stroke:#b8860b;stroke-width:1;stroke-dasharray:2 4}\n"
           ".edge{stroke:#1f4e79;stroke-width:1.8}\n"
           ".ghost{stroke:#9ab3c8;stroke-width:1}\n"
           ".dedge{stroke:#b8860b;stroke-width:1.4}\n"
           ".dghost{stroke:#ddc58a;stroke-width:0.8}\n"
           ".vertex{fill:#1f4e79}\n"
           ".dvertex{fill:#b8860b}\n"
           ".faint{fill-opacity:0.35}\n"
           ".bad{stroke:#cc2222;fill:#cc2222}\n"
           ".label{font:12px sans-serif;fill:#333}\n"
           "</style>\n";

    // Clip the drawing to the tiled neighborhood of the fundamental domain.
    {
        const Mat2& m = g.torus.basis;
        int reach = opt.tile ? 1 : 0;
        Vec2 c0 = m * Vec2(-reach, -reach);
        Vec2 c1 = m * Vec2(reach + 1, -reach);
        Vec2 c2 = m * Vec2(reach + 1, reach + 1);
        Vec2 c3 = m * Vec2(-reach, reach + 1);
        out << "<clipPath id=\"tiles\"><polygon points=\"";
        for (const Vec2* c : {&c0, &c1, &c2, &c3}) {
            if (c != &c0) out << " ";
            out << px(map.x(c->x())) << "," << px(map.y(c->y()));
        }
        out << "\"/></clipPath>\n";
    }

    out << "<g clip-path=\"url(#tiles)\">\n";
    draw_graph(out, map, g, opt, false);
    if (opt.overlay) draw_graph(out, map, opt.overlay->graph, opt, true);
    out << "</g>\n";

    emit_parallelogram(out, map, g.torus.basis, "cell");
    if (opt.overlay) {
        emit_parallelogram(out, map, opt.overlay->graph.torus.basis, "dcell");
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace torusrec
