#include "torusrec/document.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace torusrec {

using nlohmann::json;

std::string canonical_number(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string short_number(double x) {
    if (x == 0.0) x = 0.0;
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, end);
}

namespace {

const char* kModeNames[] = {"orthogonal", "parallel"};

double number_at(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    return j.get<double>();
}

int integer_at(const json& j, const std::string& where) {
    double v = number_at(j, where);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw ParseError(where + ": expected an integer, got " + short_number(v));
    }
    return static_cast<int>(v);
}

Mat2 matrix_at(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2) {
        throw ParseError(where + ": expected a 2x2 matrix");
    }
    Mat2 m;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            m(r, c) = number_at(j[r][c], where);
    return m;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) known = known || it.key() == k;
        if (!known) throw ParseError(where + ": unknown key \"" + it.key() + "\"");
    }
}

// --- canonical writer ----------------------------------------------------
// nlohmann's dump() prints doubles with 17 digits too, but its exact digit
// choices and key handling are implementation details; writing the few
// structures we have keeps the byte format under our control.

struct Writer {
    std::string out;

    void raw(const std::string& s) { out += s; }
    void number(double x) { out += canonical_number(x); }
    void integer(long long v) { out += std::to_string(v); }
    void str(const std::string& s) {
        out += '"';
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out += c;
                    }
            }
        }
        out += '"';
    }
    void vec2(const Vec2& v) {
        raw("[");
        number(v.x());
        raw(",");
        number(v.y());
        raw("]");
    }
    void vec2i(const Vec2i& v) {
        raw("[");
        integer(v.x());
        raw(",");
        integer(v.y());
        raw("]");
    }
    void mat2(const Mat2& m) {
        raw("[[");
        number(m(0, 0));
        raw(",");
        number(m(0, 1));
        raw("],[");
        number(m(1, 0));
        raw(",");
        number(m(1, 1));
        raw("]]");
    }
};

}  // namespace

GraphDocument parse_document(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError("document root must be an object");
    check_keys(root, {"dual", "edges", "rotation", "stresses", "torus", "version",
                      "vertices"},
               "document");
    for (const char* required : {"edges", "torus", "version", "vertices"}) {
        if (!root.contains(required)) {
            throw ParseError(std::string("missing key \"") + required + "\"");
        }
    }

    GraphDocument doc;
    doc.version = integer_at(root["version"], "version");
    if (doc.version != 1) {
        throw ParseError("unsupported version " + std::to_string(doc.version));
    }

    TorusGraph& g = doc.graph;
    g.torus.basis = matrix_at(root["torus"], "torus");

    const json& jverts = root["vertices"];
    if (!jverts.is_array()) throw ParseError("vertices: expected an array");
    for (size_t i = 0; i < jverts.size(); ++i) {
        const json& jv = jverts[i];
        std::string where = "vertices[" + std::to_string(i) + "]";
        if (!jv.is_array() || jv.size() != 2) throw ParseError(where + ": expected [x, y]");
        Vec2 p(number_at(jv[0], where), number_at(jv[1], where));
        if (!(p.x() >= 0.0 && p.x() < 1.0 && p.y() >= 0.0 && p.y() < 1.0)) {
            throw ParseError(where + ": coordinates must lie in [0,1)^2");
        }
        g.vertices.push_back(p);
    }

    const json& jedges = root["edges"];
    if (!jedges.is_array()) throw ParseError("edges: expected an array");
    const int nv = g.vertex_count();
    for (size_t i = 0; i < jedges.size(); ++i) {
        const json& je = jedges[i];
        std::string where = "edges[" + std::to_string(i) + "]";
        if (!je.is_object()) throw ParseError(where + ": expected an object");
        check_keys(je, {"head", "shift", "tail"}, where);
        for (const char* k : {"head", "shift", "tail"}) {
            if (!je.contains(k)) throw ParseError(where + ": missing \"" + k + "\"");
        }
        int tail = integer_at(je["tail"], where + ".tail");
        int head = integer_at(je["head"], where + ".head");
        if (tail < 0 || tail >= nv || head < 0 || head >= nv) {
            throw ParseError(where + ": endpoint index out of range");
        }
        const json& js = je["shift"];
        if (!js.is_array() || js.size() != 2) {
            throw ParseError(where + ".shift: expected [sx, sy]");
        }
        Vec2i shift(integer_at(js[0], where + ".shift"),
                    integer_at(js[1], where + ".shift"));
        g.edges.push_back({tail, head});
        g.dart_shifts.push_back(shift);
        g.dart_shifts.push_back(-shift);
    }

    if (root.contains("stresses")) {
        const json& jst = root["stresses"];
        if (!jst.is_object()) throw ParseError("stresses: expected an object");
        for (auto it = jst.begin(); it != jst.end(); ++it) {
            if (!it.value().is_array() ||
                it.value().size() != static_cast<size_t>(g.edge_count())) {
                throw ParseError("stresses." + it.key() + ": expected " +
                                 std::to_string(g.edge_count()) + " numbers");
            }
            StressVector omega(g.edge_count());
            for (int e = 0; e < g.edge_count(); ++e) {
                omega[e] = number_at(it.value()[e], "stresses." + it.key());
            }
            doc.stresses[it.key()] = std::move(omega);
        }
    }

    if (root.contains("rotation")) {
        const json& jrot = root["rotation"];
        if (!jrot.is_array() || jrot.size() != static_cast<size_t>(nv)) {
            throw ParseError("rotation: expected one dart list per vertex");
        }
        g.rotation.resize(nv);
        std::vector<char> seen(g.dart_count(), 0);
        for (int v = 0; v < nv; ++v) {
            if (!jrot[v].is_array()) throw ParseError("rotation: expected arrays");
            for (const json& jd : jrot[v]) {
                int d = integer_at(jd, "rotation");
                if (d < 0 || d >= g.dart_count()) {
                    throw ParseError("rotation: dart index " + std::to_string(d) +
                                     " out of range");
                }
                if (seen[d]++) {
                    throw ParseError("rotation: dart " + std::to_string(d) +
                                     " listed twice");
                }
                if (g.tail_of(d) != v) {
                    throw ParseError("rotation: dart " + std::to_string(d) +
                                     " listed at vertex " + std::to_string(v) +
                                     " but leaves vertex " +
                                     std::to_string(g.tail_of(d)));
                }
                g.rotation[v].push_back(d);
            }
        }
        for (int d = 0; d < g.dart_count(); ++d) {
            if (!seen[d]) {
                throw ParseError("rotation: dart " + std::to_string(d) + " missing");
            }
        }
    } else {
        try {
            rotation_from_geometry(g);
        } catch (const std::exception& e) {
            throw ParseError(std::string("cannot derive rotation: ") + e.what());
        }
    }

    if (root.contains("dual")) {
        const json& jd = root["dual"];
        if (!jd.is_object()) throw ParseError("dual: expected an object");
        check_keys(jd, {"edge_map", "mode", "source_torus"}, "dual");
        for (const char* k : {"edge_map", "mode", "source_torus"}) {
            if (!jd.contains(k)) throw ParseError(std::string("dual: missing \"") + k + "\"");
        }
        DualInfo info;
        std::string mode = jd["mode"].is_string() ? jd["mode"].get<std::string>() : "";
        if (mode == kModeNames[0]) {
            info.mode = ReciprocalMode::Orthogonal;
        } else if (mode == kModeNames[1]) {
            info.mode = ReciprocalMode::Parallel;
        } else {
            throw ParseError("dual.mode: expected \"orthogonal\" or \"parallel\"");
        }
        info.source_torus = matrix_at(jd["source_torus"], "dual.source_torus");
        if (!jd["edge_map"].is_array() ||
            jd["edge_map"].size() != static_cast<size_t>(g.edge_count())) {
            throw ParseError("dual.edge_map: expected one entry per edge");
        }
        for (const json& jm : jd["edge_map"]) {
            info.edge_map.push_back(integer_at(jm, "dual.edge_map"));
        }
        doc.dual = std::move(info);
    }

    return doc;
}

std::string serialize_document(const GraphDocument& doc) {
    Writer w;
    w.raw("{");
    if (doc.dual) {
        w.raw("\"dual\":{\"edge_map\":[");
        for (size_t i = 0; i < doc.dual->edge_map.size(); ++i) {
            if (i) w.raw(",");
            w.integer(doc.dual->edge_map[i]);
        }
        w.raw("],\"mode\":");
        w.str(mode_name(doc.dual->mode));
        w.raw(",\"source_torus\":");
        w.mat2(doc.dual->source_torus);
        w.raw("},");
    }
    const TorusGraph& g = doc.graph;
    w.raw("\"edges\":[");
    for (int e = 0; e < g.edge_count(); ++e) {
        if (e) w.raw(",");
        w.raw("{\"head\":");
        w.integer(g.edges[e].head);
        w.raw(",\"shift\":");
        w.vec2i(g.shift_of(forward_dart(e)));
        w.raw(",\"tail\":");
        w.integer(g.edges[e].tail);
        w.raw("}");
    }
    w.raw("]");
    if (static_cast<int>(g.rotation.size()) == g.vertex_count()) {
        w.raw(",\"rotation\":[");
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (v) w.raw(",");
            w.raw("[");
            for (size_t i = 0; i < g.rotation[v].size(); ++i) {
                if (i) w.raw(",");
                w.integer(g.rotation[v][i]);
            }
            w.raw("]");
        }
        w.raw("]");
    }
    if (!doc.stresses.empty()) {
        w.raw(",\"stresses\":{");
        bool first = true;
        for (const auto& [name, omega] : doc.stresses) {
            if (!first) w.raw(",");
            first = false;
            w.str(name);
            w.raw(":[");
            for (int e = 0; e < omega.size(); ++e) {
                if (e) w.raw(",");
                w.number(omega[e]);
            }
            w.raw("]");
        }
        w.raw("}");
    }
    w.raw(",\"torus\":");
    w.mat2(g.torus.basis);
    w.raw(",\"version\":");
    w.integer(doc.version);
    w.raw(",\"vertices\":[");
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (v) w.raw(",");
        w.vec2(g.vertices[v]);
    }
    w.raw("]}\n");
    return w.out;
}

GraphDocument read_document_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

void write_document_file(const std::string& path, const GraphDocument& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize_document(doc);
}

DualDrawing dual_from_document(const GraphDocument& doc) {
    if (!doc.dual) throw std::invalid_argument("document has no dual metadata");
    DualDrawing dual;
    dual.graph = doc.graph;
    dual.mode = doc.dual->mode;
    dual.edge_map = doc.dual->edge_map;
    dual.source_torus = FlatTorus::from_basis(doc.dual->source_torus);
    return dual;
}

GraphDocument document_from_dual(const DualDrawing& dual) {
    GraphDocument doc;
    doc.graph = dual.graph;
    doc.dual = DualInfo{dual.mode, dual.source_torus.basis, dual.edge_map};
    return doc;
}

}  // namespace torusrec
