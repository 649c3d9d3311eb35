#include "torusrec/instances.hpp"

#include <stdexcept>

namespace torusrec {

namespace {

TorusGraph k7_graph() {
    TorusGraph g;
    g.torus = FlatTorus::square();
    for (int i = 0; i < 7; ++i) {
        g.vertices.push_back(Vec2(i / 7.0, (3 * i % 7) / 7.0));
    }
    for (int step = 1; step <= 3; ++step) {
        for (int i = 0; i < 7; ++i) {
            int j = (i + step) % 7;
            Vec2i shift = shortest_shift(g.vertices[j] - g.vertices[i]);
            g.edges.push_back({i, j});
            g.dart_shifts.push_back(shift);
            g.dart_shifts.push_back(-shift);
        }
    }
    rotation_from_geometry(g);
    return g;
}

StressVector class_stress(double s1, double s2, double s3) {
    StressVector omega(21);
    for (int i = 0; i < 7; ++i) {
        omega[i] = s1;
        omega[7 + i] = s2;
        omega[14 + i] = s3;
    }
    return omega;
}

GraphDocument k7_document() {
    GraphDocument doc;
    doc.graph = k7_graph();
    doc.stresses["uniform"] = StressVector::Ones(21);
    // slope-3 class first, then slope -1/2 (i -> i+2), then slope 2/3
    doc.stresses["weird"] = class_stress(2.0, 3.0, -1.0);
    doc.stresses["negative"] = class_stress(1.0, -1.0, 1.0);
    return doc;
}

GraphDocument grid_document(int n) {
    GraphDocument doc;
    TorusGraph& g = doc.graph;
    g.torus = FlatTorus::square();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            g.vertices.push_back(Vec2(i / double(n), j / double(n)));
        }
    }
    auto id = [n](int i, int j) { return j * n + i; };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            g.edges.push_back({id(i, j), id((i + 1) % n, j)});
            g.dart_shifts.push_back(i + 1 == n ? Vec2i(1, 0) : Vec2i(0, 0));
            g.dart_shifts.push_back(-g.dart_shifts.back());
            g.edges.push_back({id(i, j), id(i, (j + 1) % n)});
            g.dart_shifts.push_back(j + 1 == n ? Vec2i(0, 1) : Vec2i(0, 0));
            g.dart_shifts.push_back(-g.dart_shifts.back());
        }
    }
    rotation_from_geometry(g);
    doc.stresses["uniform"] = StressVector::Ones(g.edge_count());
    return doc;
}

}  // namespace

GraphDocument builtin_instance(const std::string& name) {
    if (name == "k7_uniform" || name == "k7_weird" || name == "k7_negative") {
        return k7_document();
    }
    if (name.rfind("grid_", 0) == 0) {
        const std::string num = name.substr(5);
        int n = 0;
        try {
            size_t used = 0;
            n = std::stoi(num, &used);
            if (used != num.size()) n = 0;
        } catch (const std::exception&) {
            n = 0;
        }
        if (n >= 1 && n <= 256) return grid_document(n);
        throw std::invalid_argument("grid size must be an integer in [1, 256]: " +
                                    name);
    }
    throw std::invalid_argument(
        "unknown instance \"" + name +
        "\" (expected k7_uniform, k7_weird, k7_negative, or grid_N)");
}

TorusGraph k7_blueprint() {
    TorusGraph g = k7_graph();
    for (Vec2& v : g.vertices) v = Vec2::Zero();
    g.rotation.clear();
    return g;
}

}  // namespace torusrec
