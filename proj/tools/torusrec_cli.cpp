#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "torusrec/document.hpp"
#include "torusrec/drawing_analysis.hpp"
#include "torusrec/instances.hpp"
#include "torusrec/svg.hpp"

using namespace torusrec;

namespace {

// Exit codes: 0 success (or affirmative verdict), 1 I/O, parse, or
// validation failure, 2 negative mathematical verdict (not in equilibrium,
// not an embedding, no reciprocal exists).
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerdict = 2;

std::string mat_text(const Mat2& m) {
    return "[[" + short_number(m(0, 0)) + "," + short_number(m(0, 1)) + "],[" +
           short_number(m(1, 0)) + "," + short_number(m(1, 1)) + "]]";
}

const StressVector& pick_stress(const GraphDocument& doc, const std::string& name) {
    auto it = doc.stresses.find(name);
    if (it != doc.stresses.end()) return it->second;
    std::string names;
    for (const auto& [key, table] : doc.stresses) {
        if (!names.empty()) names += ", ";
        names += key;
    }
    throw std::invalid_argument("no stress table named '" + name + "'" +
                                (names.empty() ? " (document has none)"
                                               : " (available: " + names + ")"));
}

int require_valid(const TorusGraph& g) {
    ValidationReport rep = validate(g);
    if (rep.ok()) return kExitOk;
    std::cerr << rep.to_string();
    return kExitError;
}

int run_validate(const std::string& file) {
    GraphDocument doc = read_document_file(file);
    ValidationReport rep = validate(doc.graph);
    std::cout << rep.to_string();
    if (!rep.ok()) return kExitError;
    FaceSet faces = face_orbits(doc.graph);
    std::cout << doc.graph.vertex_count() << " vertices, " << doc.graph.edge_count()
              << " edges, " << faces.count() << " faces\n";
    return kExitOk;
}

int run_covariance(const std::string& file, const std::string& stress) {
    GraphDocument doc = read_document_file(file);
    if (int rc = require_valid(doc.graph)) return rc;
    CovarianceMatrix cov = covariance(doc.graph, pick_stress(doc, stress));
    std::cout << "alpha=" << short_number(cov.alpha) << " beta=" << short_number(cov.beta)
              << " gamma=" << short_number(cov.gamma) << " det=" << short_number(cov.det())
              << "\n";
    std::cout << mat_text(cov.matrix()) << "\n";
    return kExitOk;
}

int run_equilibrium(const std::string& file, const std::string& stress, double tol) {
    GraphDocument doc = read_document_file(file);
    if (int rc = require_valid(doc.graph)) return rc;
    EquilibriumReport rep = is_equilibrium(doc.graph, pick_stress(doc, stress), tol);
    std::cout << (rep.equilibrium ? "equilibrium\n" : "not in equilibrium\n");
    std::cout << "max residual: " << short_number(rep.max_residual) << " (scale "
              << short_number(rep.scale) << ", tol " << short_number(tol) << ")\n";
    return rep.equilibrium ? kExitOk : kExitVerdict;
}

int run_stress_basis(const std::string& file, const std::string& out) {
    GraphDocument doc = read_document_file(file);
    if (int rc = require_valid(doc.graph)) return rc;
    Eigen::MatrixXd basis = stress_space(doc.graph);
    for (int j = 0; j < basis.cols(); ++j) {
        doc.stresses["basis" + std::to_string(j)] = basis.col(j);
    }
    if (out.empty()) {
        std::cout << serialize_document(doc);
    } else {
        write_document_file(out, doc);
        std::cout << "stress space dimension " << basis.cols() << ", wrote " << out
                  << "\n";
    }
    return kExitOk;
}

int run_force_torus(const std::string& file, const std::string& stress,
                    ReciprocalMode mode) {
    GraphDocument doc = read_document_file(file);
    if (int rc = require_valid(doc.graph)) return rc;
    const StressVector& omega = pick_stress(doc, stress);
    FlatTorus n = mode == ReciprocalMode::Parallel
                      ? parallel_force_torus(doc.graph, omega)
                      : orthogonal_force_torus(doc.graph, omega);
    std::cout << mat_text(n.basis) << "\n";
    return kExitOk;
}

void print_verification(const ReciprocalReport& rep) {
    if (rep.ok()) {
        std::cout << "verification: ok (max angle error " << short_number(rep.max_angle_error)
                  << ", max length error " << short_number(rep.max_length_error) << ")\n";
        return;
    }
    std::cout << "verification: " << rep.violations.size() << " violating edge(s)\n";
    for (const ReciprocalViolation& v : rep.violations) {
        std::cout << "  edge " << v.edge << ": angle error " << short_number(v.angle_error)
                  << ", length error " << short_number(v.length_error)
                  << (v.direction_flipped ? ", direction flipped" : "") << "\n";
    }
}

int run_reciprocal(const std::string& file, const std::string& stress,
                   ReciprocalMode mode, double sigma, bool sigma_given,
                   const std::string& out, const std::string& primal_out, double tol) {
    GraphDocument doc = read_document_file(file);
    if (int rc = require_valid(doc.graph)) return rc;
    const TorusGraph& g = doc.graph;
    StressVector omega = pick_stress(doc, stress);

    EquilibriumReport eq = is_equilibrium(g, omega, tol);
    if (!eq.equilibrium) {
        std::cout << "not in equilibrium (max residual " << short_number(eq.max_residual)
                  << "): no reciprocal exists\n";
        return kExitVerdict;
    }

    TorusGraph primal = g;
    std::string used_stress = stress;
    DualDrawing dual;

    if (mode == ReciprocalMode::Parallel) {
        ParallelCriterion crit = parallel_criterion(g, omega, tol);
        std::cout << "covariance: alpha=" << short_number(crit.cov.alpha)
                  << " beta=" << short_number(crit.cov.beta)
                  << " gamma=" << short_number(crit.cov.gamma)
                  << " det=" << short_number(crit.cov.det()) << "\n";
        if (!crit.reciprocal) {
            std::cout << "no parallel reciprocal on any torus: covariance deviates "
                         "from the identity by "
                      << short_number(crit.deviation) << "\n";
            return kExitVerdict;
        }
        dual = build_dual_drawing(g, omega, mode, g.torus);
    } else {
        OrthogonalFamilyResult fam = orthogonal_torus_family(g, omega, tol);
        std::cout << "covariance: alpha=" << short_number(fam.cov.alpha)
                  << " beta=" << short_number(fam.cov.beta)
                  << " gamma=" << short_number(fam.cov.gamma)
                  << " det=" << short_number(fam.cov.det()) << "\n";
        if (fam.status == OrthogonalFamilyResult::Impossible) {
            std::cout << "no orthogonal reciprocal: " << fam.reason << "\n";
            return kExitVerdict;
        }
        if (fam.status == OrthogonalFamilyResult::RescaleNeeded) {
            omega = *fam.rescaled;
            used_stress = stress + "_rescaled";
            std::cout << "stress rescaled by 1/sqrt(det) = "
                      << short_number(1.0 / std::sqrt(fam.cov.det()))
                      << " to reach determinant 1\n";
        }
        const TorusFamily& family = *fam.family;
        std::cout << "reciprocal torus family base: " << mat_text(family.base) << "\n";
        if (sigma_given || !family.contains(g.torus.basis, tol)) {
            Mat2 member = family.member(sigma, 0.0);
            primal.torus = FlatTorus::from_basis(member);
            std::cout << "drawing rebased onto family torus (sigma="
                      << short_number(sigma) << "): " << mat_text(member) << "\n";
        }
        dual = build_dual_drawing(primal, omega, mode, primal.torus);
    }

    std::cout << "dual: " << dual.graph.vertex_count() << " vertices, "
              << dual.graph.edge_count() << " edges on torus "
              << mat_text(dual.graph.torus.basis) << "\n";
    ReciprocalReport rep = verify_reciprocal(primal, dual, omega, tol);
    print_verification(rep);

    if (!out.empty()) {
        write_document_file(out, document_from_dual(dual));
        std::cout << "wrote " << out << "\n";
    }
    if (!primal_out.empty()) {
        GraphDocument pd;
        pd.graph = primal;
        pd.stresses[used_stress] = omega;
        write_document_file(primal_out, pd);
        std::cout << "wrote " << primal_out << "\n";
    }
    return rep.ok() ? kExitOk : kExitVerdict;
}

int run_analyze(const std::string& file, double tol) {
    GraphDocument doc = read_document_file(file);
    if (int rc = require_valid(doc.graph)) return rc;
    DegeneracyReport rep = analyze_drawing(doc.graph, tol);
    std::cout << rep.coincident_vertex_pairs.size() << " coincident vertex pair(s), "
              << rep.crossing_edge_pairs.size() << " crossing edge pair(s), "
              << rep.overlapping_edge_pairs.size() << " overlapping edge pair(s), "
              << rep.self_intersecting_faces.size() << " self-intersecting face(s)\n";
    for (const auto& p : rep.coincident_vertex_pairs) {
        std::cout << "  vertices " << p.a << " and " << p.b << " coincide (offset ["
                  << p.offset.x() << "," << p.offset.y() << "], distance "
                  << short_number(p.distance) << ")\n";
    }
    for (const auto& p : rep.crossing_edge_pairs) {
        std::cout << "  edges " << p.edge_a << " and " << p.edge_b << " cross (offset ["
                  << p.offset.x() << "," << p.offset.y() << "])\n";
    }
    for (const auto& p : rep.overlapping_edge_pairs) {
        std::cout << "  edges " << p.edge_a << " and " << p.edge_b
                  << (p.kind == OverlapEdgePair::Collinear ? " overlap (extent "
                                                           : " touch (extent ")
                  << short_number(p.extent) << ", offset [" << p.offset.x() << ","
                  << p.offset.y() << "])\n";
    }
    for (int f : rep.self_intersecting_faces) {
        std::cout << "  face " << f << " self-intersects\n";
    }
    std::cout << (rep.empty() ? "embedding\n" : "not an embedding\n");
    return rep.empty() ? kExitOk : kExitVerdict;
}

int run_render(const std::string& file, const std::string& dual_file,
               const std::string& out, double scale, bool labels, bool no_tile) {
    GraphDocument doc = read_document_file(file);
    if (int rc = require_valid(doc.graph)) return rc;
    RenderOptions opt;
    opt.scale = scale;
    opt.labels = labels;
    opt.tile = !no_tile;
    DualDrawing overlay;
    if (!dual_file.empty()) {
        overlay = dual_from_document(read_document_file(dual_file));
        opt.overlay = &overlay;
    }
    std::string svg = render_svg(doc.graph, opt);
    std::ofstream stream(out, std::ios::binary);
    if (!stream || !(stream << svg) || !stream.flush()) {
        throw std::runtime_error("cannot write " + out);
    }
    std::cout << "wrote " << out << "\n";
    return kExitOk;
}

int run_instance(const std::string& name, const std::string& out) {
    GraphDocument doc = builtin_instance(name);
    if (out.empty()) {
        std::cout << serialize_document(doc);
    } else {
        write_document_file(out, doc);
        std::cout << "wrote " << out << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geodesic torus graphs, equilibrium stresses, and reciprocal diagrams"};
    app.require_subcommand(1);

    std::string file, stress, mode_name_arg, out, primal_out, dual_file, inst_name;
    double tol = 1e-9;
    double sigma = 1.0;
    double scale = 220.0;
    bool labels = false;
    bool no_tile = false;

    auto add_tol = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "numerical tolerance")->capture_default_str();
    };
    auto add_stress = [&](CLI::App* cmd) {
        cmd->add_option("--stress", stress, "name of the stress table")->required();
    };
    auto add_mode = [&](CLI::App* cmd) {
        cmd->add_option("--mode", mode_name_arg, "reciprocal mode")
            ->required()
            ->check(CLI::IsMember({"orthogonal", "parallel"}));
    };

    CLI::App* cmd_validate = app.add_subcommand("validate", "check a graph document");
    cmd_validate->add_option("file", file, "graph document")->required();

    CLI::App* cmd_cov = app.add_subcommand("covariance", "print the stress covariance");
    cmd_cov->add_option("file", file, "graph document")->required();
    add_stress(cmd_cov);

    CLI::App* cmd_eq = app.add_subcommand("equilibrium", "check the equilibrium condition");
    cmd_eq->add_option("file", file, "graph document")->required();
    add_stress(cmd_eq);
    add_tol(cmd_eq);

    CLI::App* cmd_basis =
        app.add_subcommand("stress-basis", "append an equilibrium stress basis");
    cmd_basis->add_option("file", file, "graph document")->required();
    cmd_basis->add_option("-o,--out", out, "output document (default stdout)");

    CLI::App* cmd_rec =
        app.add_subcommand("reciprocal", "decide and build a reciprocal diagram");
    cmd_rec->add_option("file", file, "graph document")->required();
    add_stress(cmd_rec);
    add_mode(cmd_rec);
    CLI::Option* sigma_opt =
        cmd_rec->add_option("--sigma", sigma, "scale of the reciprocal torus")
            ->capture_default_str();
    cmd_rec->add_option("-o,--out", out, "write the dual drawing here");
    cmd_rec->add_option("--primal-out", primal_out, "write the (possibly rebased) primal");
    add_tol(cmd_rec);

    CLI::App* cmd_force = app.add_subcommand("force-torus", "print the force torus");
    cmd_force->add_option("file", file, "graph document")->required();
    add_stress(cmd_force);
    add_mode(cmd_force);

    CLI::App* cmd_analyze = app.add_subcommand("analyze", "report drawing degeneracies");
    cmd_analyze->add_option("file", file, "graph document")->required();
    add_tol(cmd_analyze);

    CLI::App* cmd_render = app.add_subcommand("render", "render a drawing to SVG");
    cmd_render->add_option("file", file, "graph document")->required();
    cmd_render->add_option("--dual", dual_file, "dual drawing document to overlay");
    cmd_render->add_option("-o,--out", out, "output SVG file")->required();
    cmd_render->add_option("--scale", scale, "pixels per unit")->capture_default_str();
    cmd_render->add_flag("--labels", labels, "draw vertex labels");
    cmd_render->add_flag("--no-tile", no_tile, "draw only the central tile");

    CLI::App* cmd_inst = app.add_subcommand("instance", "write a built-in instance");
    cmd_inst->add_option("name", inst_name, "instance name, e.g. k7_uniform or grid_4")
        ->required();
    cmd_inst->add_option("-o,--out", out, "output document (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (cmd_validate->parsed()) return run_validate(file);
        if (cmd_cov->parsed()) return run_covariance(file, stress);
        if (cmd_eq->parsed()) return run_equilibrium(file, stress, tol);
        if (cmd_basis->parsed()) return run_stress_basis(file, out);
        if (cmd_rec->parsed()) {
            ReciprocalMode mode = mode_name_arg == "parallel" ? ReciprocalMode::Parallel
                                                              : ReciprocalMode::Orthogonal;
            return run_reciprocal(file, stress, mode, sigma, sigma_opt->count() > 0, out,
                                  primal_out, tol);
        }
        if (cmd_force->parsed()) {
            ReciprocalMode mode = mode_name_arg == "parallel" ? ReciprocalMode::Parallel
                                                              : ReciprocalMode::Orthogonal;
            return run_force_torus(file, stress, mode);
        }
        if (cmd_analyze->parsed()) return run_analyze(file, tol);
        if (cmd_render->parsed())
            return run_render(file, dual_file, out, scale, labels, no_tile);
        if (cmd_inst->parsed()) return run_instance(inst_name, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
