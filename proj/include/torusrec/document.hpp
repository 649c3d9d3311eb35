#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "torusrec/reciprocal.hpp"

namespace torusrec {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dual-drawing provenance carried by documents produced by the reciprocal
// pipeline; edge_map[k] names the source edge of dual edge k.
struct DualInfo {
    ReciprocalMode mode = ReciprocalMode::Parallel;
    Mat2 source_torus = Mat2::Identity();
    std::vector<int> edge_map;
};

// On-disk unit: a torus graph plus named stress tables.  The stress map is
// ordered so canonical serialization is reproducible.
struct GraphDocument {
    int version = 1;
    TorusGraph graph;
    std::map<std::string, StressVector> stresses;
    std::optional<DualInfo> dual;
};

// Parses JSON document text.  Structural problems (malformed JSON, indices
// out of range, fractional shifts, duplicate or misplaced rotation entries,
// coordinates outside [0,1)^2, stress tables of the wrong length) throw
// ParseError.  A missing rotation section is derived from the geometry.
// Geometric validity (Euler count, connectivity, ...) is not enforced here;
// run validate() on the graph for that.
GraphDocument parse_document(const std::string& text);

// Canonical form: compact JSON, keys sorted, floats at 17 significant
// digits, trailing newline; parse/serialize round-trips are byte-stable.
std::string serialize_document(const GraphDocument& doc);

GraphDocument read_document_file(const std::string& path);
void write_document_file(const std::string& path, const GraphDocument& doc);

// Formats a double with 17 significant digits (canonical document form).
std::string canonical_number(double x);

// Shortest representation that parses back to the same double; used in
// human-facing reports.
std::string short_number(double x);

DualDrawing dual_from_document(const GraphDocument& doc);
GraphDocument document_from_dual(const DualDrawing& dual);

}  // namespace torusrec
