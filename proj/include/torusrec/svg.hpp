#pragma once

#include "torusrec/reciprocal.hpp"

namespace torusrec {

struct RenderOptions {
    bool tile = true;           // draw the 3x3 translate neighborhood
    bool labels = false;        // vertex index labels on the central tile
    double scale = 220.0;       // pixels per native unit
    const DualDrawing* overlay = nullptr;
};

// Deterministic standalone SVG: fundamental parallelogram outline, edges
// clipped to the 3x3 tiling, optional dual overlay in its own stroke style,
// and degenerate elements (coincident vertices, crossing/overlapping edges,
// from analyze_drawing) highlighted.
std::string render_svg(const TorusGraph& g, const RenderOptions& options = {});

}  // namespace torusrec
