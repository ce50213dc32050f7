#pragma once

#include <string>
#include <vector>

#include "ioimpact/scenario.hpp"

namespace ioimpact {

struct SankeyNode {
    enum class Stage { Program, TargetSector, ImpactedSector };
    std::string id;
    std::string label;
    Stage stage;
};

std::string_view sankey_stage_name(SankeyNode::Stage stage);

struct SankeyLink {
    std::string source;
    std::string target;
    double value = 0.0;
};

// Three-stage flow graph: programs feed their target sectors with the
// direct shock; target sectors fan out the per-sector output deltas.
// Impacted sectors beyond the top_k largest total deltas collapse into one
// "Other sectors" node. Zero-value links are dropped.
struct SankeyGraph {
    std::vector<SankeyNode> nodes;
    std::vector<SankeyLink> links;
};

SankeyGraph emit_sankey(const ImpactReport& report, std::size_t top_k);

}  // namespace ioimpact
