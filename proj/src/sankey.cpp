#include "ioimpact/sankey.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ioimpact {

namespace {
const char* kOtherNodeId = "impact:__other__";
}

std::string_view sankey_stage_name(SankeyNode::Stage stage) {
    switch (stage) {
        case SankeyNode::Stage::Program: return "program";
        case SankeyNode::Stage::TargetSector: return "target_sector";
        case SankeyNode::Stage::ImpactedSector: return "impacted_sector";
    }
    return "unknown";
}

SankeyGraph emit_sankey(const ImpactReport& report, std::size_t top_k) {
    SankeyGraph graph;
    const std::size_t n = report.sectors.size();

    // Stage 1: programs, in scenario order.
    for (const auto& p : report.per_program) {
        graph.nodes.push_back({"program:" + p.name, p.name, SankeyNode::Stage::Program});
    }

    // Stage 2: unique target sectors, in first-use order.
    std::vector<std::string> target_codes;
    for (const auto& p : report.per_program) {
        if (std::find(target_codes.begin(), target_codes.end(), p.target_sector) ==
            target_codes.end()) {
            target_codes.push_back(p.target_sector);
        }
    }
    for (const auto& code : target_codes) {
        std::string label = code;
        for (const auto& s : report.sectors) {
            if (s.code == code) {
                label = s.name;
                break;
            }
        }
        graph.nodes.push_back({"target:" + code, label, SankeyNode::Stage::TargetSector});
    }

    // Stage 3: impacted sectors ranked by total delta across programs;
    // everything past top_k collapses into "Other sectors".
    std::vector<double> total_delta(n, 0.0);
    for (const auto& p : report.per_program) {
        for (std::size_t j = 0; j < n; ++j) total_delta[j] += p.per_sector_delta[j];
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return total_delta[a] > total_delta[b];
    });
    const std::size_t kept = std::min(top_k, n);
    std::vector<bool> is_kept(n, false);
    for (std::size_t r = 0; r < kept; ++r) is_kept[order[r]] = true;

    for (std::size_t r = 0; r < kept; ++r) {
        const SectorId& s = report.sectors[order[r]];
        graph.nodes.push_back({"impact:" + s.code, s.name, SankeyNode::Stage::ImpactedSector});
    }
    const bool has_other = kept < n;
    if (has_other) {
        graph.nodes.push_back({kOtherNodeId, "Other sectors", SankeyNode::Stage::ImpactedSector});
    }

    // Links: program -> target carries the direct shock.
    for (const auto& p : report.per_program) {
        if (p.shock != 0.0) {
            graph.links.push_back({"program:" + p.name, "target:" + p.target_sector, p.shock});
        }
    }

    // Links: target -> impacted carries per-sector deltas summed over the
    // programs sharing that target.
    for (const auto& target : target_codes) {
        std::vector<double> delta(n, 0.0);
        for (const auto& p : report.per_program) {
            if (p.target_sector != target) continue;
            for (std::size_t j = 0; j < n; ++j) delta[j] += p.per_sector_delta[j];
        }
        for (std::size_t r = 0; r < kept; ++r) {
            const std::size_t j = order[r];
            if (delta[j] != 0.0) {
                graph.links.push_back(
                    {"target:" + target, "impact:" + report.sectors[j].code, delta[j]});
            }
        }
        if (has_other) {
            double other = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (!is_kept[j]) other += delta[j];
            }
            if (other != 0.0) {
                graph.links.push_back({"target:" + target, kOtherNodeId, other});
            }
        }
    }
    return graph;
}

}  // namespace ioimpact
