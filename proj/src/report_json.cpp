#include "ioimpact/report_json.hpp"

#include "ioimpact/errors.hpp"

namespace ioimpact {

namespace {

// Flag text carried by every report that contains Ghosh-propagated results.
const char* kSupplySideCaveat =
    "supply-side (Ghosh) results are indicative upper bounds, not point forecasts";

std::string horizon_note(int years) {
    if (years == 1) return "over the next year";
    return "over the next " + std::to_string(years) + " years";
}

ordered_json totals_json(const ImpactTotals& t) {
    return ordered_json{{"direct", t.direct},
                        {"upstream", t.upstream},
                        {"downstream", t.downstream},
                        {"grand_total", t.grand_total}};
}

}  // namespace

ordered_json to_json(const ValidationReport& report) {
    ordered_json findings = ordered_json::array();
    for (const auto& f : report.findings) {
        findings.push_back({{"sector", f.sector_code},
                            {"kind", f.kind == ValidationFinding::Kind::Row ? "row" : "column"},
                            {"imbalance", f.imbalance},
                            {"tolerance", f.tolerance}});
    }
    return ordered_json{
        {"balanced", report.is_balanced()},
        {"rel_tol", report.rel_tol},
        {"findings", std::move(findings)},
    };
}

ordered_json to_json(const ImpactReport& report) {
    ordered_json programs = ordered_json::array();
    for (const auto& p : report.per_program) {
        ordered_json pj{
            {"name", p.name},
            {"model_side", std::string(model_side_name(p.side))},
            {"target_sector", p.target_sector},
            {"budget", p.budget},
            {"horizon_years", p.horizon_years},
            {"horizon_note", horizon_note(p.horizon_years)},
            {"shock", p.shock},
        };
        if (p.subsidy_derivation) {
            pj["subsidy_derivation"] = {
                {"households", p.subsidy_derivation->households},
                {"induced_household_spend", p.subsidy_derivation->induced_household_spend},
                {"total_demand", p.subsidy_derivation->total_demand},
            };
            if (p.paper_reported) {
                pj["subsidy_derivation"]["paper_reported"] = {
                    {"households", p.paper_reported->households},
                    {"induced_household_spend", p.paper_reported->induced_household_spend},
                    {"total_demand", p.paper_reported->total_demand},
                };
            }
        }
        pj["total_impact"] = p.total_impact;
        pj["keynesian_multiplier"] = p.keynesian_multiplier;
        pj["multiplier_vs_shock"] = p.multiplier_vs_shock;
        if (report.gdp_denominator > 0.0) {
            pj["gdp_share_pct"] = 100.0 * p.total_impact / report.gdp_denominator;
        }
        ordered_json deltas = ordered_json::array();
        for (std::size_t j = 0; j < report.sectors.size(); ++j) {
            deltas.push_back(
                {{"sector", report.sectors[j].code}, {"delta", p.per_sector_delta[j]}});
        }
        pj["per_sector_delta"] = std::move(deltas);
        programs.push_back(std::move(pj));
    }

    ordered_json sectors = ordered_json::array();
    for (const auto& s : report.sectors) sectors.push_back(s.code);

    ordered_json notes = ordered_json::array();
    if (report.has_supply_side) notes.push_back(kSupplySideCaveat);

    return ordered_json{
        {"currency_unit", report.currency_unit},
        {"gdp_denominator", report.gdp_denominator},
        {"sectors", std::move(sectors)},
        {"programs", std::move(programs)},
        {"totals", totals_json(report.totals)},
        {"gdp_shares_pct", totals_json(report.gdp_shares)},
        {"package_multiplier_vs_budget", report.package_multiplier_vs_budget},
        {"package_multiplier_vs_direct", report.package_multiplier_vs_direct},
        {"notes", std::move(notes)},
    };
}

ordered_json to_json(const SankeyGraph& graph) {
    ordered_json nodes = ordered_json::array();
    for (const auto& n : graph.nodes) {
        nodes.push_back({{"id", n.id},
                         {"label", n.label},
                         {"stage", std::string(sankey_stage_name(n.stage))}});
    }
    ordered_json links = ordered_json::array();
    for (const auto& l : graph.links) {
        links.push_back({{"source", l.source}, {"target", l.target}, {"value", l.value}});
    }
    return ordered_json{{"nodes", std::move(nodes)}, {"links", std::move(links)}};
}

ordered_json allocation_to_json(const std::vector<StateRecord>& records) {
    ordered_json doc;
    doc["n_states"] = records.size();

    for (StateMetric m :
         {StateMetric::BeadPerUnconnectedHousehold, StateMetric::AcpEnrollmentRate}) {
        Ranking ranking = rank_states(records, m);
        ordered_json rows = ordered_json::array();
        for (const auto& r : ranking.ranked) {
            rows.push_back({{"state", r.state}, {"value", r.value}, {"rank", r.rank}});
        }
        ordered_json entry{{"ranked", std::move(rows)}};
        entry["excluded"] = ranking.excluded;
        doc[std::string(state_metric_name(m)) + "_ranking"] = std::move(entry);
    }

    try {
        doc["spearman_allocation_vs_enrollment"] = rank_correlation(
            records, StateMetric::BeadPerUnconnectedHousehold, StateMetric::AcpEnrollmentRate);
    } catch (const InsufficientDataError& e) {
        doc["spearman_allocation_vs_enrollment"] = nullptr;
        doc["spearman_note"] = e.what();
    }
    return doc;
}

}  // namespace ioimpact
