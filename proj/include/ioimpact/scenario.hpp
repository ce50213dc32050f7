#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ioimpact/demand_model.hpp"
#include "ioimpact/io_table.hpp"
#include "ioimpact/supply_model.hpp"

namespace ioimpact {

enum class ModelSide { Demand, Supply };

std::string_view model_side_name(ModelSide side);  // "demand" / "supply"

// Per-household broadband subsidy: the public budget buys subsidized months,
// and each subsidized household co-pays the market-price gap out of pocket.
struct SubsidyRule {
    double monthly_subsidy = 30.0;  // currency per household per month
    double market_price = 61.0;     // currency per household per month
    int program_years = 1;
};

struct Program {
    std::string name;
    double budget = 0.0;
    std::string target_sector;
    ModelSide side = ModelSide::Demand;
    std::optional<SubsidyRule> subsidy;
    int horizon_years = 1;  // report annotation only; the model is static
};

struct Scenario {
    std::vector<Program> programs;
    // Annual GDP used for percentage figures. Required input: no default.
    double gdp_denominator = 0.0;
};

struct SubsidyDerivation {
    double households = 0.0;               // budget / (monthly_subsidy * 12)
    double induced_household_spend = 0.0;  // households * co-pay * 12
    double total_demand = 0.0;             // budget + induced spend
};

SubsidyDerivation derive_subsidy_demand(const SubsidyRule& rule, double budget);

// The published ACP constants; attached to reports as annotation when
// paper-rounding output is requested and the program inputs match. They are
// rounded figures and do not follow from the formula exactly.
struct AcpPublishedFigures {
    double households = 39.4e6;
    double induced_household_spend = 14.9e9;
    double total_demand = 29.1e9;
};

// Shock concentrated on the program's target sector: the budget, or the
// derived subsidy total for subsidized programs. Read as delta-F for
// demand-side programs and delta-v for supply-side ones.
Vector program_shock_vector(const Program& p, const IoTable& t);

// total_impact / budget. The conventional report ratio: for subsidized
// programs the denominator stays the public budget, not the derived shock.
double keynesian_multiplier(double total_impact, double budget);

double gdp_share(double amount, const Scenario& s);  // percent

enum class IndirectLabeling {
    DemandUpstream,    // Leontief indirect = upstream, Ghosh = downstream (default)
    DemandDownstream,  // swapped
};

struct ScenarioOptions {
    IndirectLabeling labeling = IndirectLabeling::DemandUpstream;
    // Attach the published ACP constants next to matching subsidy blocks.
    bool paper_rounding = false;
};

struct ProgramImpact {
    std::string name;
    ModelSide side = ModelSide::Demand;
    std::string target_sector;
    double budget = 0.0;
    int horizon_years = 1;
    double shock = 0.0;
    std::optional<SubsidyDerivation> subsidy_derivation;
    std::optional<AcpPublishedFigures> paper_reported;
    double total_impact = 0.0;
    double keynesian_multiplier = 0.0;  // vs budget
    double multiplier_vs_shock = 0.0;   // vs propagated shock
    Vector per_sector_delta;
};

struct ImpactTotals {
    double direct = 0.0;
    double upstream = 0.0;
    double downstream = 0.0;
    double grand_total = 0.0;
};

struct ImpactReport {
    std::vector<SectorId> sectors;
    std::string currency_unit;
    double gdp_denominator = 0.0;
    std::vector<ProgramImpact> per_program;
    ImpactTotals totals;
    ImpactTotals gdp_shares;  // percent of gdp_denominator
    double package_multiplier_vs_budget = 0.0;
    double package_multiplier_vs_direct = 0.0;
    bool has_supply_side = false;
};

// Routes every program through its designated model side and assembles the
// per-program and package statistics. Both models must be built from the
// same IoTable object.
ImpactReport evaluate_scenario(const Scenario& s, const DemandModel& dm, const SupplyModel& sm,
                               const ScenarioOptions& opts = {});

// Scenario JSON document:
// { "gdp_denominator": number,
//   "programs": [ { "name", "budget", "target_sector",
//                   "model_side": "demand"|"supply", "horizon_years",
//                   "subsidy": { "monthly_subsidy", "market_price",
//                                "program_years" } | null } ] }
Scenario load_scenario(std::istream& is);
Scenario load_scenario_file(const std::string& path);

}  // namespace ioimpact
