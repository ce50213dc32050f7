#include "ioimpact/scenario.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <utility>

#include "json.hpp"

#include "ioimpact/errors.hpp"

namespace ioimpact {

namespace {

using nlohmann::json;

void check_subsidy_rule(const SubsidyRule& rule) {
    if (!(rule.monthly_subsidy > 0.0) || !(rule.monthly_subsidy <= rule.market_price)) {
        throw ValueError("subsidy rule needs 0 < monthly_subsidy <= market_price, got " +
                         format_double(rule.monthly_subsidy) + " / " +
                         format_double(rule.market_price));
    }
    if (rule.program_years < 1) {
        throw ValueError("subsidy program_years must be >= 1");
    }
}

// Published figures apply only to the ACP parameter set they were derived
// from.
bool matches_acp_parameters(const Program& p) {
    if (!p.subsidy) return false;
    return std::abs(p.budget - 14.2e9) <= 0.005 * 14.2e9 &&
           std::abs(p.subsidy->monthly_subsidy - 30.0) < 1e-9 &&
           std::abs(p.subsidy->market_price - 61.0) < 1e-9;
}

double shock_amount(const Program& p) {
    return p.subsidy ? derive_subsidy_demand(*p.subsidy, p.budget).total_demand : p.budget;
}

}  // namespace

std::string_view model_side_name(ModelSide side) {
    return side == ModelSide::Demand ? "demand" : "supply";
}

SubsidyDerivation derive_subsidy_demand(const SubsidyRule& rule, double budget) {
    check_subsidy_rule(rule);
    if (!(budget > 0.0)) {
        throw ValueError("subsidy budget must be positive, got " + format_double(budget));
    }
    SubsidyDerivation d;
    d.households = budget / (rule.monthly_subsidy * 12.0);
    d.induced_household_spend = d.households * (rule.market_price - rule.monthly_subsidy) * 12.0;
    d.total_demand = budget + d.induced_household_spend;
    return d;
}

Vector program_shock_vector(const Program& p, const IoTable& t) {
    const std::size_t idx = t.require_index(p.target_sector);
    Vector shock(t.size());
    shock[idx] = shock_amount(p);
    return shock;
}

double keynesian_multiplier(double total_impact, double budget) {
    if (budget == 0.0) {
        throw ValueError("multiplier denominator (budget) must be nonzero");
    }
    return total_impact / budget;
}

double gdp_share(double amount, const Scenario& s) {
    if (!(s.gdp_denominator > 0.0)) {
        throw ValueError("gdp_denominator must be positive, got " +
                         format_double(s.gdp_denominator));
    }
    return 100.0 * amount / s.gdp_denominator;
}

ImpactReport evaluate_scenario(const Scenario& s, const DemandModel& dm, const SupplyModel& sm,
                               const ScenarioOptions& opts) {
    if (dm.table_ptr().get() != sm.table_ptr().get()) {
        throw ModelMismatchError("demand and supply models derive from different tables");
    }
    std::set<std::string> names;
    for (const auto& p : s.programs) {
        if (!names.insert(p.name).second) {
            throw ValueError("duplicate program name '" + p.name + "'");
        }
        if (!(p.budget > 0.0)) {
            throw ValueError("program '" + p.name + "' budget must be positive");
        }
        if (p.horizon_years < 1) {
            throw ValueError("program '" + p.name + "' horizon_years must be >= 1");
        }
    }

    const IoTable& table = dm.table();
    ImpactReport report;
    report.sectors = table.sectors();
    report.currency_unit = table.currency_unit();
    report.gdp_denominator = s.gdp_denominator;

    double budget_sum = 0.0;
    for (const auto& p : s.programs) {
        const Vector shock_vec = program_shock_vector(p, table);

        ProgramImpact impact;
        impact.name = p.name;
        impact.side = p.side;
        impact.target_sector = p.target_sector;
        impact.budget = p.budget;
        impact.horizon_years = p.horizon_years;
        if (p.subsidy) {
            impact.subsidy_derivation = derive_subsidy_demand(*p.subsidy, p.budget);
            if (opts.paper_rounding && matches_acp_parameters(p)) {
                impact.paper_reported = AcpPublishedFigures{};
            }
        }
        impact.per_sector_delta =
            p.side == ModelSide::Demand ? dm.propagate(shock_vec) : sm.propagate(shock_vec);
        impact.shock = shock_vec.sum();
        impact.total_impact = impact.per_sector_delta.sum();
        impact.keynesian_multiplier = keynesian_multiplier(impact.total_impact, p.budget);
        impact.multiplier_vs_shock = impact.total_impact / impact.shock;

        const double indirect = impact.total_impact - impact.shock;
        const bool demand_is_upstream = opts.labeling == IndirectLabeling::DemandUpstream;
        if ((p.side == ModelSide::Demand) == demand_is_upstream) {
            report.totals.upstream += indirect;
        } else {
            report.totals.downstream += indirect;
        }
        report.totals.direct += impact.shock;
        report.totals.grand_total += impact.total_impact;
        report.has_supply_side = report.has_supply_side || p.side == ModelSide::Supply;
        budget_sum += p.budget;

        report.per_program.push_back(std::move(impact));
    }

    if (s.gdp_denominator > 0.0) {
        report.gdp_shares.direct = gdp_share(report.totals.direct, s);
        report.gdp_shares.upstream = gdp_share(report.totals.upstream, s);
        report.gdp_shares.downstream = gdp_share(report.totals.downstream, s);
        report.gdp_shares.grand_total = gdp_share(report.totals.grand_total, s);
    }
    if (budget_sum > 0.0) {
        report.package_multiplier_vs_budget = report.totals.grand_total / budget_sum;
    }
    if (report.totals.direct > 0.0) {
        report.package_multiplier_vs_direct = report.totals.grand_total / report.totals.direct;
    }
    return report;
}

namespace {

const json& require_field(const json& j, const char* field, const char* where) {
    auto it = j.find(field);
    if (it == j.end()) {
        throw SchemaError("scenario " + std::string(where) + " is missing field '" + field + "'");
    }
    return *it;
}

double require_number(const json& j, const char* field, const char* where) {
    const json& value = require_field(j, field, where);
    if (!value.is_number()) {
        throw SchemaError("scenario field '" + std::string(field) + "' must be a number");
    }
    return value.get<double>();
}

}  // namespace

Scenario load_scenario(std::istream& is) {
    json doc;
    try {
        doc = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("scenario document must be a JSON object");

    Scenario s;
    s.gdp_denominator = require_number(doc, "gdp_denominator", "document");
    if (!(s.gdp_denominator > 0.0)) {
        throw SchemaError("gdp_denominator must be positive");
    }
    const json& programs = require_field(doc, "programs", "document");
    if (!programs.is_array()) throw SchemaError("'programs' must be an array");

    std::set<std::string> names;
    for (const json& pj : programs) {
        if (!pj.is_object()) throw SchemaError("each program must be a JSON object");
        Program p;
        const json& name = require_field(pj, "name", "program");
        if (!name.is_string() || name.get<std::string>().empty()) {
            throw SchemaError("program 'name' must be a non-empty string");
        }
        p.name = name.get<std::string>();
        if (!names.insert(p.name).second) {
            throw SchemaError("duplicate program name '" + p.name + "'");
        }
        p.budget = require_number(pj, "budget", p.name.c_str());
        if (!(p.budget > 0.0)) {
            throw SchemaError("program '" + p.name + "' budget must be positive");
        }
        const json& sector = require_field(pj, "target_sector", p.name.c_str());
        if (!sector.is_string()) throw SchemaError("'target_sector' must be a string");
        p.target_sector = sector.get<std::string>();

        const json& side = require_field(pj, "model_side", p.name.c_str());
        const std::string side_str = side.is_string() ? side.get<std::string>() : "";
        if (side_str == "demand") {
            p.side = ModelSide::Demand;
        } else if (side_str == "supply") {
            p.side = ModelSide::Supply;
        } else {
            throw SchemaError("program '" + p.name + "' model_side must be 'demand' or 'supply'");
        }

        if (auto it = pj.find("horizon_years"); it != pj.end() && !it->is_null()) {
            if (!it->is_number_integer() || it->get<int>() < 1) {
                throw SchemaError("program '" + p.name + "' horizon_years must be an integer >= 1");
            }
            p.horizon_years = it->get<int>();
        }

        if (auto it = pj.find("subsidy"); it != pj.end() && !it->is_null()) {
            if (!it->is_object()) throw SchemaError("'subsidy' must be an object or null");
            SubsidyRule rule;
            auto read = [&](const char* field, auto& dest) {
                auto f = it->find(field);
                if (f == it->end()) return;
                if (!f->is_number()) {
                    throw SchemaError("program '" + p.name + "' subsidy field '" + field +
                                      "' must be a number");
                }
                dest = f->get<std::decay_t<decltype(dest)>>();
            };
            read("monthly_subsidy", rule.monthly_subsidy);
            read("market_price", rule.market_price);
            read("program_years", rule.program_years);
            try {
                check_subsidy_rule(rule);
            } catch (const ValueError& e) {
                throw SchemaError("program '" + p.name + "': " + e.what());
            }
            p.subsidy = rule;
        }
        s.programs.push_back(std::move(p));
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open scenario file '" + path + "'");
    return load_scenario(is);
}

}  // namespace ioimpact
