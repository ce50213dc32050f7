#include "ioimpact/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <ostream>

#include <unistd.h>

#include "CLI11.hpp"

#include "ioimpact/allocation.hpp"
#include "ioimpact/demand_model.hpp"
#include "ioimpact/errors.hpp"
#include "ioimpact/io_table.hpp"
#include "ioimpact/report_json.hpp"
#include "ioimpact/sankey.hpp"
#include "ioimpact/scenario.hpp"
#include "ioimpact/supply_model.hpp"

namespace ioimpact {

namespace {

struct Style {
    bool enabled = false;
    const char* green() const { return enabled ? "\x1b[32m" : ""; }
    const char* red() const { return enabled ? "\x1b[31m" : ""; }
    const char* bold() const { return enabled ? "\x1b[1m" : ""; }
    const char* reset() const { return enabled ? "\x1b[0m" : ""; }
};

Style make_style(const std::ostream& err) {
    Style style;
    style.enabled = &err == &std::cerr && std::getenv("IO_IMPACT_NO_COLOR") == nullptr &&
                    isatty(STDERR_FILENO) == 1;
    return style;
}

// 6 significant digits for human summaries; JSON/CSV carry full precision.
std::string human(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct TableArgs {
    std::string flows;
    std::string vectors;
    std::string unit = "USD_millions";
    double rel_tol = 1e-6;
    bool clamp = false;
};

void add_table_options(CLI::App* cmd, TableArgs& t) {
    cmd->add_option("--flows", t.flows, "inter-industry flows CSV")->required();
    cmd->add_option("--vectors", t.vectors, "per-sector final_demand/value_added/total_output CSV")
        ->required();
    cmd->add_option("--unit", t.unit, "currency unit label")->capture_default_str();
    cmd->add_option("--rel-tol", t.rel_tol, "relative balance tolerance")->capture_default_str();
    cmd->add_flag("--clamp-negative-flows", t.clamp,
                  "zero out negative flows instead of rejecting the table");
}

IoTable load_from(const TableArgs& t, std::ostream& err) {
    std::vector<std::string> notes;
    LoadOptions opts;
    opts.clamp_negative_flows = t.clamp;
    opts.currency_unit = t.unit;
    IoTable table = load_table_files(t.flows, t.vectors, opts, &notes);
    for (const auto& note : notes) err << "note: " << note << '\n';
    return table;
}

void require_balanced(const IoTable& table, double rel_tol) {
    const ValidationReport report = validate(table, rel_tol);
    if (!report.is_balanced()) {
        throw ValueError("table is not balanced (" + std::to_string(report.findings.size()) +
                         " finding(s) at rel tol " + format_double(rel_tol) +
                         "); run the validate subcommand for details");
    }
}

int cmd_validate(const TableArgs& targs, std::ostream& out, std::ostream& err,
                 const Style& style) {
    const IoTable table = load_from(targs, err);
    const ValidationReport report = validate(table, targs.rel_tol);
    out << to_json(report).dump(2) << '\n';
    if (report.is_balanced()) {
        err << style.green() << "balanced: true" << style.reset() << '\n';
    } else {
        err << style.red() << "balanced: false (" << report.findings.size() << " finding(s))"
            << style.reset() << '\n';
    }
    return 0;
}

int cmd_coefficients(const TableArgs& targs, const std::string& side, const std::string& matrix,
                     std::ostream& out, std::ostream& err) {
    auto table = std::make_shared<const IoTable>(load_from(targs, err));
    require_balanced(*table, targs.rel_tol);

    const bool want_coefficients = matrix == "coefficients" || matrix == "both";
    const bool want_inverse = matrix == "inverse" || matrix == "both";
    if (side == "demand") {
        const DemandModel dm = build_demand_model(table);
        if (want_coefficients) write_matrix_csv(out, table->sectors(), dm.technical_coefficients());
        if (want_coefficients && want_inverse) out << '\n';
        if (want_inverse) write_matrix_csv(out, table->sectors(), dm.leontief_inverse());
    } else {
        const SupplyModel sm = build_supply_model(table);
        if (want_coefficients) write_matrix_csv(out, table->sectors(), sm.allocation_coefficients());
        if (want_coefficients && want_inverse) out << '\n';
        if (want_inverse) write_matrix_csv(out, table->sectors(), sm.ghosh_inverse());
    }
    return 0;
}

int cmd_shock(const TableArgs& targs, const std::string& side, const std::string& sector,
              double amount, std::ostream& out, std::ostream& err, const Style& style) {
    auto table = std::make_shared<const IoTable>(load_from(targs, err));
    require_balanced(*table, targs.rel_tol);

    const std::size_t idx = table->require_index(sector);
    Vector shock(table->size());
    shock[idx] = amount;

    Vector delta;
    double multiplier = 0.0;
    if (side == "demand") {
        const DemandModel dm = build_demand_model(table);
        delta = dm.propagate(shock);
        multiplier = dm.output_multiplier(sector);
    } else {
        const SupplyModel sm = build_supply_model(table);
        delta = sm.propagate(shock);
        multiplier = sm.output_multiplier(sector);
    }

    out << "sector,delta\n";
    for (std::size_t i = 0; i < table->size(); ++i) {
        out << table->sectors()[i].code << ',' << format_double(delta[i]) << '\n';
    }
    err << style.bold() << "total impact: " << human(delta.sum()) << ' ' << table->currency_unit()
        << style.reset() << '\n';
    err << "sector output multiplier (" << side << " side): " << human(multiplier) << '\n';
    if (side == "supply") {
        err << "note: supply-side (Ghosh) results are indicative upper bounds\n";
    }
    return 0;
}

struct ScenarioArgs {
    std::string scenario_path;
    bool paper_rounding = false;
    bool swap_labels = false;
};

ImpactReport run_scenario(const TableArgs& targs, const ScenarioArgs& sargs, std::ostream& err) {
    auto table = std::make_shared<const IoTable>(load_from(targs, err));
    require_balanced(*table, targs.rel_tol);
    const Scenario scenario = load_scenario_file(sargs.scenario_path);
    const DemandModel dm = build_demand_model(table);
    const SupplyModel sm = build_supply_model(table);
    ScenarioOptions opts;
    opts.paper_rounding = sargs.paper_rounding;
    opts.labeling = sargs.swap_labels ? IndirectLabeling::DemandDownstream
                                      : IndirectLabeling::DemandUpstream;
    return evaluate_scenario(scenario, dm, sm, opts);
}

int cmd_scenario(const TableArgs& targs, const ScenarioArgs& sargs, std::ostream& out,
                 std::ostream& err, const Style& style) {
    const ImpactReport report = run_scenario(targs, sargs, err);
    out << to_json(report).dump(2) << '\n';
    err << style.bold() << "grand total: " << human(report.totals.grand_total) << ' '
        << report.currency_unit << " (multiplier vs budget "
        << human(report.package_multiplier_vs_budget) << ")" << style.reset() << '\n';
    for (const auto& p : report.per_program) {
        err << "  " << p.name << ": impact " << human(p.total_impact) << ", multiplier "
            << human(p.keynesian_multiplier) << '\n';
    }
    return 0;
}

int cmd_sankey(const TableArgs& targs, const ScenarioArgs& sargs, std::size_t top_k,
               std::ostream& out, std::ostream& err) {
    const ImpactReport report = run_scenario(targs, sargs, err);
    const SankeyGraph graph = emit_sankey(report, top_k);
    out << to_json(graph).dump(2) << '\n';
    return 0;
}

int cmd_allocation(const std::string& states_path, const std::string& format, std::ostream& out,
                   std::ostream& err) {
    const std::vector<StateRecord> records = load_state_records_file(states_path);
    if (format == "json") {
        out << allocation_to_json(records).dump(2) << '\n';
        return 0;
    }

    const Ranking by_allocation = rank_states(records, StateMetric::BeadPerUnconnectedHousehold);
    const Ranking by_rate = rank_states(records, StateMetric::AcpEnrollmentRate);
    auto rank_of = [](const Ranking& ranking, const std::string& state) -> std::string {
        for (const auto& r : ranking.ranked) {
            if (r.state == state) return std::to_string(r.rank);
        }
        return "";
    };
    auto value_of = [](const Ranking& ranking, const std::string& state) -> std::string {
        for (const auto& r : ranking.ranked) {
            if (r.state == state) return format_double(r.value);
        }
        return "";
    };
    out << "state,bead_allocation,unconnected_households,acp_enrolled_households,"
           "total_households,per_household_allocation,enrollment_rate_pct,"
           "rank_per_household_allocation,rank_enrollment_rate\n";
    for (const auto& r : records) {
        out << r.state << ',' << format_double(r.bead_allocation) << ','
            << r.unconnected_households << ',' << r.acp_enrolled_households << ','
            << r.total_households << ',' << value_of(by_allocation, r.state) << ','
            << value_of(by_rate, r.state) << ',' << rank_of(by_allocation, r.state) << ','
            << rank_of(by_rate, r.state) << '\n';
    }
    try {
        const double rho = rank_correlation(records, StateMetric::BeadPerUnconnectedHousehold,
                                            StateMetric::AcpEnrollmentRate);
        err << "spearman allocation-vs-enrollment: " << human(rho) << '\n';
    } catch (const InsufficientDataError& e) {
        err << "spearman allocation-vs-enrollment: n/a (" << e.what() << ")\n";
    }
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    const Style style = make_style(err);

    CLI::App app{"Input-output macroeconomic impact modeling"};
    app.name("io-impact");
    app.require_subcommand(1);

    TableArgs targs;

    auto* validate_cmd = app.add_subcommand("validate", "check row/column balance identities");
    add_table_options(validate_cmd, targs);

    auto* coeff_cmd =
        app.add_subcommand("coefficients", "emit coefficient and inverse matrices as CSV");
    add_table_options(coeff_cmd, targs);
    std::string coeff_side = "demand";
    std::string coeff_matrix = "both";
    coeff_cmd->add_option("--side", coeff_side, "model side")
        ->check(CLI::IsMember({"demand", "supply"}))
        ->capture_default_str();
    coeff_cmd->add_option("--matrix", coeff_matrix, "which matrices to emit")
        ->check(CLI::IsMember({"coefficients", "inverse", "both"}))
        ->capture_default_str();

    auto* shock_cmd =
        app.add_subcommand("shock", "propagate a single-sector shock and emit per-sector deltas");
    add_table_options(shock_cmd, targs);
    std::string shock_side;
    std::string shock_sector;
    double shock_amount = 0.0;
    shock_cmd->add_option("--side", shock_side, "demand (final-demand) or supply (value-added)")
        ->check(CLI::IsMember({"demand", "supply"}))
        ->required();
    shock_cmd->add_option("--sector", shock_sector, "target sector code")->required();
    shock_cmd->add_option("--amount", shock_amount, "shock size in table currency units")
        ->required();

    auto* scenario_cmd =
        app.add_subcommand("scenario", "evaluate an investment-program package (JSON report)");
    add_table_options(scenario_cmd, targs);
    ScenarioArgs sargs;
    scenario_cmd->add_option("--scenario", sargs.scenario_path, "scenario JSON file")->required();
    scenario_cmd->add_flag("--paper-rounding", sargs.paper_rounding,
                           "annotate matching subsidy programs with published rounded figures");
    scenario_cmd->add_flag("--swap-indirect-labels", sargs.swap_labels,
                           "label demand-side indirect effects as downstream instead of upstream");

    auto* allocation_cmd =
        app.add_subcommand("allocation", "state-level allocation-vs-need rankings and correlation");
    std::string states_path;
    std::string alloc_format = "json";
    allocation_cmd->add_option("--states", states_path, "state records CSV")->required();
    allocation_cmd->add_option("--format", alloc_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    auto* sankey_cmd =
        app.add_subcommand("sankey", "emit program->sector flow graph JSON for a scenario");
    add_table_options(sankey_cmd, targs);
    std::size_t top_k = 10;
    sankey_cmd->add_option("--scenario", sargs.scenario_path, "scenario JSON file")->required();
    sankey_cmd->add_option("--top-k", top_k, "impacted sectors to keep before collapsing")
        ->capture_default_str();
    sankey_cmd->add_flag("--paper-rounding", sargs.paper_rounding)->group("");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << style.red() << "usage error: " << e.what() << style.reset() << "\n\n";
        err << app.help();
        return 2;
    }

    try {
        if (app.got_subcommand(validate_cmd)) {
            return cmd_validate(targs, out, err, style);
        }
        if (app.got_subcommand(coeff_cmd)) {
            return cmd_coefficients(targs, coeff_side, coeff_matrix, out, err);
        }
        if (app.got_subcommand(shock_cmd)) {
            return cmd_shock(targs, shock_side, shock_sector, shock_amount, out, err, style);
        }
        if (app.got_subcommand(scenario_cmd)) {
            return cmd_scenario(targs, sargs, out, err, style);
        }
        if (app.got_subcommand(allocation_cmd)) {
            return cmd_allocation(states_path, alloc_format, out, err);
        }
        if (app.got_subcommand(sankey_cmd)) {
            return cmd_sankey(targs, sargs, top_k, out, err);
        }
        err << "usage error: no subcommand selected\n";
        return 2;
    } catch (const Error& e) {
        err << style.red() << e.kind() << style.reset() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << style.red() << "error" << style.reset() << ": " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ioimpact
