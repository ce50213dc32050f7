#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ioimpact/cli.hpp"
#include "ioimpact/demand_model.hpp"
#include "ioimpact/io_table.hpp"
#include "ioimpact/report_json.hpp"
#include "ioimpact/sankey.hpp"
#include "ioimpact/scenario.hpp"
#include "ioimpact/supply_model.hpp"
#include "support/test_tables.hpp"

using namespace ioimpact;
using testsupport::toy_table_ptr;

namespace {

const std::string kData = IOIMPACT_DATA_DIR;
const std::string kToyFlows = kData + "/toy_flows.csv";
const std::string kToyVectors = kData + "/toy_vectors.csv";
const std::string kUsFlows = kData + "/us_flows.csv";
const std::string kUsVectors = kData + "/us_vectors.csv";
const std::string kBilScenario = kData + "/bil_example.json";
const std::string kStates = kData + "/states_example.csv";

int run(std::vector<std::string> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int rc = run_cli(std::move(args), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return rc;
}

}  // namespace

TEST_CASE("validate subcommand reports a balanced toy table") {
    std::string out, err;
    const int rc = run({"validate", "--flows", kToyFlows, "--vectors", kToyVectors}, &out, &err);
    CHECK(rc == 0);
    CHECK(out.find("\"balanced\": true") != std::string::npos);
    CHECK(err.find("balanced: true") != std::string::npos);
}

TEST_CASE("unknown subcommand is a usage error") {
    std::string out, err;
    const int rc = run({"frobnicate"}, &out, &err);
    CHECK(rc == 2);
    CHECK(err.find("usage error") != std::string::npos);
    CHECK(err.find("scenario") != std::string::npos);  // grammar listing
}

TEST_CASE("no subcommand is a usage error; --help is not") {
    CHECK(run({}) == 2);
    std::string out;
    CHECK(run({"--help"}, &out) == 0);
    CHECK(out.find("validate") != std::string::npos);
}

TEST_CASE("missing input file is a domain error with the typed name") {
    std::string err;
    const int rc = run({"validate", "--flows", kData + "/nope.csv", "--vectors", kToyVectors},
                       nullptr, &err);
    CHECK(rc == 1);
    CHECK(err.find("ParseError") != std::string::npos);
}

TEST_CASE("coefficients output reloads losslessly") {
    std::string out;
    REQUIRE(run({"coefficients", "--flows", kToyFlows, "--vectors", kToyVectors, "--side",
                 "demand", "--matrix", "both"},
                &out) == 0);
    std::istringstream is(out);
    const auto [codes_a, a] = read_matrix_csv(is);
    const auto [codes_l, l] = read_matrix_csv(is);
    REQUIRE(codes_a == std::vector<std::string>{"agri", "manu"});
    REQUIRE(codes_l == codes_a);

    const DemandModel dm = build_demand_model(toy_table_ptr());
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(a(i, j) == dm.technical_coefficients()(i, j));
            CHECK(l(i, j) == dm.leontief_inverse()(i, j));
        }
    }
}

TEST_CASE("supply coefficients round-trip too") {
    std::string out;
    REQUIRE(run({"coefficients", "--flows", kToyFlows, "--vectors", kToyVectors, "--side",
                 "supply", "--matrix", "inverse"},
                &out) == 0);
    std::istringstream is(out);
    const auto [codes, g] = read_matrix_csv(is);
    const SupplyModel sm = build_supply_model(toy_table_ptr());
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) CHECK(g(i, j) == sm.ghosh_inverse()(i, j));
    }
}

TEST_CASE("shock subcommand emits per-sector deltas") {
    std::string out, err;
    REQUIRE(run({"shock", "--flows", kToyFlows, "--vectors", kToyVectors, "--side", "demand",
                 "--sector", "manu", "--amount", "100"},
                &out, &err) == 0);
    const DemandModel dm = build_demand_model(toy_table_ptr());
    const Vector expected = dm.propagate(Vector{0.0, 100.0});

    std::istringstream is(out);
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "sector,delta");
    std::size_t i = 0;
    while (std::getline(is, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        CHECK(std::stod(line.substr(comma + 1)) == doctest::Approx(expected[i]).epsilon(1e-15));
        ++i;
    }
    CHECK(i == 2);
    CHECK(err.find("total impact") != std::string::npos);
}

TEST_CASE("shock on the supply side carries the indicative-upper-bound note") {
    std::string err;
    REQUIRE(run({"shock", "--flows", kToyFlows, "--vectors", kToyVectors, "--side", "supply",
                 "--sector", "agri", "--amount", "50"},
                nullptr, &err) == 0);
    CHECK(err.find("indicative upper bounds") != std::string::npos);
}

TEST_CASE("scenario subcommand end-to-end on the bundled example") {
    std::string out, err;
    const int rc = run({"scenario", "--flows", kUsFlows, "--vectors", kUsVectors, "--unit", "USD",
                        "--scenario", kBilScenario},
                       &out, &err);
    REQUIRE(rc == 0);
    const auto doc = nlohmann::json::parse(out);
    REQUIRE(doc.at("programs").size() == 3);
    CHECK(doc.at("programs")[0].at("name") == "BEAD");
    CHECK(doc.at("programs")[1].at("name") == "ACP");
    CHECK(doc.at("currency_unit") == "USD");
    for (const auto& p : doc.at("programs")) {
        CHECK(p.at("keynesian_multiplier").get<double>() > 1.0);
    }
    // ACP derivation block present with the formula values.
    const auto& acp = doc.at("programs")[1];
    CHECK(acp.at("subsidy_derivation").at("households").get<double>() ==
          doctest::Approx(14.2e9 / 360.0).epsilon(1e-12));
    CHECK_FALSE(acp.at("subsidy_derivation").contains("paper_reported"));
    // Ghosh caveat note present (BEAD/TBCP are supply side).
    CHECK(doc.at("notes").size() == 1);
}

TEST_CASE("scenario runs are byte-identical") {
    std::string first, second;
    REQUIRE(run({"scenario", "--flows", kUsFlows, "--vectors", kUsVectors, "--scenario",
                 kBilScenario},
                &first) == 0);
    REQUIRE(run({"scenario", "--flows", kUsFlows, "--vectors", kUsVectors, "--scenario",
                 kBilScenario},
                &second) == 0);
    CHECK(first == second);
}

TEST_CASE("scenario --paper-rounding annotates the matching subsidy program") {
    std::string out;
    REQUIRE(run({"scenario", "--flows", kUsFlows, "--vectors", kUsVectors, "--scenario",
                 kBilScenario, "--paper-rounding"},
                &out) == 0);
    const auto doc = nlohmann::json::parse(out);
    const auto& acp = doc.at("programs")[1];
    REQUIRE(acp.at("subsidy_derivation").contains("paper_reported"));
    CHECK(acp.at("subsidy_derivation").at("paper_reported").at("total_demand").get<double>() ==
          29.1e9);
}

TEST_CASE("allocation subcommand json output") {
    std::string out;
    REQUIRE(run({"allocation", "--states", kStates}, &out) == 0);
    const auto doc = nlohmann::json::parse(out);
    const auto& ranking = doc.at("bead_per_unconnected_household_ranking");
    CHECK(ranking.at("ranked")[0].at("state") == "AK");
    CHECK(ranking.at("ranked")[0].at("value").get<double>() == 38802.0);
    REQUIRE(ranking.at("excluded").size() == 1);
    CHECK(ranking.at("excluded")[0] == "DC");
    const double rho = doc.at("spearman_allocation_vs_enrollment").get<double>();
    CHECK(rho >= -1.0);
    CHECK(rho <= 1.0);
    // The bundled example encodes the inverse funding/enrollment pattern.
    CHECK(rho < 0.0);
}

TEST_CASE("allocation csv output lists every state") {
    std::string out, err;
    REQUIRE(run({"allocation", "--states", kStates, "--format", "csv"}, &out, &err) == 0);
    std::istringstream is(out);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(is, line)) ++lines;
    CHECK(lines == 14);  // header + 13 states
    CHECK(err.find("spearman") != std::string::npos);
}

TEST_CASE("sankey emit: single program keeps every sector when top_k >= n") {
    auto t = toy_table_ptr();
    const DemandModel dm = build_demand_model(t);
    const SupplyModel sm = build_supply_model(t);
    Scenario s;
    s.gdp_denominator = 1.0e6;
    Program p;
    p.name = "P";
    p.budget = 100.0;
    p.target_sector = "manu";
    p.side = ModelSide::Demand;
    s.programs = {p};
    const ImpactReport report = evaluate_scenario(s, dm, sm);

    const SankeyGraph graph = emit_sankey(report, 10);
    std::size_t programs = 0, targets = 0, impacted = 0;
    for (const auto& n : graph.nodes) {
        if (n.stage == SankeyNode::Stage::Program) ++programs;
        if (n.stage == SankeyNode::Stage::TargetSector) ++targets;
        if (n.stage == SankeyNode::Stage::ImpactedSector) ++impacted;
    }
    CHECK(programs == 1);
    CHECK(targets == 1);
    CHECK(impacted == 2);

    double inflow = 0.0, outflow = 0.0;
    for (const auto& l : graph.links) {
        CHECK(l.source != l.target);
        if (l.source.rfind("program:", 0) == 0) inflow += l.value;
        if (l.source.rfind("target:", 0) == 0) outflow += l.value;
    }
    CHECK(inflow == doctest::Approx(report.totals.direct).epsilon(1e-12));
    CHECK(outflow == doctest::Approx(report.per_program[0].total_impact).epsilon(1e-12));

    // Link values match the per-sector deltas exactly.
    for (const auto& l : graph.links) {
        if (l.source.rfind("target:", 0) != 0) continue;
        const std::string code = l.target.substr(std::string("impact:").size());
        const std::size_t j = t->require_index(code);
        CHECK(l.value == report.per_program[0].per_sector_delta[j]);
    }
}

TEST_CASE("sankey emit: top_k = 1 collapses the tail into Other sectors") {
    auto t = toy_table_ptr();
    const DemandModel dm = build_demand_model(t);
    const SupplyModel sm = build_supply_model(t);
    Scenario s;
    s.gdp_denominator = 1.0e6;
    Program p;
    p.name = "P";
    p.budget = 100.0;
    p.target_sector = "manu";
    p.side = ModelSide::Demand;
    s.programs = {p};
    const SankeyGraph graph = emit_sankey(evaluate_scenario(s, dm, sm), 1);

    std::vector<std::string> impacted_ids;
    for (const auto& n : graph.nodes) {
        if (n.stage == SankeyNode::Stage::ImpactedSector) impacted_ids.push_back(n.id);
    }
    REQUIRE(impacted_ids.size() == 2);
    CHECK(impacted_ids[0] == "impact:manu");  // largest delta is the shocked sector
    CHECK(impacted_ids[1] == "impact:__other__");

    // Every link endpoint exists among the nodes.
    for (const auto& l : graph.links) {
        bool src = false, dst = false;
        for (const auto& n : graph.nodes) {
            src = src || n.id == l.source;
            dst = dst || n.id == l.target;
        }
        CHECK(src);
        CHECK(dst);
    }
}

TEST_CASE("sankey subcommand conserves totals") {
    std::string out;
    REQUIRE(run({"sankey", "--flows", kUsFlows, "--vectors", kUsVectors, "--scenario",
                 kBilScenario, "--top-k", "4"},
                &out) == 0);
    const auto doc = nlohmann::json::parse(out);

    double inflow = 0.0, outflow = 0.0;
    for (const auto& l : doc.at("links")) {
        const std::string source = l.at("source").get<std::string>();
        CHECK(l.at("value").get<double>() >= 0.0);
        if (source.rfind("program:", 0) == 0) inflow += l.at("value").get<double>();
        if (source.rfind("target:", 0) == 0) outflow += l.at("value").get<double>();
    }

    std::string report_text;
    REQUIRE(run({"scenario", "--flows", kUsFlows, "--vectors", kUsVectors, "--scenario",
                 kBilScenario},
                &report_text) == 0);
    const auto report = nlohmann::json::parse(report_text);
    const double direct = report.at("totals").at("direct").get<double>();
    const double grand = report.at("totals").at("grand_total").get<double>();
    CHECK(std::abs(inflow - direct) <= 1e-6 * direct);
    CHECK(std::abs(outflow - grand) <= 1e-6 * grand);
}

TEST_CASE("unbalanced table is rejected by model-building subcommands") {
    const auto dir = testsupport::fresh_temp_dir("cli");
    testsupport::write_file(dir, "flows.csv",
                            "sector,a,b\n"
                            "a,10,20\n"
                            "b,30,40\n");
    testsupport::write_file(dir, "vectors.csv",
                            "sector,final_demand,value_added,total_output\n"
                            "a,100,100,200\n"
                            "b,100,100,200\n");
    std::string err;
    const int rc = run({"coefficients", "--flows", (dir / "flows.csv").string(), "--vectors",
                        (dir / "vectors.csv").string()},
                       nullptr, &err);
    CHECK(rc == 1);
    CHECK(err.find("not balanced") != std::string::npos);
}
