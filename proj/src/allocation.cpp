#include "ioimpact/allocation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "ioimpact/errors.hpp"
#include "ioimpact/io_table.hpp"

namespace ioimpact {

namespace {

// Average ranks (1-based) of `values`, ties resolved by average rank.
std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw InsufficientDataError("metric has no variation across records");
    }
    return sxy / std::sqrt(sxx * syy);
}

std::int64_t parse_count(const std::string& field, const std::string& context) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError("cannot parse count '" + field + "' " + context);
    }
    return value;
}

double parse_currency(const std::string& field, const std::string& context) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
        throw ParseError("cannot parse amount '" + field + "' " + context);
    }
    return value;
}

}  // namespace

void check_record(const StateRecord& r) {
    if (r.state.empty()) throw InvalidRecordError("state code must be non-empty");
    if (r.bead_allocation < 0.0) {
        throw InvalidRecordError("state '" + r.state + "' has negative allocation");
    }
    if (r.unconnected_households < 0 || r.acp_enrolled_households < 0 ||
        r.total_households < 0) {
        throw InvalidRecordError("state '" + r.state + "' has a negative household count");
    }
    if (r.acp_enrolled_households > r.total_households) {
        throw InvalidRecordError("state '" + r.state + "' enrollment exceeds total households");
    }
}

double per_household_allocation(const StateRecord& r) {
    check_record(r);
    if (r.unconnected_households == 0) {
        throw NoUnconnectedHouseholdsError("state '" + r.state +
                                           "' has no unconnected households (not applicable)");
    }
    return r.bead_allocation / static_cast<double>(r.unconnected_households);
}

double enrollment_rate(const StateRecord& r) {
    check_record(r);
    if (r.total_households == 0) {
        throw InvalidRecordError("state '" + r.state + "' has zero total households");
    }
    return 100.0 * static_cast<double>(r.acp_enrolled_households) /
           static_cast<double>(r.total_households);
}

std::string_view state_metric_name(StateMetric m) {
    switch (m) {
        case StateMetric::BeadAllocation: return "bead_allocation";
        case StateMetric::BeadPerUnconnectedHousehold: return "bead_per_unconnected_household";
        case StateMetric::AcpEnrollment: return "acp_enrollment";
        case StateMetric::AcpEnrollmentRate: return "acp_enrollment_rate";
    }
    return "unknown";
}

std::optional<double> state_metric_value(const StateRecord& r, StateMetric m) {
    check_record(r);
    switch (m) {
        case StateMetric::BeadAllocation:
            return r.bead_allocation;
        case StateMetric::BeadPerUnconnectedHousehold:
            if (r.unconnected_households == 0) return std::nullopt;
            return r.bead_allocation / static_cast<double>(r.unconnected_households);
        case StateMetric::AcpEnrollment:
            return static_cast<double>(r.acp_enrolled_households);
        case StateMetric::AcpEnrollmentRate:
            if (r.total_households == 0) return std::nullopt;
            return 100.0 * static_cast<double>(r.acp_enrolled_households) /
                   static_cast<double>(r.total_households);
    }
    return std::nullopt;
}

double rank_correlation(const std::vector<StateRecord>& records, StateMetric x_metric,
                        StateMetric y_metric) {
    std::vector<double> xs, ys;
    for (const auto& r : records) {
        const auto xv = state_metric_value(r, x_metric);
        const auto yv = state_metric_value(r, y_metric);
        if (xv && yv) {
            xs.push_back(*xv);
            ys.push_back(*yv);
        }
    }
    if (xs.size() < 3) {
        throw InsufficientDataError("rank correlation needs >= 3 records with both metrics, got " +
                                    std::to_string(xs.size()));
    }
    return pearson(average_ranks(xs), average_ranks(ys));
}

Ranking rank_states(const std::vector<StateRecord>& records, StateMetric m) {
    Ranking ranking;
    ranking.metric = m;
    for (const auto& r : records) {
        if (const auto value = state_metric_value(r, m)) {
            ranking.ranked.push_back({r.state, *value, 0});
        } else {
            ranking.excluded.push_back(r.state);
        }
    }
    std::stable_sort(ranking.ranked.begin(), ranking.ranked.end(),
                     [](const RankedState& a, const RankedState& b) { return a.value > b.value; });
    for (std::size_t i = 0; i < ranking.ranked.size(); ++i) ranking.ranked[i].rank = i + 1;
    return ranking;
}

std::vector<StateRecord> load_state_records(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty states file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string expected =
        "state,bead_allocation,unconnected_households,acp_enrolled_households,total_households";
    if (line != expected) {
        throw SchemaError("states header must be '" + expected + "'");
    }
    std::vector<StateRecord> records;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 5) {
            throw ParseError("states row " + std::to_string(records.size() + 1) + " has " +
                             std::to_string(fields.size()) + " fields, expected 5");
        }
        StateRecord r;
        r.state = fields[0];
        const std::string context = "(state '" + r.state + "')";
        r.bead_allocation = parse_currency(fields[1], context);
        r.unconnected_households = parse_count(fields[2], context);
        r.acp_enrolled_households = parse_count(fields[3], context);
        r.total_households = parse_count(fields[4], context);
        check_record(r);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<StateRecord> load_state_records_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open states file '" + path + "'");
    return load_state_records(is);
}

}  // namespace ioimpact
