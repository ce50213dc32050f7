#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ioimpact {

// One state's broadband funding-vs-need snapshot. "Unconnected household"
// counts are taken as given input data; sources differ on whether they mean
// availability or subscription.
struct StateRecord {
    std::string state;
    double bead_allocation = 0.0;
    std::int64_t unconnected_households = 0;
    std::int64_t acp_enrolled_households = 0;
    std::int64_t total_households = 0;
};

// Throws InvalidRecordError when counts are negative, enrollment exceeds
// total households, or the allocation is negative.
void check_record(const StateRecord& r);

// Allocation per unconnected household. A fully served state has no
// meaningful quotient and raises NoUnconnectedHouseholdsError.
double per_household_allocation(const StateRecord& r);

// ACP enrollment as a percentage of total households.
double enrollment_rate(const StateRecord& r);

enum class StateMetric {
    BeadAllocation,
    BeadPerUnconnectedHousehold,
    AcpEnrollment,
    AcpEnrollmentRate,
};

std::string_view state_metric_name(StateMetric m);

// nullopt when the metric is undefined for the record (e.g. per-household
// allocation with zero unconnected households).
std::optional<double> state_metric_value(const StateRecord& r, StateMetric m);

// Spearman rank correlation between two metrics over the records where both
// are defined; ties get average ranks. Needs at least 3 usable records.
double rank_correlation(const std::vector<StateRecord>& records, StateMetric x_metric,
                        StateMetric y_metric);

struct RankedState {
    std::string state;
    double value = 0.0;
    std::size_t rank = 0;  // 1 = largest value
};

struct Ranking {
    StateMetric metric;
    std::vector<RankedState> ranked;      // descending by value
    std::vector<std::string> excluded;    // states where the metric is undefined
};

Ranking rank_states(const std::vector<StateRecord>& records, StateMetric m);

// states.csv: header
// `state,bead_allocation,unconnected_households,acp_enrolled_households,total_households`.
std::vector<StateRecord> load_state_records(std::istream& is);
std::vector<StateRecord> load_state_records_file(const std::string& path);

}  // namespace ioimpact
