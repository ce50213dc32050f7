#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "ioimpact/allocation.hpp"
#include "ioimpact/io_table.hpp"
#include "ioimpact/sankey.hpp"
#include "ioimpact/scenario.hpp"

namespace ioimpact {

// JSON views of the report types. ordered_json keeps insertion order so
// identical inputs serialize byte-identically.
using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const ValidationReport& report);
ordered_json to_json(const ImpactReport& report);
ordered_json to_json(const SankeyGraph& graph);

ordered_json allocation_to_json(const std::vector<StateRecord>& records);

}  // namespace ioimpact
