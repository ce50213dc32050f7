#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ioimpact/linalg.hpp"

namespace ioimpact {

struct SectorId {
    std::string code;  // short identifier, e.g. NAICS-style "513"
    std::string name;  // human label; defaults to the code when loaded from CSV

    bool operator==(const SectorId&) const = default;
};

// One economy-year snapshot: inter-industry flows Z plus the final demand,
// value added, and total output vectors. Construction enforces x > 0,
// z >= 0, v >= 0 and unique sector codes; row/column balance is checked
// separately by validate().
class IoTable {
public:
    IoTable(std::vector<SectorId> sectors, Matrix z, Vector f, Vector v, Vector x,
            std::string currency_unit = "USD_millions", int year = 0);

    std::size_t size() const { return sectors_.size(); }
    const std::vector<SectorId>& sectors() const { return sectors_; }
    const Matrix& z() const { return z_; }
    const Vector& f() const { return f_; }
    const Vector& v() const { return v_; }
    const Vector& x() const { return x_; }
    const std::string& currency_unit() const { return currency_unit_; }
    int year() const { return year_; }

    std::optional<std::size_t> index_of(const std::string& code) const;
    // Like index_of but throws UnknownSectorError.
    std::size_t require_index(const std::string& code) const;

private:
    std::vector<SectorId> sectors_;
    Matrix z_;
    Vector f_, v_, x_;
    std::string currency_unit_;
    int year_;
};

struct LoadOptions {
    // Zero out small negative flows instead of rejecting the table. Each
    // clamped cell is appended to `notes` when a sink is supplied.
    bool clamp_negative_flows = false;
    std::string currency_unit = "USD_millions";
    int year = 0;
};

// flows.csv: header `sector,<code_1>,...,<code_n>`; row i = `<code_i>,z_i1,...`.
// vectors.csv: header `sector,final_demand,value_added,total_output`.
IoTable load_table(std::istream& flows, std::istream& vectors, const LoadOptions& opts = {},
                   std::vector<std::string>* notes = nullptr);
IoTable load_table_files(const std::string& flows_path, const std::string& vectors_path,
                         const LoadOptions& opts = {}, std::vector<std::string>* notes = nullptr);

// Inverse of load_table; numbers are written in shortest round-trip form so
// a reload reproduces every field bit-identically.
void write_table(const IoTable& t, std::ostream& flows, std::ostream& vectors);

// Square matrix CSV in the flows.csv schema (used by the coefficients CLI
// output and its round-trip loader). Reading stops at a blank line or EOF.
void write_matrix_csv(std::ostream& os, const std::vector<SectorId>& sectors, const Matrix& m);
std::pair<std::vector<std::string>, Matrix> read_matrix_csv(std::istream& is);

struct ValidationFinding {
    enum class Kind { Row, Column };
    Kind kind;
    std::size_t sector_index;
    std::string sector_code;
    double imbalance;  // x_i minus the corresponding sum; sign kept
    double tolerance;  // rel_tol * x_i
};

struct ValidationReport {
    double rel_tol = 0.0;
    std::vector<ValidationFinding> findings;
    bool is_balanced() const { return findings.empty(); }
};

// Flags every sector whose row identity x_i = sum_j z_ij + f_i or column
// identity x_j = sum_i z_ij + v_j is violated by more than rel_tol * x.
ValidationReport validate(const IoTable& t, double rel_tol = 1e-6);

struct AggregationRule {
    std::string source_code;
    std::string target_code;
    std::string target_name;
};
using AggregationMapping = std::vector<AggregationRule>;

// CSV with header `source_code,target_code,target_name`.
AggregationMapping load_aggregation_mapping(std::istream& is);

// Sums flows and the f/v/x vectors within groups. Group order follows the
// first appearance of each target among the table's sectors. The mapping
// must cover every table sector; declared targets that acquire no members
// raise EmptyGroupError.
IoTable aggregate_sectors(const IoTable& t, const AggregationMapping& mapping);

// Shortest round-trip decimal form of a double (CSV/number formatting).
std::string format_double(double value);

}  // namespace ioimpact
