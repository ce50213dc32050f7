#include "ioimpact/io_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "ioimpact/errors.hpp"

namespace ioimpact {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

// getline that tolerates trailing \r from CRLF files.
bool next_line(std::istream& is, std::string& line) {
    if (!std::getline(is, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

double parse_number(const std::string& field, const std::string& context) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    while (first != last && *first == ' ') ++first;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("cannot parse number '" + field + "' " + context);
    }
    if (!std::isfinite(value)) {
        throw ParseError("non-finite value '" + field + "' " + context);
    }
    return value;
}

struct FlowsFile {
    std::vector<std::string> codes;
    Matrix z;
};

FlowsFile parse_flows(std::istream& is, const LoadOptions& opts, std::vector<std::string>* notes) {
    std::string line;
    if (!next_line(is, line) || line.empty()) {
        throw ParseError("empty flows file");
    }
    auto header = split_csv_line(line);
    if (header.empty() || header[0] != "sector") {
        throw SchemaError("flows header must start with 'sector', got '" +
                          (header.empty() ? std::string() : header[0]) + "'");
    }
    const std::size_t n = header.size() - 1;
    if (n == 0) throw ParseError("flows header declares no sector columns");
    std::vector<std::string> codes(header.begin() + 1, header.end());

    Matrix z(n, n);
    std::size_t row = 0;
    while (next_line(is, line)) {
        if (line.empty()) continue;
        if (row >= n) throw ParseError("flows file has more rows than header columns");
        auto fields = split_csv_line(line);
        if (fields.size() != n + 1) {
            throw ParseError("flows row " + std::to_string(row + 1) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(n + 1));
        }
        if (fields[0] != codes[row]) {
            throw ParseError("flows row " + std::to_string(row + 1) + " is sector '" + fields[0] +
                             "' but header column " + std::to_string(row + 1) + " is '" +
                             codes[row] + "'");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const std::string context =
                "(flows row '" + codes[row] + "', column '" + codes[j] + "')";
            double value = parse_number(fields[j + 1], context);
            if (value < 0.0) {
                if (!opts.clamp_negative_flows) {
                    throw ValueError("negative flow " + format_double(value) + " " + context +
                                     "; rerun with the clamp-negative-flows switch to zero it");
                }
                if (notes) {
                    notes->push_back("clamped negative flow " + format_double(value) + " to 0 " +
                                     context);
                }
                value = 0.0;
            }
            z(row, j) = value;
        }
        ++row;
    }
    if (row != n) {
        throw ParseError("flows file has " + std::to_string(row) + " rows, header declares " +
                         std::to_string(n));
    }
    return {std::move(codes), std::move(z)};
}

}  // namespace

IoTable::IoTable(std::vector<SectorId> sectors, Matrix z, Vector f, Vector v, Vector x,
                 std::string currency_unit, int year)
    : sectors_(std::move(sectors)),
      z_(std::move(z)),
      f_(std::move(f)),
      v_(std::move(v)),
      x_(std::move(x)),
      currency_unit_(std::move(currency_unit)),
      year_(year) {
    const std::size_t n = sectors_.size();
    if (z_.rows() != n || z_.cols() != n || f_.size() != n || v_.size() != n || x_.size() != n) {
        throw DimensionError("table fields disagree on sector count " + std::to_string(n));
    }
    std::set<std::string> seen;
    for (const auto& s : sectors_) {
        if (s.code.empty()) throw ValueError("sector code must be non-empty");
        if (!seen.insert(s.code).second) {
            throw ValueError("duplicate sector code '" + s.code + "'");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (x_[i] <= 0.0) {
            throw ValueError("sector '" + sectors_[i].code + "' has total output " +
                             format_double(x_[i]) + "; zero-output sectors are rejected");
        }
        if (v_[i] < 0.0) {
            throw ValueError("sector '" + sectors_[i].code + "' has negative value added " +
                             format_double(v_[i]));
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (z_(i, j) < 0.0) {
                throw ValueError("negative flow z[" + sectors_[i].code + "," + sectors_[j].code +
                                 "] = " + format_double(z_(i, j)));
            }
        }
    }
}

std::optional<std::size_t> IoTable::index_of(const std::string& code) const {
    for (std::size_t i = 0; i < sectors_.size(); ++i) {
        if (sectors_[i].code == code) return i;
    }
    return std::nullopt;
}

std::size_t IoTable::require_index(const std::string& code) const {
    if (auto i = index_of(code)) return *i;
    throw UnknownSectorError("sector '" + code + "' not present in table");
}

IoTable load_table(std::istream& flows, std::istream& vectors, const LoadOptions& opts,
                   std::vector<std::string>* notes) {
    FlowsFile ff = parse_flows(flows, opts, notes);
    const std::size_t n = ff.codes.size();

    std::string line;
    if (!next_line(vectors, line) || line.empty()) {
        throw ParseError("empty vectors file");
    }
    auto header = split_csv_line(line);
    const std::vector<std::string> expected = {"sector", "final_demand", "value_added",
                                               "total_output"};
    for (std::size_t k = 0; k < expected.size(); ++k) {
        if (k >= header.size() || header[k] != expected[k]) {
            throw SchemaError("vectors header missing column '" + expected[k] + "'");
        }
    }
    if (header.size() != expected.size()) {
        throw SchemaError("vectors header has unexpected extra columns");
    }

    Vector f(n), v(n), x(n);
    std::vector<std::string> codes;
    while (next_line(vectors, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw ParseError("vectors row " + std::to_string(codes.size() + 1) + " has " +
                             std::to_string(fields.size()) + " fields, expected 4");
        }
        if (codes.size() >= n) {
            throw SectorMismatchError("vectors file has more sectors than flows file");
        }
        const std::size_t i = codes.size();
        if (fields[0] != ff.codes[i]) {
            throw SectorMismatchError("vectors row " + std::to_string(i + 1) + " is sector '" +
                                      fields[0] + "' but flows order expects '" + ff.codes[i] +
                                      "'");
        }
        const std::string context = "(vectors row '" + fields[0] + "')";
        f[i] = parse_number(fields[1], context);
        v[i] = parse_number(fields[2], context);
        x[i] = parse_number(fields[3], context);
        codes.push_back(fields[0]);
    }
    if (codes.size() != n) {
        throw SectorMismatchError("flows file has " + std::to_string(n) +
                                  " sectors, vectors file has " + std::to_string(codes.size()));
    }

    std::vector<SectorId> sectors;
    sectors.reserve(n);
    for (const auto& code : ff.codes) sectors.push_back({code, code});
    return IoTable(std::move(sectors), std::move(ff.z), std::move(f), std::move(v), std::move(x),
                   opts.currency_unit, opts.year);
}

IoTable load_table_files(const std::string& flows_path, const std::string& vectors_path,
                         const LoadOptions& opts, std::vector<std::string>* notes) {
    std::ifstream flows(flows_path);
    if (!flows) throw ParseError("cannot open flows file '" + flows_path + "'");
    std::ifstream vectors(vectors_path);
    if (!vectors) throw ParseError("cannot open vectors file '" + vectors_path + "'");
    return load_table(flows, vectors, opts, notes);
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_matrix_csv(std::ostream& os, const std::vector<SectorId>& sectors, const Matrix& m) {
    os << "sector";
    for (const auto& s : sectors) os << ',' << s.code;
    os << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << sectors[i].code;
        for (std::size_t j = 0; j < m.cols(); ++j) os << ',' << format_double(m(i, j));
        os << '\n';
    }
}

std::pair<std::vector<std::string>, Matrix> read_matrix_csv(std::istream& is) {
    std::string line;
    do {
        if (!next_line(is, line)) throw ParseError("empty matrix CSV");
    } while (line.empty());
    auto header = split_csv_line(line);
    if (header.empty() || header[0] != "sector") {
        throw SchemaError("matrix CSV header must start with 'sector'");
    }
    const std::size_t n = header.size() - 1;
    std::vector<std::string> codes(header.begin() + 1, header.end());
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!next_line(is, line) || line.empty()) {
            throw ParseError("matrix CSV ended after " + std::to_string(i) + " of " +
                             std::to_string(n) + " rows");
        }
        auto fields = split_csv_line(line);
        if (fields.size() != n + 1 || fields[0] != codes[i]) {
            throw ParseError("matrix CSV row " + std::to_string(i + 1) +
                             " does not match header order");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = parse_number(fields[j + 1], "(matrix row '" + codes[i] + "')");
        }
    }
    return {std::move(codes), std::move(m)};
}

void write_table(const IoTable& t, std::ostream& flows, std::ostream& vectors) {
    write_matrix_csv(flows, t.sectors(), t.z());
    vectors << "sector,final_demand,value_added,total_output\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        vectors << t.sectors()[i].code << ',' << format_double(t.f()[i]) << ','
                << format_double(t.v()[i]) << ',' << format_double(t.x()[i]) << '\n';
    }
}

ValidationReport validate(const IoTable& t, double rel_tol) {
    ValidationReport report;
    report.rel_tol = rel_tol;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) row_sum += t.z()(i, j);
        const double imbalance = t.x()[i] - (row_sum + t.f()[i]);
        const double tol = rel_tol * std::abs(t.x()[i]);
        if (std::abs(imbalance) > tol) {
            report.findings.push_back(
                {ValidationFinding::Kind::Row, i, t.sectors()[i].code, imbalance, tol});
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        double col_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) col_sum += t.z()(i, j);
        const double imbalance = t.x()[j] - (col_sum + t.v()[j]);
        const double tol = rel_tol * std::abs(t.x()[j]);
        if (std::abs(imbalance) > tol) {
            report.findings.push_back(
                {ValidationFinding::Kind::Column, j, t.sectors()[j].code, imbalance, tol});
        }
    }
    return report;
}

AggregationMapping load_aggregation_mapping(std::istream& is) {
    std::string line;
    if (!next_line(is, line)) throw ParseError("empty aggregation mapping file");
    auto header = split_csv_line(line);
    if (header.size() != 3 || header[0] != "source_code" || header[1] != "target_code" ||
        header[2] != "target_name") {
        throw SchemaError("aggregation mapping header must be source_code,target_code,target_name");
    }
    AggregationMapping mapping;
    while (next_line(is, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw ParseError("aggregation mapping row " + std::to_string(mapping.size() + 1) +
                             " has " + std::to_string(fields.size()) + " fields, expected 3");
        }
        mapping.push_back({fields[0], fields[1], fields[2]});
    }
    return mapping;
}

IoTable aggregate_sectors(const IoTable& t, const AggregationMapping& mapping) {
    std::map<std::string, const AggregationRule*> by_source;
    for (const auto& rule : mapping) {
        if (!by_source.emplace(rule.source_code, &rule).second) {
            throw SchemaError("duplicate source_code '" + rule.source_code +
                              "' in aggregation mapping");
        }
    }

    // Group index per table sector; group order = first appearance.
    std::vector<SectorId> groups;
    std::map<std::string, std::size_t> group_index;
    std::vector<std::size_t> assignment(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto it = by_source.find(t.sectors()[i].code);
        if (it == by_source.end()) {
            throw UnknownSectorError("table sector '" + t.sectors()[i].code +
                                     "' not covered by aggregation mapping");
        }
        const AggregationRule& rule = *it->second;
        auto [git, inserted] = group_index.emplace(rule.target_code, groups.size());
        if (inserted) groups.push_back({rule.target_code, rule.target_name});
        assignment[i] = git->second;
    }
    for (const auto& rule : mapping) {
        if (!group_index.count(rule.target_code)) {
            throw EmptyGroupError("aggregation target '" + rule.target_code +
                                  "' has no member sectors in the table");
        }
    }

    const std::size_t m = groups.size();
    Matrix z(m, m);
    Vector f(m), v(m), x(m);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::size_t gi = assignment[i];
        f[gi] += t.f()[i];
        v[gi] += t.v()[i];
        x[gi] += t.x()[i];
        for (std::size_t j = 0; j < t.size(); ++j) {
            z(gi, assignment[j]) += t.z()(i, j);
        }
    }
    return IoTable(std::move(groups), std::move(z), std::move(f), std::move(v), std::move(x),
                   t.currency_unit(), t.year());
}

}  // namespace ioimpact
