#pragma once

#include "fano/core.hpp"

#include <iosfwd>

namespace fano {

/// Parse failure with the offending line and record ordinal (both 1-based;
/// 0 when not applicable).
struct ParseError : std::runtime_error {
    int line = 0;
    int record = 0;
    ParseError(std::string what, int line_number, int record_ordinal)
        : std::runtime_error("line " + std::to_string(line_number) + ", record " +
                             std::to_string(record_ordinal) + ": " + what),
          line(line_number),
          record(record_ordinal) {}
};

/// An in-memory database: ordered records, an id index, and coefficient
/// indexes for c_2..c_6. Immutable after parse.
struct Database {
    int dimension = 0;
    std::vector<FanoRecord> records;
    std::map<long, std::size_t> id_index;
    // coefficient_index[d - 2] maps a value of c_d to the record positions
    // holding it (records whose period is too short for c_d do not appear)
    std::vector<std::map<Integer, std::vector<std::size_t>>> coefficient_index;
    std::vector<std::string> warnings;  // non-fatal findings from parsing

    const FanoRecord* find(long id) const;
};

/// Parses a blank-line-separated key-value file. Key order within a record is
/// free; unknown keys, repeated keys, malformed values, mismatched operator
/// lists, and missing mandatory keys are errors carrying line/record info.
Database parse_database(const std::string& text, int dimension);
Database parse_database_file(const std::string& path, int dimension);

/// Canonical serialization: key order id, period, names, pf_coefficients,
/// pf_exponents, pf_proven, notes, duplicate; LF line ends; single blank line
/// between records; trailing newline. parse(serialize(db)) == db, and
/// serialize(parse(text)) == text for text already in canonical form.
std::string serialize_database(const Database& db);

struct QueryFilter {
    std::optional<long> id;
    std::optional<std::string> name_substring;
    std::map<int, Integer> coefficient;  // keys restricted to 2..6

    void validate() const;  // throws std::invalid_argument on a bad degree
};

/// Records matching all supplied constraints, in id order. A record whose
/// period is shorter than d+1 terms never matches a c_d constraint.
std::vector<FanoRecord> query(const Database& db, const QueryFilter& filter);

/// Checks one record's names against the naming grammar for the dimension;
/// unrecognized names produce warnings, never errors. Product names
/// ("S1 x S2") are accepted when every component is a known lower-dimensional
/// name.
std::vector<std::string> validate_names(const FanoRecord& record, int dimension);

/// True when the name matches the grammar (see validate_names).
bool name_matches_grammar(const std::string& name, int dimension);

// Helpers shared with the CLI for parsing bracketed values.
std::vector<Integer> parse_integer_list(const std::string& text);
std::vector<std::pair<unsigned, unsigned>> parse_exponent_pairs(const std::string& text);
PeriodSequence parse_period_value(const std::string& text);

}  // namespace fano
