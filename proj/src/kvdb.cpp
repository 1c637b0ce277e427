#include "fano/kvdb.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace fano {

namespace {

const char* const kKnownKeys[] = {"id",           "period",      "names",     "pf_coefficients",
                                  "pf_exponents", "pf_proven",   "notes",     "duplicate"};

bool is_known_key(const std::string& key) {
    return std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) != std::end(kKnownKeys);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// Splits a bracketed list at top-level commas: "[A, B(1,2), C]" -> A, B(1,2), C.
std::vector<std::string> split_bracketed(const std::string& text, const char* what) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw std::invalid_argument(std::string(what) + " must be bracketed");
    std::string inner = t.substr(1, t.size() - 2);
    std::vector<std::string> out;
    int depth = 0;
    std::string current;
    for (char c : inner) {
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!trim(current).empty() || !out.empty()) out.push_back(trim(current));
    if (out.size() == 1 && out[0].empty()) out.clear();
    for (const auto& piece : out)
        if (piece.empty()) throw std::invalid_argument(std::string(what) + " has an empty entry");
    return out;
}

Integer parse_integer_value(const std::string& text, const char* what) {
    std::string t = trim(text);
    if (t.empty()) throw std::invalid_argument(std::string(what) + " is empty");
    try {
        return Integer(t);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(std::string(what) + " is not an integer: '" + t + "'");
    }
}

long parse_long_value(const std::string& text, const char* what) {
    Integer v = parse_integer_value(text, what);
    if (!v.fits_slong_p()) throw std::invalid_argument(std::string(what) + " out of range");
    return v.get_si();
}

}  // namespace

std::vector<Integer> parse_integer_list(const std::string& text) {
    std::vector<Integer> out;
    for (const auto& piece : split_bracketed(text, "integer sequence"))
        out.push_back(parse_integer_value(piece, "sequence entry"));
    return out;
}

std::vector<std::pair<unsigned, unsigned>> parse_exponent_pairs(const std::string& text) {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (const auto& piece : split_bracketed(text, "exponent sequence")) {
        auto pair = split_bracketed(piece, "exponent pair");
        if (pair.size() != 2) throw std::invalid_argument("exponent pair must have two entries");
        long m = parse_long_value(pair[0], "D-exponent");
        long n = parse_long_value(pair[1], "t-exponent");
        if (m < 0 || n < 0) throw std::invalid_argument("exponents must be non-negative");
        out.emplace_back(static_cast<unsigned>(m), static_cast<unsigned>(n));
    }
    return out;
}

PeriodSequence parse_period_value(const std::string& text) {
    auto values = parse_integer_list(text);
    if (values.empty()) throw std::invalid_argument("period must not be empty");
    std::vector<Rational> coeffs;
    coeffs.reserve(values.size());
    for (auto& v : values) {
        if (v < 0) throw std::invalid_argument("period coefficients must be non-negative");
        coeffs.emplace_back(v);
    }
    return PeriodSequence(std::move(coeffs));
}

namespace {

struct RawRecord {
    int ordinal = 0;
    int first_line = 0;
    std::vector<std::pair<std::string, std::string>> pairs;  // key, value
    std::vector<int> lines;
};

FanoRecord build_record(const RawRecord& raw) {
    FanoRecord rec;
    bool saw_id = false, saw_period = false, saw_names = false;
    std::optional<std::vector<Integer>> pf_coefficients;
    std::optional<std::vector<std::pair<unsigned, unsigned>>> pf_exponents;

    std::vector<std::string> seen;
    for (std::size_t i = 0; i < raw.pairs.size(); ++i) {
        const auto& [key, value] = raw.pairs[i];
        int line = raw.lines[i];
        if (!is_known_key(key)) throw ParseError("unknown key '" + key + "'", line, raw.ordinal);
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw ParseError("repeated key '" + key + "'", line, raw.ordinal);
        seen.push_back(key);

        try {
            if (key == "id") {
                rec.id = parse_long_value(value, "id");
                if (rec.id < 1) throw std::invalid_argument("id must be positive");
                saw_id = true;
            } else if (key == "period") {
                rec.period = parse_period_value(value);
                saw_period = true;
            } else if (key == "names") {
                rec.names = split_bracketed(value, "names");
                if (rec.names.empty()) throw std::invalid_argument("names must be non-empty");
                saw_names = true;
            } else if (key == "pf_coefficients") {
                pf_coefficients = parse_integer_list(value);
            } else if (key == "pf_exponents") {
                pf_exponents = parse_exponent_pairs(value);
            } else if (key == "pf_proven") {
                std::string t = trim(value);
                if (t == "true")
                    rec.pf_proven = true;
                else if (t == "false")
                    rec.pf_proven = false;
                else
                    throw std::invalid_argument("boolean must be 'true' or 'false'");
            } else if (key == "notes") {
                rec.notes = value;  // raw remainder of the line
            } else if (key == "duplicate") {
                long dup = parse_long_value(value, "duplicate");
                if (dup < 1) throw std::invalid_argument("duplicate must reference a positive id");
                rec.duplicate = dup;
            }
        } catch (const std::invalid_argument& err) {
            throw ParseError(err.what(), line, raw.ordinal);
        }
    }

    if (!saw_id) throw ParseError("record missing 'id'", raw.first_line, raw.ordinal);
    if (!saw_period) throw ParseError("record missing 'period'", raw.first_line, raw.ordinal);
    if (!saw_names) throw ParseError("record missing 'names'", raw.first_line, raw.ordinal);

    if (pf_coefficients.has_value() != pf_exponents.has_value())
        throw ParseError("pf_coefficients and pf_exponents must appear together", raw.first_line,
                         raw.ordinal);
    if (pf_coefficients) {
        if (pf_coefficients->size() != pf_exponents->size())
            throw ParseError("pf_coefficients and pf_exponents have different lengths",
                             raw.first_line, raw.ordinal);
        DOperator op;
        for (std::size_t k = 0; k < pf_coefficients->size(); ++k)
            op.terms.push_back(
                {(*pf_coefficients)[k], (*pf_exponents)[k].first, (*pf_exponents)[k].second});
        try {
            op.validate();
        } catch (const std::invalid_argument& err) {
            throw ParseError(err.what(), raw.first_line, raw.ordinal);
        }
        rec.op = std::move(op);
    }
    if (rec.pf_proven.has_value() != rec.op.has_value())
        throw ParseError("pf_proven must appear exactly when the operator does", raw.first_line,
                         raw.ordinal);
    return rec;
}

}  // namespace

Database parse_database(const std::string& text, int dimension) {
    Database db;
    db.dimension = dimension;
    db.coefficient_index.resize(5);

    std::vector<std::string> lines;
    {
        std::string current;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(std::move(current));
                current.clear();
            } else {
                current += c;
            }
        }
        if (!current.empty()) lines.push_back(std::move(current));
    }
    // tolerate CRLF input when ingesting foreign copies of the data files
    for (auto& line : lines)
        if (!line.empty() && line.back() == '\r') line.pop_back();
    // one trailing blank line is accepted
    if (!lines.empty() && lines.back().empty()) lines.pop_back();

    std::vector<RawRecord> raw_records;
    RawRecord current;
    current.ordinal = 1;
    bool in_record = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        int line_number = static_cast<int>(i) + 1;
        const std::string& line = lines[i];
        if (line.empty()) {
            if (!in_record)
                throw ParseError("empty record (consecutive blank lines)", line_number,
                                 current.ordinal);
            raw_records.push_back(std::move(current));
            current = RawRecord();
            current.ordinal = static_cast<int>(raw_records.size()) + 1;
            in_record = false;
            continue;
        }
        auto sep = line.find(": ");
        if (sep == std::string::npos || sep == 0)
            throw ParseError("expected 'key: value'", line_number, current.ordinal);
        if (!in_record) {
            current.first_line = line_number;
            in_record = true;
        }
        current.pairs.emplace_back(line.substr(0, sep), line.substr(sep + 2));
        current.lines.push_back(line_number);
    }
    if (in_record) {
        raw_records.push_back(std::move(current));
    } else if (!raw_records.empty()) {
        throw ParseError("blank line at end of file after record separator",
                         static_cast<int>(lines.size()), current.ordinal);
    }

    for (const auto& raw : raw_records) {
        FanoRecord rec = build_record(raw);
        if (db.id_index.count(rec.id))
            throw ParseError("duplicate id " + std::to_string(rec.id), raw.first_line,
                             raw.ordinal);
        db.id_index[rec.id] = db.records.size();
        db.records.push_back(std::move(rec));
    }

    for (std::size_t pos = 0; pos < db.records.size(); ++pos) {
        const FanoRecord& rec = db.records[pos];
        if (rec.id != static_cast<long>(pos) + 1) {
            db.warnings.push_back("ids are not sequential from 1 (record " +
                                  std::to_string(pos + 1) + " has id " + std::to_string(rec.id) +
                                  ")");
            break;
        }
    }
    for (const auto& rec : db.records) {
        if (rec.duplicate && !db.id_index.count(*rec.duplicate))
            throw ParseError("duplicate points at missing id " + std::to_string(*rec.duplicate),
                             0, 0);
    }
    for (std::size_t pos = 0; pos < db.records.size(); ++pos) {
        const auto& period = db.records[pos].period;
        for (int d = 2; d <= 6; ++d) {
            if (period.max_index() < d) continue;
            db.coefficient_index[d - 2][period.coeffs[d].get_num()].push_back(pos);
        }
    }
    return db;
}

Database parse_database_file(const std::string& path, int dimension) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_database(buffer.str(), dimension);
}

const FanoRecord* Database::find(long id) const {
    auto it = id_index.find(id);
    return it == id_index.end() ? nullptr : &records[it->second];
}

std::string serialize_database(const Database& db) {
    std::string out;
    bool first = true;
    for (const auto& rec : db.records) {
        if (!first) out += "\n";
        first = false;
        out += "id: " + std::to_string(rec.id) + "\n";
        out += "period: " + format_period(rec.period, true) + "\n";
        out += "names: [";
        for (std::size_t i = 0; i < rec.names.size(); ++i) {
            if (i) out += ", ";
            out += rec.names[i];
        }
        out += "]\n";
        if (rec.op) {
            out += "pf_coefficients: " + format_coefficient_list(*rec.op, true) + "\n";
            out += "pf_exponents: " + format_exponent_pairs(*rec.op, true) + "\n";
        }
        if (rec.pf_proven) out += std::string("pf_proven: ") + (*rec.pf_proven ? "true" : "false") + "\n";
        if (rec.notes) out += "notes: " + *rec.notes + "\n";
        if (rec.duplicate) out += "duplicate: " + std::to_string(*rec.duplicate) + "\n";
    }
    return out;
}

void QueryFilter::validate() const {
    for (const auto& [d, value] : coefficient)
        if (d < 2 || d > 6)
            throw std::invalid_argument("coefficient constraints are limited to c_2..c_6");
}

std::vector<FanoRecord> query(const Database& db, const QueryFilter& filter) {
    filter.validate();
    std::vector<FanoRecord> out;
    for (const auto& rec : db.records) {
        if (filter.id && rec.id != *filter.id) continue;
        if (filter.name_substring) {
            bool hit = std::any_of(rec.names.begin(), rec.names.end(), [&](const std::string& n) {
                return n.find(*filter.name_substring) != std::string::npos;
            });
            if (!hit) continue;
        }
        bool ok = true;
        for (const auto& [d, value] : filter.coefficient) {
            if (rec.period.max_index() < d || rec.period.coeffs[d] != Rational(value)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(rec);
    }
    std::sort(out.begin(), out.end(),
              [](const FanoRecord& a, const FanoRecord& b) { return a.id < b.id; });
    return out;
}

// ---------------------------------------------------------------------------
// Name grammar
// ---------------------------------------------------------------------------

namespace {

// NAME(args) with exact integer argument count and no interior whitespace.
bool match_call(const std::string& name, const std::string& head, int argc,
                bool first_arg_fixed = false, int fixed_value = 0) {
    if (name.size() < head.size() + 3 || name.compare(0, head.size(), head) != 0) return false;
    if (name[head.size()] != '(' || name.back() != ')') return false;
    std::string args = name.substr(head.size() + 1, name.size() - head.size() - 2);
    std::vector<std::string> parts;
    std::string cur;
    for (char c : args) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (static_cast<int>(parts.size()) != argc) return false;
    for (const auto& p : parts) {
        if (p.empty()) return false;
        for (char c : p)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        if (p.size() > 1 && p[0] == '0') return false;
    }
    if (first_arg_fixed && std::to_string(fixed_value) != parts[0]) return false;
    return parts[0] != "0";
}

bool match_low_dimensional(const std::string& name) {
    if (name == "P1" || name == "P2" || name == "P3" || name == "Q3") return true;
    return match_call(name, "dP", 1) || match_call(name, "V", 2, true, 3) ||
           match_call(name, "B", 2, true, 3) || match_call(name, "MM", 2);
}

bool match_four_dimensional(const std::string& name) {
    if (name == "P4" || name == "Q4") return true;
    return match_call(name, "FI", 2, true, 4) || match_call(name, "V", 2, true, 4) ||
           match_call(name, "MW", 2, true, 4) || match_call(name, "Obro", 2, true, 4) ||
           match_call(name, "Str", 1) || match_call(name, "CKP", 1) || match_call(name, "CKK", 1);
}

std::vector<std::string> split_product(const std::string& name) {
    std::vector<std::string> parts;
    std::string cur;
    std::size_t i = 0;
    while (i < name.size()) {
        if (name.compare(i, 3, " x ") == 0) {
            parts.push_back(cur);
            cur.clear();
            i += 3;
        } else {
            cur += name[i];
            ++i;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

bool name_matches_grammar(const std::string& name, int dimension) {
    auto parts = split_product(name);
    if (parts.size() > 1) {
        // product components are lower-dimensional manifolds
        return std::all_of(parts.begin(), parts.end(),
                           [](const std::string& p) { return match_low_dimensional(p); });
    }
    return dimension <= 3 ? match_low_dimensional(name) : match_four_dimensional(name);
}

std::vector<std::string> validate_names(const FanoRecord& record, int dimension) {
    std::vector<std::string> warnings;
    for (const auto& name : record.names)
        if (!name_matches_grammar(name, dimension))
            warnings.push_back("record " + std::to_string(record.id) + ": unrecognized name '" +
                               name + "'");
    return warnings;
}

}  // namespace fano
