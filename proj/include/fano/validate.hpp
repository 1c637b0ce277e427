#pragma once

#include "fano/analysis.hpp"
#include "fano/kvdb.hpp"

namespace fano {

enum class CheckStatus { passed, failed, skipped };

struct RecordValidation {
    long id = 0;
    CheckStatus period_shape = CheckStatus::passed;    // c_0 = 1, c_1 = 0, integers
    CheckStatus annihilation = CheckStatus::skipped;   // empty residuals
    long verified_range = -1;
    std::string annihilation_detail;
    CheckStatus normalized = CheckStatus::skipped;     // operator already canonical
    CheckStatus keys = CheckStatus::passed;            // dimension <= 3 key completeness
    CheckStatus fuchsian = CheckStatus::skipped;       // flag-gated
    CheckStatus ramification = CheckStatus::skipped;   // flag-gated
    std::optional<long> defect;
    bool ramification_complete = true;
    std::vector<std::string> warnings;                 // names, pf_proven, ...

    bool mandatory_ok() const;
};

struct ValidationOptions {
    bool check_fuchsian = false;
    bool check_ramification = false;
    int max_factor_degree = 8;
};

struct ValidationReport {
    int dimension = 0;
    std::vector<RecordValidation> records;
    std::vector<std::string> database_warnings;
    bool ok = true;  // every mandatory check passed

    std::string render_text() const;
    std::string render_machine() const;  // key-value blocks, one per record
};

ValidationReport validate_database(const Database& db, const ValidationOptions& options = {});

}  // namespace fano
