#include "fano/validate.hpp"

#include "fano/recurrence.hpp"

#include <sstream>

namespace fano {

bool RecordValidation::mandatory_ok() const {
    auto ok = [](CheckStatus s) { return s != CheckStatus::failed; };
    return ok(period_shape) && ok(annihilation) && ok(normalized) && ok(keys) && ok(fuchsian) &&
           ok(ramification);
}

namespace {

const char* status_str(CheckStatus s) {
    switch (s) {
        case CheckStatus::passed: return "ok";
        case CheckStatus::failed: return "FAILED";
        case CheckStatus::skipped: return "skipped";
    }
    return "?";
}

}  // namespace

ValidationReport validate_database(const Database& db, const ValidationOptions& options) {
    ValidationReport report;
    report.dimension = db.dimension;
    report.database_warnings = db.warnings;

    for (const auto& rec : db.records) {
        RecordValidation v;
        v.id = rec.id;

        // period shape: parse already guarantees non-negative integers
        if (rec.period.coeffs.empty() || rec.period.coeffs[0] != 1)
            v.period_shape = CheckStatus::failed;
        if (rec.period.max_index() >= 1 && rec.period.coeffs[1] != 0)
            v.period_shape = CheckStatus::failed;

        if (db.dimension <= 3 && (!rec.op || !rec.notes)) v.keys = CheckStatus::failed;

        if (rec.op) {
            auto check = annihilates(*rec.op, rec.period);
            v.verified_range = check.verified_range;
            if (check.clean()) {
                v.annihilation = CheckStatus::passed;
            } else {
                v.annihilation = CheckStatus::failed;
                std::ostringstream detail;
                detail << "residual at exponent " << check.residuals.front().first << " = "
                       << to_string(check.residuals.front().second);
                v.annihilation_detail = detail.str();
            }
            v.normalized =
                is_normalized(*rec.op) ? CheckStatus::passed : CheckStatus::failed;
            if (rec.pf_proven && *rec.pf_proven)
                v.warnings.push_back("pf_proven is true; shipped data never claims a proof");

            if (options.check_fuchsian || options.check_ramification) {
                try {
                    auto cert = is_fuchsian(to_diff_form(*rec.op));
                    v.fuchsian = cert.fuchsian ? CheckStatus::passed : CheckStatus::failed;
                } catch (const std::exception& err) {
                    v.fuchsian = CheckStatus::failed;
                    v.warnings.push_back(std::string("fuchsian check error: ") + err.what());
                }
            }
            if (options.check_ramification && v.fuchsian == CheckStatus::passed) {
                try {
                    RamificationOptions ropts;
                    ropts.max_factor_degree = options.max_factor_degree;
                    auto data = ramification_data(*rec.op, ropts);
                    v.defect = data.defect;
                    v.ramification_complete = data.complete;
                    v.ramification = CheckStatus::passed;
                    for (const auto& w : data.warnings) v.warnings.push_back(w);
                } catch (const std::exception& err) {
                    v.ramification = CheckStatus::failed;
                    v.warnings.push_back(std::string("ramification error: ") + err.what());
                }
            }
        }

        for (auto& warning : validate_names(rec, db.dimension)) v.warnings.push_back(warning);
        report.ok = report.ok && v.mandatory_ok();
        report.records.push_back(std::move(v));
    }
    return report;
}

std::string ValidationReport::render_text() const {
    std::ostringstream out;
    int failures = 0;
    for (const auto& w : database_warnings) out << "warning: " << w << "\n";
    for (const auto& v : records) {
        out << "record " << v.id << ": period " << status_str(v.period_shape);
        out << ", keys " << status_str(v.keys);
        out << ", annihilation " << status_str(v.annihilation);
        if (v.verified_range >= 0) out << " (range " << v.verified_range << ")";
        if (!v.annihilation_detail.empty()) out << " [" << v.annihilation_detail << "]";
        out << ", normalized " << status_str(v.normalized);
        if (v.fuchsian != CheckStatus::skipped) out << ", fuchsian " << status_str(v.fuchsian);
        if (v.ramification != CheckStatus::skipped) {
            out << ", ramification " << status_str(v.ramification);
            if (v.defect) {
                out << " (defect " << *v.defect;
                if (!v.ramification_complete) out << ", partial";
                out << ")";
            }
        }
        out << "\n";
        for (const auto& w : v.warnings) out << "  warning: " << w << "\n";
        if (!v.mandatory_ok()) ++failures;
    }
    out << records.size() << " records, " << failures << " failures\n";
    return out.str();
}

std::string ValidationReport::render_machine() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& v : records) {
        if (!first) out << "\n";
        first = false;
        out << "record: " << v.id << "\n";
        out << "period_shape: " << status_str(v.period_shape) << "\n";
        out << "keys: " << status_str(v.keys) << "\n";
        out << "annihilation: " << status_str(v.annihilation) << "\n";
        if (v.verified_range >= 0) out << "verified_range: " << v.verified_range << "\n";
        out << "normalized: " << status_str(v.normalized) << "\n";
        out << "fuchsian: " << status_str(v.fuchsian) << "\n";
        out << "ramification: " << status_str(v.ramification) << "\n";
        if (v.defect) out << "defect: " << *v.defect << "\n";
        out << "warnings: " << v.warnings.size() << "\n";
    }
    return out.str();
}

}  // namespace fano
