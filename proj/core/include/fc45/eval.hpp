#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fc45/schema.hpp"

namespace fc45 {

struct Mismatch {
    std::string id;
    std::string observed;
    std::string recommendation; // "NONE" when no rule fired
    bool no_activation = false;
};

struct AgreementReport {
    std::size_t total = 0;
    std::size_t matches = 0;
    std::vector<Mismatch> mismatches; // in input order
    double agreement_pct = 0.0;       // round half-up to 2 decimals
    double mismatch_pct = 0.0;
};

// x rounded half-up to two decimals (86.5079... -> 86.51).
double round2_half_up(double x);

// Returns the recommended class for a record; may throw NoActivationError.
using RecommendFn = std::function<std::string(const StudentRecord&)>;

// Runs the recommender over every record. A record matches when the
// recommendation equals observed_major; no-activation counts as a mismatch
// with recommendation "NONE". Empty input or a record without observed_major
// is an error.
AgreementReport evaluate(const std::vector<StudentRecord>& records,
                         const RecommendFn& recommend);

// Fixed-width mismatch table with columns NO, STUDENT_NAME, CURRENT_MAJOR,
// RECOMMENDATION, rows in input order. No-activation rows carry a trailing
// "*" on the recommendation and a footnote. Zero mismatches render the
// header plus a "no mismatches" line.
std::string render_mismatch_table(const AgreementReport& report);

// Machine-readable form:
//   {"total": 126, "matches": 109, "agreement_pct": 86.51,
//    "mismatch_pct": 13.49, "mismatches": [{"id": ..., "observed": ...,
//    "recommendation": ..., "no_activation": false}, ...]}
std::string report_json(const AgreementReport& report);

} // namespace fc45
