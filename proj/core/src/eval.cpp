#include "fc45/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <json.hpp>

#include "fc45/errors.hpp"

namespace fc45 {

double round2_half_up(double x) { return std::floor(x * 100.0 + 0.5) / 100.0; }

AgreementReport evaluate(const std::vector<StudentRecord>& records,
                         const RecommendFn& recommend) {
    if (records.empty())
        throw DomainError("cannot evaluate an empty record set");

    AgreementReport report;
    report.total = records.size();
    for (const auto& rec : records) {
        if (!rec.observed_major)
            throw DataError("record " + rec.id + " has no class label");
        std::string recommendation;
        bool fired = true;
        try {
            recommendation = recommend(rec);
        } catch (const NoActivationError&) {
            recommendation = "NONE";
            fired = false;
        }
        if (fired && recommendation == *rec.observed_major) {
            ++report.matches;
        } else {
            report.mismatches.push_back(
                {rec.id, *rec.observed_major, recommendation, !fired});
        }
    }
    double total = static_cast<double>(report.total);
    report.agreement_pct =
        round2_half_up(100.0 * static_cast<double>(report.matches) / total);
    report.mismatch_pct = round2_half_up(
        100.0 * static_cast<double>(report.mismatches.size()) / total);
    return report;
}

std::string render_mismatch_table(const AgreementReport& report) {
    const std::string headers[4] = {"NO", "STUDENT_NAME", "CURRENT_MAJOR",
                                    "RECOMMENDATION"};
    std::size_t width[4];
    for (int c = 0; c < 4; ++c) width[c] = headers[c].size();

    std::vector<std::array<std::string, 4>> rows;
    bool any_unfired = false;
    for (std::size_t i = 0; i < report.mismatches.size(); ++i) {
        const Mismatch& m = report.mismatches[i];
        std::string rec = m.recommendation;
        if (m.no_activation) {
            rec += " *";
            any_unfired = true;
        }
        rows.push_back({std::to_string(i + 1), m.id, m.observed, rec});
        for (int c = 0; c < 4; ++c) width[c] = std::max(width[c], rows.back()[c].size());
    }

    auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    std::string out;
    for (int c = 0; c < 4; ++c) {
        if (c) out += "  ";
        out += c == 3 ? headers[c] : pad(headers[c], width[c]);
    }
    out += '\n';
    if (rows.empty()) {
        out += "no mismatches\n";
        return out;
    }
    for (const auto& row : rows) {
        for (int c = 0; c < 4; ++c) {
            if (c) out += "  ";
            out += c == 3 ? row[c] : pad(row[c], width[c]);
        }
        out += '\n';
    }
    if (any_unfired) out += "* no rule fired\n";
    return out;
}

std::string report_json(const AgreementReport& report) {
    nlohmann::json mismatches = nlohmann::json::array();
    for (const auto& m : report.mismatches)
        mismatches.push_back({{"id", m.id},
                              {"observed", m.observed},
                              {"recommendation", m.recommendation},
                              {"no_activation", m.no_activation}});
    nlohmann::json j{{"total", report.total},
                     {"matches", report.matches},
                     {"agreement_pct", report.agreement_pct},
                     {"mismatch_pct", report.mismatch_pct},
                     {"mismatches", mismatches}};
    return j.dump(2) + "\n";
}

} // namespace fc45
