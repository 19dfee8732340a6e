#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fc45 {

struct Triangular {
    double a, b, c; // feet a and c, peak b; a <= b <= c
};

struct Trapezoidal {
    double a, b, c, d; // feet a and d, core [b,c]; a <= b <= c <= d
};

struct Gaussian {
    double sigma, center; // sigma > 0
};

// Indicator of an exact set: either a list of points (membership 1 within
// 1e-9 of a point) or an interval [lo,hi), closed at hi when closed_hi is
// set (used for the top band of a partition).
struct CrispIndicator {
    bool interval = false;
    std::vector<double> points;
    double lo = 0.0, hi = 0.0;
    bool closed_hi = false;
};

using MembershipFunction =
    std::variant<Triangular, Trapezoidal, Gaussian, CrispIndicator>;

// Degree in [0,1]; x outside the variable universe evaluates normally.
double membership(const MembershipFunction& mf, double x);

// Throws DomainError when shape parameters violate the type invariants.
void validate_mf(const MembershipFunction& mf);

struct LinguisticVariable {
    std::string name;
    double lo = 0.0, hi = 1.0;
    std::vector<std::pair<std::string, MembershipFunction>> terms;

    int term_index(const std::string& term) const; // -1 when absent
    void validate() const;
};

// Degree of every term at x. Throws DomainError when x is outside [lo, hi].
std::map<std::string, double> fuzzify(const LinguisticVariable& var, double x);

struct FuzzyRule {
    // conjunctive clauses (input variable, term); each variable at most once
    std::vector<std::pair<std::string, std::string>> antecedent;
    std::pair<std::string, std::string> consequent; // (output variable, term)
    double weight = 1.0;                            // in (0,1]
};

// Classical Mamdani system: AND=min, OR=max, implication=min,
// aggregation=max, defuzzification=centroid. The operator suite is fixed.
// resolution is the output sample count used by aggregation; it is a runtime
// parameter and is not part of the FIS file format.
struct FuzzyInferenceSystem {
    std::string name = "fis";
    std::vector<LinguisticVariable> inputs;
    LinguisticVariable output;
    std::vector<FuzzyRule> rules;
    int resolution = 1001;

    int input_index(const std::string& variable) const; // -1 when absent
    void validate() const; // universes, term refs, weights, resolution >= 2
};

// weight times the min over clause degrees. fuzzified maps variable name to
// its per-term degree map. Unknown variable or term throws RuleBaseError.
double firing_strength(
    const FuzzyRule& rule,
    const std::map<std::string, std::map<std::string, double>>& fuzzified);

// Samples the aggregated output set on `resolution` uniform points over the
// output universe: max over rules of min(strength, consequent membership).
std::vector<double> aggregate_output(const FuzzyInferenceSystem& fis,
                                     const std::vector<double>& strengths);

// Discrete centroid sum(y*mu)/sum(mu) over the uniform grid on [lo, hi].
// Throws NoActivationError when every sample is zero.
double defuzz_centroid(const std::vector<double>& samples, double lo, double hi);

struct InferenceResult {
    double crisp = 0.0;
    std::string label;                    // output term with max membership at crisp
    std::vector<double> rule_strengths;   // per rule, in rule order
};

// Full pipeline for one crisp input vector (one value per input variable).
// Label ties go to the term declared first. Throws NoActivationError listing
// the inputs when no rule fires.
InferenceResult infer(const FuzzyInferenceSystem& fis,
                      const std::map<std::string, double>& crisp_inputs);

} // namespace fc45
