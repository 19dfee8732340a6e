#include "fc45/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "fc45/errors.hpp"

namespace fc45 {
namespace {

constexpr double kPointTolerance = 1e-9;

std::string format_value(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

struct MembershipEval {
    double x;

    double operator()(const Triangular& t) const {
        if (x < t.a || x > t.c) return 0.0;
        if (x == t.b) return 1.0;
        if (x < t.b) return t.a == t.b ? 1.0 : (x - t.a) / (t.b - t.a);
        return t.b == t.c ? 1.0 : (t.c - x) / (t.c - t.b);
    }

    double operator()(const Trapezoidal& t) const {
        if (x < t.a || x > t.d) return 0.0;
        if (x >= t.b && x <= t.c) return 1.0;
        if (x < t.b) return t.a == t.b ? 1.0 : (x - t.a) / (t.b - t.a);
        return t.c == t.d ? 1.0 : (t.d - x) / (t.d - t.c);
    }

    double operator()(const Gaussian& g) const {
        double d = x - g.center;
        return std::exp(-d * d / (2.0 * g.sigma * g.sigma));
    }

    double operator()(const CrispIndicator& c) const {
        if (c.interval) {
            if (x >= c.lo && (x < c.hi || (c.closed_hi && x <= c.hi))) return 1.0;
            return 0.0;
        }
        for (double p : c.points)
            if (std::abs(x - p) <= kPointTolerance) return 1.0;
        return 0.0;
    }
};

struct MfValidator {
    void operator()(const Triangular& t) const {
        if (!(t.a <= t.b && t.b <= t.c))
            throw DomainError("triangular parameters must satisfy a <= b <= c");
    }
    void operator()(const Trapezoidal& t) const {
        if (!(t.a <= t.b && t.b <= t.c && t.c <= t.d))
            throw DomainError("trapezoidal parameters must satisfy a <= b <= c <= d");
    }
    void operator()(const Gaussian& g) const {
        if (!(g.sigma > 0.0)) throw DomainError("gaussian sigma must be positive");
    }
    void operator()(const CrispIndicator& c) const {
        if (c.interval) {
            if (!(c.lo <= c.hi))
                throw DomainError("crisp interval must satisfy lo <= hi");
        } else if (c.points.empty()) {
            throw DomainError("crisp point set must be nonempty");
        }
    }
};

} // namespace

double membership(const MembershipFunction& mf, double x) {
    return std::visit(MembershipEval{x}, mf);
}

void validate_mf(const MembershipFunction& mf) { std::visit(MfValidator{}, mf); }

int LinguisticVariable::term_index(const std::string& term) const {
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i].first == term) return static_cast<int>(i);
    return -1;
}

void LinguisticVariable::validate() const {
    if (name.empty()) throw DomainError("variable needs a name");
    if (!(lo < hi)) throw DomainError("variable " + name + ": universe lo must be < hi");
    std::set<std::string> seen;
    for (const auto& [term, mf] : terms) {
        if (term.empty()) throw DomainError("variable " + name + ": empty term name");
        if (!seen.insert(term).second)
            throw DomainError("variable " + name + ": duplicate term " + term);
        validate_mf(mf);
    }
}

std::map<std::string, double> fuzzify(const LinguisticVariable& var, double x) {
    if (!(x >= var.lo && x <= var.hi))
        throw DomainError("value " + format_value(x) + " outside universe of " +
                          var.name + " [" + format_value(var.lo) + ", " +
                          format_value(var.hi) + "]");
    std::map<std::string, double> out;
    for (const auto& [term, mf] : var.terms) out[term] = membership(mf, x);
    return out;
}

int FuzzyInferenceSystem::input_index(const std::string& variable) const {
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (inputs[i].name == variable) return static_cast<int>(i);
    return -1;
}

void FuzzyInferenceSystem::validate() const {
    if (inputs.empty()) throw DomainError("system needs at least one input variable");
    std::set<std::string> names;
    for (const auto& v : inputs) {
        v.validate();
        if (!names.insert(v.name).second)
            throw DomainError("duplicate input variable " + v.name);
    }
    output.validate();
    if (names.count(output.name))
        throw DomainError("output variable shares a name with an input");
    if (resolution < 2) throw DomainError("resolution must be at least 2");

    for (std::size_t r = 0; r < rules.size(); ++r) {
        const auto& rule = rules[r];
        std::string where = "rule " + std::to_string(r + 1);
        if (rule.antecedent.empty())
            throw RuleBaseError(where + ": empty antecedent");
        if (!(rule.weight > 0.0 && rule.weight <= 1.0))
            throw RuleBaseError(where + ": weight must lie in (0,1]");
        std::set<std::string> used;
        for (const auto& [var, term] : rule.antecedent) {
            if (!used.insert(var).second)
                throw RuleBaseError(where + ": variable " + var + " used twice");
            int vi = input_index(var);
            if (vi < 0) throw RuleBaseError(where + ": unknown variable " + var);
            if (inputs[vi].term_index(term) < 0)
                throw RuleBaseError(where + ": variable " + var + " has no term " +
                                    term);
        }
        if (rule.consequent.first != output.name)
            throw RuleBaseError(where + ": consequent names unknown output " +
                                rule.consequent.first);
        if (output.term_index(rule.consequent.second) < 0)
            throw RuleBaseError(where + ": output has no term " +
                                rule.consequent.second);
    }
}

double firing_strength(
    const FuzzyRule& rule,
    const std::map<std::string, std::map<std::string, double>>& fuzzified) {
    double strength = 1.0;
    for (const auto& [var, term] : rule.antecedent) {
        auto vi = fuzzified.find(var);
        if (vi == fuzzified.end())
            throw RuleBaseError("no fuzzified values for variable " + var);
        auto ti = vi->second.find(term);
        if (ti == vi->second.end())
            throw RuleBaseError("variable " + var + " has no term " + term);
        strength = std::min(strength, ti->second);
    }
    return rule.weight * strength;
}

std::vector<double> aggregate_output(const FuzzyInferenceSystem& fis,
                                     const std::vector<double>& strengths) {
    if (fis.resolution < 2) throw DomainError("resolution must be at least 2");
    if (strengths.size() != fis.rules.size())
        throw DomainError("one strength per rule required");

    std::size_t n = static_cast<std::size_t>(fis.resolution);
    double step = (fis.output.hi - fis.output.lo) / static_cast<double>(n - 1);
    std::vector<double> agg(n, 0.0);
    for (std::size_t r = 0; r < fis.rules.size(); ++r) {
        double s = strengths[r];
        if (s <= 0.0) continue;
        int ti = fis.output.term_index(fis.rules[r].consequent.second);
        if (ti < 0)
            throw RuleBaseError("output has no term " + fis.rules[r].consequent.second);
        const MembershipFunction& mf = fis.output.terms[ti].second;
        for (std::size_t i = 0; i < n; ++i) {
            double y = fis.output.lo + step * static_cast<double>(i);
            double clipped = std::min(s, membership(mf, y));
            if (clipped > agg[i]) agg[i] = clipped;
        }
    }
    return agg;
}

double defuzz_centroid(const std::vector<double>& samples, double lo, double hi) {
    if (samples.size() < 2) throw DomainError("centroid needs at least two samples");
    if (!(lo < hi)) throw DomainError("centroid universe lo must be < hi");
    double step = (hi - lo) / static_cast<double>(samples.size() - 1);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double y = lo + step * static_cast<double>(i);
        num += y * samples[i];
        den += samples[i];
    }
    if (den <= 0.0) throw NoActivationError("aggregated output set is all zero");
    return num / den;
}

InferenceResult infer(const FuzzyInferenceSystem& fis,
                      const std::map<std::string, double>& crisp_inputs) {
    std::map<std::string, std::map<std::string, double>> fuzzified;
    for (const auto& var : fis.inputs) {
        auto it = crisp_inputs.find(var.name);
        if (it == crisp_inputs.end())
            throw DomainError("no crisp value for input " + var.name);
        fuzzified[var.name] = fuzzify(var, it->second);
    }

    InferenceResult result;
    result.rule_strengths.reserve(fis.rules.size());
    for (const auto& rule : fis.rules)
        result.rule_strengths.push_back(firing_strength(rule, fuzzified));

    std::vector<double> agg = aggregate_output(fis, result.rule_strengths);
    try {
        result.crisp = defuzz_centroid(agg, fis.output.lo, fis.output.hi);
    } catch (const NoActivationError&) {
        std::string desc = "no rule fired for inputs:";
        for (const auto& [var, x] : crisp_inputs)
            desc += " " + var + "=" + format_value(x);
        throw NoActivationError(desc);
    }

    double best = -1.0;
    for (const auto& [term, mf] : fis.output.terms) {
        double d = membership(mf, result.crisp);
        if (d > best) {
            best = d;
            result.label = term;
        }
    }
    return result;
}

} // namespace fc45
