#include "fc45/bridge.hpp"

#include <algorithm>
#include <json.hpp>

#include "fc45/errors.hpp"

namespace fc45 {
namespace {

LinguisticVariable letter_variable(const AttributeSpec& attr,
                                   const GradeEncoding& encoding,
                                   VocabularyMode mode) {
    std::vector<double> points;
    points.reserve(attr.domain.size());
    for (const auto& sym : attr.domain) points.push_back(encoding.at(sym));

    LinguisticVariable var;
    var.name = attr.name;
    var.lo = *std::min_element(points.begin(), points.end());
    var.hi = *std::max_element(points.begin(), points.end());

    for (std::size_t i = 0; i < attr.domain.size(); ++i) {
        double p = points[i];
        if (mode == VocabularyMode::Crisp) {
            CrispIndicator c;
            c.points = {p};
            var.terms.push_back({attr.domain[i], c});
            continue;
        }
        // nearest encoding points on either side; none means a shoulder
        double lower = var.lo, upper = var.hi;
        bool has_lower = false, has_upper = false;
        for (double q : points) {
            if (q < p && (!has_lower || q > lower)) { lower = q; has_lower = true; }
            if (q > p && (!has_upper || q < upper)) { upper = q; has_upper = true; }
        }
        MembershipFunction mf;
        if (!has_upper)
            mf = Trapezoidal{lower, p, var.hi, var.hi};
        else if (!has_lower)
            mf = Trapezoidal{var.lo, var.lo, p, upper};
        else
            mf = Triangular{lower, p, upper};
        var.terms.push_back({attr.domain[i], mf});
    }
    return var;
}

LinguisticVariable gpa_variable(const AttributeSpec& attr, const GpaBanding& banding,
                                VocabularyMode mode) {
    LinguisticVariable var;
    var.name = attr.name;
    var.lo = banding.bands.front().lo;
    var.hi = banding.bands.back().hi;

    for (const auto& band : banding.bands) {
        if (mode == VocabularyMode::Crisp) {
            CrispIndicator c;
            c.interval = true;
            c.lo = band.lo;
            c.hi = band.hi;
            c.closed_hi = band.hi == var.hi;
            var.terms.push_back({band.name, c});
        } else {
            Trapezoidal t{std::max(var.lo, band.lo - 0.1), band.lo, band.hi,
                          std::min(var.hi, band.hi + 0.1)};
            var.terms.push_back({band.name, t});
        }
    }
    return var;
}

} // namespace

const LinguisticVariable* Vocabulary::find_input(const std::string& name) const {
    for (const auto& var : inputs)
        if (var.name == name) return &var;
    return nullptr;
}

Vocabulary build_default_vocabulary(const Schema& schema,
                                    const GradeEncoding& encoding,
                                    const GpaBanding& banding, VocabularyMode mode) {
    schema.validate();
    encoding.validate();
    banding.validate();

    Vocabulary vocab;
    vocab.mode = mode;
    for (const auto& attr : schema.inputs) {
        switch (attr.kind) {
        case AttrKind::LetterGrade:
            vocab.inputs.push_back(letter_variable(attr, encoding, mode));
            break;
        case AttrKind::Gpa:
            vocab.inputs.push_back(gpa_variable(attr, banding, mode));
            break;
        default:
            throw DomainError("no default vocabulary for attribute " + attr.name);
        }
    }

    const auto& classes = schema.class_attribute.domain;
    vocab.output.name = schema.class_attribute.name;
    vocab.output.lo = 0.0;
    vocab.output.hi = 10.0 * static_cast<double>(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        double base = 10.0 * static_cast<double>(i);
        vocab.output.terms.push_back(
            {classes[i], Triangular{base, base + 5.0, base + 10.0}});
    }
    return vocab;
}

std::string LeafPath::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        if (i) out += " & ";
        out += decisions[i].first + "=" + decisions[i].second;
    }
    out += " → ";
    out += class_label;
    return out;
}

namespace {

struct Compiler {
    const Vocabulary& vocab;
    bool drop_zero_coverage;
    bool weight_by_purity;
    CompiledRuleBase out;

    void check_clause(const std::string& attr, const std::string& label) const {
        const LinguisticVariable* var = vocab.find_input(attr);
        if (!var)
            throw VocabularyError("no vocabulary variable for attribute " + attr);
        if (var->term_index(label) < 0)
            throw VocabularyError("vocabulary variable " + attr + " has no term " +
                                  label);
    }

    void emit(const std::vector<std::pair<std::string, std::string>>& path,
              const DecisionTree::Leaf& leaf) {
        if (drop_zero_coverage && leaf.total <= 0.0) return;
        for (const auto& [attr, label] : path) check_clause(attr, label);
        if (vocab.output.term_index(leaf.label) < 0)
            throw VocabularyError("output vocabulary has no term " + leaf.label);

        FuzzyRule rule;
        rule.antecedent = path;
        rule.consequent = {vocab.output.name, leaf.label};
        if (weight_by_purity && leaf.total > 0.0)
            rule.weight = std::clamp((leaf.total - leaf.misclassified) / leaf.total,
                                     0.01, 1.0);
        out.rules.push_back(std::move(rule));
        out.provenance.push_back({path, leaf.label, leaf.total, leaf.misclassified});
    }

    void walk(const DecisionTree& tree,
              std::vector<std::pair<std::string, std::string>>& path) {
        const auto& node = tree.node();
        for (const auto& branch : node.branches) {
            path.push_back({node.attribute, branch.label});
            if (branch.subtree.is_leaf())
                emit(path, branch.subtree.leaf());
            else
                walk(branch.subtree, path);
            path.pop_back();
        }
    }
};

} // namespace

CompiledRuleBase compile_tree(const DecisionTree& tree, const Vocabulary& vocab,
                              bool drop_zero_coverage, bool weight_by_purity) {
    if (tree.is_leaf())
        throw DomainError("a single-leaf tree yields rules with empty antecedents; "
                          "a constant classifier needs no rule base");
    Compiler compiler{vocab, drop_zero_coverage, weight_by_purity, {}};
    std::vector<std::pair<std::string, std::string>> path;
    compiler.walk(tree, path);
    return std::move(compiler.out);
}

FuzzyInferenceSystem make_fis(const Vocabulary& vocab, const CompiledRuleBase& rules,
                              const std::string& name, int resolution) {
    FuzzyInferenceSystem fis;
    fis.name = name;
    fis.inputs = vocab.inputs;
    fis.output = vocab.output;
    fis.rules = rules.rules;
    fis.resolution = resolution;
    fis.validate();
    return fis;
}

std::string provenance_json(const CompiledRuleBase& rules) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < rules.provenance.size(); ++i) {
        const LeafPath& p = rules.provenance[i];
        arr.push_back({{"rule", i + 1},
                       {"path", p.to_string()},
                       {"total", p.total},
                       {"misclassified", p.misclassified}});
    }
    return arr.dump(2) + "\n";
}

Pipeline::Pipeline(const DecisionTree& tree, Vocabulary vocab, const Schema& schema,
                   GradeEncoding encoding, PipelineOptions options)
    : schema_(schema), encoding_(std::move(encoding)), vocab_(std::move(vocab)),
      rules_(compile_tree(tree, vocab_, options.drop_zero_coverage,
                          options.weight_by_purity)),
      fis_(make_fis(vocab_, rules_, options.name, options.resolution)) {
    schema_.validate();
}

InferenceResult Pipeline::classify(const StudentRecord& record) const {
    if (record.values.size() != schema_.inputs.size())
        throw DataError("record " + record.id + " has wrong arity");
    std::map<std::string, double> crisp;
    for (std::size_t i = 0; i < schema_.inputs.size(); ++i) {
        const AttributeSpec& attr = schema_.inputs[i];
        const Value& v = record.values[i];
        if (is_missing(v))
            throw DataError("record " + record.id + " is missing " + attr.name);
        if (std::holds_alternative<std::string>(v))
            crisp[attr.name] = encode_grade(std::get<std::string>(v), encoding_);
        else
            crisp[attr.name] = std::get<double>(v);
    }
    return infer(fis_, crisp);
}

InferenceResult pipeline_classify(const DecisionTree& tree, const Vocabulary& vocab,
                                  const Schema& schema, const GradeEncoding& encoding,
                                  const StudentRecord& record,
                                  PipelineOptions options) {
    Pipeline pipeline(tree, vocab, schema, encoding, options);
    return pipeline.classify(record);
}

} // namespace fc45
