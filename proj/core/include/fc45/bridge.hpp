#pragma once

#include <string>
#include <vector>

#include "fc45/c45.hpp"
#include "fc45/fuzzy.hpp"
#include "fc45/schema.hpp"

namespace fc45 {

enum class VocabularyMode {
    Crisp,  // exact indicator terms; fuzzify is one-hot
    Graded, // overlapping triangles/trapezoids
};

// Linguistic variables covering the tree's branch labels per input attribute
// plus an output variable covering the class labels.
struct Vocabulary {
    std::vector<LinguisticVariable> inputs; // one per schema input, same order
    LinguisticVariable output;
    VocabularyMode mode = VocabularyMode::Crisp;

    const LinguisticVariable* find_input(const std::string& name) const;
};

// Letter-grade variables get one term per letter on universe [0,4] (graded:
// triangles peaked at the encoding points with feet at the neighboring
// points, shoulders at the scale ends; crisp: point indicators). Grade-point
// variables get one term per band (graded: trapezoids with the band as core
// and 0.1 ramps clipped to the universe; crisp: interval indicators, top
// band closed). The output covers the class labels with disjoint-core
// triangles on [0, 10*k]: class i maps to (10i, 10i+5, 10i+10).
Vocabulary build_default_vocabulary(const Schema& schema,
                                    const GradeEncoding& encoding,
                                    const GpaBanding& banding,
                                    VocabularyMode mode);

struct LeafPath {
    std::vector<std::pair<std::string, std::string>> decisions; // (attr, label)
    std::string class_label;
    double total = 0.0;
    double misclassified = 0.0;

    std::string to_string() const; // "X11=VERY_GOOD & X7=B- → MULTIMEDIA"
};

struct CompiledRuleBase {
    std::vector<FuzzyRule> rules;
    std::vector<LeafPath> provenance; // aligned with rules
};

// One conjunctive rule per root-to-leaf path, depth-first in stored branch
// order. Leaves with coverage total 0 are skipped when drop_zero_coverage is
// set. Weight is 1.0, or (total-misclassified)/total clamped to [0.01,1]
// when weight_by_purity is set (1.0 for zero-coverage leaves). Branch labels
// or classes missing from the vocabulary throw VocabularyError naming the
// symbol; a single-leaf tree is rejected because a rule needs a nonempty
// antecedent.
CompiledRuleBase compile_tree(const DecisionTree& tree, const Vocabulary& vocab,
                              bool drop_zero_coverage = false,
                              bool weight_by_purity = false);

// Assembles the full system: every vocabulary input becomes a FIS input
// (rules leave unused variables at index 0), plus the compiled rules.
FuzzyInferenceSystem make_fis(const Vocabulary& vocab, const CompiledRuleBase& rules,
                              const std::string& name = "compiled",
                              int resolution = 1001);

// JSON sidecar documenting where each rule came from: an array, one entry
// per rule in rule order,
//   {"rule": 1, "path": "X11=VERY_GOOD & X7=B- → MULTIMEDIA",
//    "total": 2.0, "misclassified": 0.0}
std::string provenance_json(const CompiledRuleBase& rules);

struct PipelineOptions {
    bool drop_zero_coverage = false;
    bool weight_by_purity = false;
    int resolution = 1001;
    std::string name = "compiled";
};

// Tree compiled once, FIS built once, then reusable for many records.
class Pipeline {
  public:
    Pipeline(const DecisionTree& tree, Vocabulary vocab, const Schema& schema,
             GradeEncoding encoding, PipelineOptions options = {});

    const FuzzyInferenceSystem& fis() const { return fis_; }
    const CompiledRuleBase& rule_base() const { return rules_; }

    // Encodes the record (letters through the grade encoding, grade points
    // as-is), then runs inference. MISSING values are rejected; no-activation
    // propagates from infer.
    InferenceResult classify(const StudentRecord& record) const;

  private:
    Schema schema_;
    GradeEncoding encoding_;
    Vocabulary vocab_;
    CompiledRuleBase rules_;
    FuzzyInferenceSystem fis_;
};

// One-shot convenience wrapper over Pipeline.
InferenceResult pipeline_classify(const DecisionTree& tree, const Vocabulary& vocab,
                                  const Schema& schema, const GradeEncoding& encoding,
                                  const StudentRecord& record,
                                  PipelineOptions options = {});

} // namespace fc45
