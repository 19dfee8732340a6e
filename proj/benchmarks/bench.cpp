// Microbenchmarks for the hot paths: induction, inference, and the two
// text codecs. Inputs are synthesized once per benchmark outside the loop.

#include <cstdint>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "fc45/bridge.hpp"
#include "fc45/c45.hpp"
#include "fc45/fis_text.hpp"
#include "fc45/schema.hpp"
#include "fc45/synth.hpp"
#include "fc45/tree_text.hpp"

namespace {

const char* const REFERENCE_TREE =
    "X11 = VERY_GOOD\n"
    "| X7 = A-: PROGRAMMING (2.0/1.0)\n"
    "| X7 = B+: PROGRAMMING (17.0/5.0)\n"
    "| X7 = B: PROGRAMMING (27.0/2.0)\n"
    "| X7 = B-\n"
    "| | X12 = VERY_GOOD: PROGRAMMING (8.0/2.0)\n"
    "| | X12 = CUMLAUDE: PROGRAMMING (0.0)\n"
    "| | X12 = GOOD: MULTIMEDIA (2.0)\n"
    "| | X12 = FAILED: PROGRAMMING (0.0)\n"
    "| X7 = C+: WEB (4.0/1.0)\n"
    "| X7 = C: MULTIMEDIA (6.0/2.0)\n"
    "| X7 = D: PROGRAMMING (0.0)\n"
    "| X7 = E: PROGRAMMING (0.0)\n"
    "X11 = CUMLAUDE: PROGRAMMING (52.0/1.0)\n"
    "X11 = GOOD\n"
    "| X12 = VERY_GOOD: MULTIMEDIA (4.0/1.0)\n"
    "| X12 = CUMLAUDE: MULTIMEDIA (0.0)\n"
    "| X12 = GOOD: WEB (2.0)\n"
    "| X12 = FAILED: MULTIMEDIA (1.0)\n"
    "X11 = FAILED: MULTIMEDIA (1.0)\n";

void BM_BuildTree(benchmark::State& state) {
    fc45::DecisionTree labeler = fc45::parse_j48_text(REFERENCE_TREE);
    fc45::Schema schema = fc45::student_schema();
    auto records = fc45::generate_synthetic(126, schema, 42, labeler, 0.0);
    auto [banded_schema, banded] =
        fc45::apply_banding(schema, records, fc45::default_gpa_banding());
    fc45::InductionParams params;
    for (auto _ : state) {
        fc45::DecisionTree tree = fc45::build_tree(banded, banded_schema, params);
        benchmark::DoNotOptimize(tree);
    }
}
BENCHMARK(BM_BuildTree);

void BM_PipelineClassify(benchmark::State& state) {
    fc45::DecisionTree tree = fc45::parse_j48_text(REFERENCE_TREE);
    fc45::Schema schema = fc45::student_schema();
    fc45::GradeEncoding encoding = fc45::default_grade_encoding();
    fc45::Vocabulary vocab = fc45::build_default_vocabulary(
        schema, encoding, fc45::default_gpa_banding(), fc45::VocabularyMode::Crisp);
    fc45::Pipeline pipeline(tree, vocab, schema, encoding);
    fc45::StudentRecord rec;
    rec.id = "S1";
    for (int i = 0; i < 8; ++i) rec.values.push_back(std::string("B"));
    for (int i = 0; i < 4; ++i) rec.values.push_back(3.0);
    for (auto _ : state) {
        fc45::InferenceResult result = pipeline.classify(rec);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_PipelineClassify);

void BM_ParseTreeText(benchmark::State& state) {
    std::string text = REFERENCE_TREE;
    for (auto _ : state) {
        fc45::DecisionTree tree = fc45::parse_j48_text(text);
        benchmark::DoNotOptimize(tree);
    }
}
BENCHMARK(BM_ParseTreeText);

void BM_FisRoundTrip(benchmark::State& state) {
    fc45::DecisionTree tree = fc45::parse_j48_text(REFERENCE_TREE);
    fc45::Schema schema = fc45::student_schema();
    fc45::GradeEncoding encoding = fc45::default_grade_encoding();
    fc45::Vocabulary vocab = fc45::build_default_vocabulary(
        schema, encoding, fc45::default_gpa_banding(), fc45::VocabularyMode::Crisp);
    fc45::CompiledRuleBase rules = fc45::compile_tree(tree, vocab);
    fc45::FuzzyInferenceSystem fis = fc45::make_fis(vocab, rules);
    for (auto _ : state) {
        std::string text = fc45::write_fis(fis);
        fc45::FuzzyInferenceSystem back = fc45::read_fis(text);
        benchmark::DoNotOptimize(back);
    }
}
BENCHMARK(BM_FisRoundTrip);

} // namespace

BENCHMARK_MAIN();
