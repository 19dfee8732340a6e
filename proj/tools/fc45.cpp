// Command-line surface for the toolkit: train a tree, compile it into a
// Mamdani rule base, run inference, evaluate agreement, generate data.
// stdout carries only the produced artifact; diagnostics go to stderr.
// Exit codes: 0 success, 2 usage/data error, 3 no rule fired.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fc45/bridge.hpp"
#include "fc45/c45.hpp"
#include "fc45/config.hpp"
#include "fc45/csv.hpp"
#include "fc45/errors.hpp"
#include "fc45/eval.hpp"
#include "fc45/fis_text.hpp"
#include "fc45/fuzzy.hpp"
#include "fc45/synth.hpp"
#include "fc45/tree_json.hpp"
#include "fc45/tree_text.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fc45::DataError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fc45::DataError("cannot write file: " + path);
    out << content;
}

fc45::ToolkitConfig config_or_default(const std::string& path) {
    if (path.empty()) return {};
    return fc45::load_config(path);
}

// accepts both serialization formats: JSON (tagged objects) and tree text
fc45::DecisionTree load_tree(const std::string& path) {
    std::string text = slurp(path);
    auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{')
        return fc45::tree_from_json(text);
    return fc45::parse_j48_text(text);
}

double encode_input(const fc45::AttributeSpec& attr, const fc45::Value& v,
                    const fc45::GradeEncoding& encoding, const std::string& id) {
    if (fc45::is_missing(v))
        throw fc45::DataError("record " + id + " is missing " + attr.name);
    if (std::holds_alternative<std::string>(v))
        return fc45::encode_grade(std::get<std::string>(v), encoding);
    return std::get<double>(v);
}

struct TrainOptions {
    std::string csv, config, out;
    bool prune = false;
    double confidence = 0.25;
    double min_leaf = 2.0;
};

int run_train(const TrainOptions& opt) {
    fc45::ToolkitConfig cfg = config_or_default(opt.config);
    std::string text = slurp(opt.csv);
    fc45::Schema schema = fc45::infer_schema(text);
    auto records = fc45::parse_csv(text, schema);
    auto [banded_schema, banded_records] =
        fc45::apply_banding(schema, records, cfg.banding);

    fc45::InductionParams params;
    params.prune = opt.prune;
    params.pruning_confidence = opt.confidence;
    params.min_leaf_weight = opt.min_leaf;
    fc45::DecisionTree tree = fc45::build_tree(banded_records, banded_schema, params);

    std::cout << fc45::print_j48_text(tree);
    if (!opt.out.empty()) spill(opt.out, fc45::tree_to_json(tree));
    return 0;
}

struct CompileOptions {
    std::string tree, config, out, provenance, name = "compiled";
    bool drop_zero_coverage = false;
    bool weight_by_purity = false;
    bool graded = false;
};

int run_compile(const CompileOptions& opt) {
    fc45::ToolkitConfig cfg = config_or_default(opt.config);
    fc45::DecisionTree tree = load_tree(opt.tree);
    fc45::Vocabulary vocab = fc45::build_default_vocabulary(
        fc45::student_schema(), cfg.encoding, cfg.banding,
        opt.graded ? fc45::VocabularyMode::Graded : fc45::VocabularyMode::Crisp);
    fc45::CompiledRuleBase rules =
        fc45::compile_tree(tree, vocab, opt.drop_zero_coverage, opt.weight_by_purity);
    fc45::FuzzyInferenceSystem fis = fc45::make_fis(vocab, rules, opt.name);

    std::string fis_text = fc45::write_fis(fis);
    if (opt.out.empty())
        std::cout << fis_text;
    else
        spill(opt.out, fis_text);

    std::string sidecar = opt.provenance;
    if (sidecar.empty() && !opt.out.empty()) sidecar = opt.out + ".provenance.json";
    if (!sidecar.empty()) spill(sidecar, fc45::provenance_json(rules));
    return 0;
}

struct InferOptions {
    std::string fis, csv, config;
    std::vector<std::string> sets;
    long row = 1;
    int resolution = 1001;
};

int run_infer(const InferOptions& opt) {
    fc45::ToolkitConfig cfg = config_or_default(opt.config);
    fc45::FuzzyInferenceSystem fis = fc45::read_fis(slurp(opt.fis));
    fis.resolution = opt.resolution;

    if (opt.csv.empty() && opt.sets.empty())
        throw fc45::DataError("provide the input vector via --csv/--row or --set");

    std::map<std::string, double> crisp;
    if (!opt.csv.empty()) {
        std::string text = slurp(opt.csv);
        fc45::Schema schema = fc45::infer_schema(text);
        auto records = fc45::parse_csv(text, schema);
        if (opt.row < 1 || opt.row > static_cast<long>(records.size()))
            throw fc45::DataError("row " + std::to_string(opt.row) +
                                  " out of range, CSV has " +
                                  std::to_string(records.size()) + " data rows");
        const auto& rec = records[static_cast<std::size_t>(opt.row - 1)];
        for (std::size_t i = 0; i < schema.inputs.size(); ++i)
            crisp[schema.inputs[i].name] =
                encode_input(schema.inputs[i], rec.values[i], cfg.encoding, rec.id);
    }
    for (const auto& assignment : opt.sets) {
        auto eq = assignment.find('=');
        if (eq == std::string::npos || eq == 0)
            throw fc45::DataError("--set expects NAME=VALUE, got \"" + assignment +
                                  "\"");
        std::string name = assignment.substr(0, eq);
        std::string value = assignment.substr(eq + 1);
        double x = 0.0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
        if (ec != std::errc{} || ptr != value.data() + value.size())
            x = fc45::encode_grade(value, cfg.encoding); // letter grade symbol
        crisp[name] = x;
    }

    fc45::InferenceResult result = fc45::infer(fis, crisp);

    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", result.crisp);
    std::cout << "label: " << result.label << "\n";
    std::cout << "crisp: " << buf << "\n";
    std::cout << "fired rules:\n";
    std::vector<std::size_t> fired;
    for (std::size_t r = 0; r < result.rule_strengths.size(); ++r)
        if (result.rule_strengths[r] > 0.0) fired.push_back(r);
    std::stable_sort(fired.begin(), fired.end(), [&](std::size_t a, std::size_t b) {
        return result.rule_strengths[a] > result.rule_strengths[b];
    });
    for (std::size_t r : fired) {
        const fc45::FuzzyRule& rule = fis.rules[r];
        std::snprintf(buf, sizeof(buf), "%.4f", result.rule_strengths[r]);
        std::cout << "  [" << (r + 1) << "] strength=" << buf << " IF ";
        for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
            if (i) std::cout << " AND ";
            std::cout << rule.antecedent[i].first << " is "
                      << rule.antecedent[i].second;
        }
        std::cout << " THEN " << rule.consequent.first << " is "
                  << rule.consequent.second << "\n";
    }
    return 0;
}

struct EvalOptions {
    std::string fis, tree, csv, config;
    bool json = false;
    bool drop_zero_coverage = false;
    bool weight_by_purity = false;
    bool graded = false;
    int resolution = 1001;
};

int run_eval(const EvalOptions& opt) {
    fc45::ToolkitConfig cfg = config_or_default(opt.config);
    if (opt.fis.empty() == opt.tree.empty())
        throw fc45::DataError("provide exactly one of --fis or --tree");

    std::string text = slurp(opt.csv);
    fc45::Schema schema = fc45::infer_schema(text);
    auto records = fc45::parse_csv(text, schema);

    fc45::FuzzyInferenceSystem fis;
    if (!opt.fis.empty()) {
        fis = fc45::read_fis(slurp(opt.fis));
    } else {
        fc45::DecisionTree tree = load_tree(opt.tree);
        fc45::Vocabulary vocab = fc45::build_default_vocabulary(
            schema, cfg.encoding, cfg.banding,
            opt.graded ? fc45::VocabularyMode::Graded : fc45::VocabularyMode::Crisp);
        fc45::CompiledRuleBase rules = fc45::compile_tree(
            tree, vocab, opt.drop_zero_coverage, opt.weight_by_purity);
        fis = fc45::make_fis(vocab, rules);
    }
    fis.resolution = opt.resolution;

    auto recommend = [&](const fc45::StudentRecord& rec) {
        std::map<std::string, double> crisp;
        for (std::size_t i = 0; i < schema.inputs.size(); ++i)
            crisp[schema.inputs[i].name] =
                encode_input(schema.inputs[i], rec.values[i], cfg.encoding, rec.id);
        return fc45::infer(fis, crisp).label;
    };
    fc45::AgreementReport report = fc45::evaluate(records, recommend);

    if (opt.json) {
        std::cout << fc45::report_json(report);
        return 0;
    }
    char buf[32];
    std::cout << "total: " << report.total << "\n";
    std::cout << "matches: " << report.matches << "\n";
    std::snprintf(buf, sizeof(buf), "%.2f", report.agreement_pct);
    std::cout << "agreement: " << buf << "%\n";
    std::snprintf(buf, sizeof(buf), "%.2f", report.mismatch_pct);
    std::cout << "mismatch: " << buf << "%\n\n";
    std::cout << fc45::render_mismatch_table(report);
    return 0;
}

struct GenerateOptions {
    std::string tree, config;
    std::size_t n = 126;
    std::uint64_t seed = 42;
    double noise = 0.0;
};

int run_generate(const GenerateOptions& opt) {
    fc45::ToolkitConfig cfg = config_or_default(opt.config);
    fc45::DecisionTree tree = load_tree(opt.tree);
    fc45::Schema schema = fc45::student_schema();
    auto records =
        fc45::generate_synthetic(opt.n, schema, opt.seed, tree, opt.noise, cfg.banding);
    std::cout << fc45::write_csv(records, schema);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy-C4.5 toolkit: C4.5 induction compiled into a Mamdani "
                 "fuzzy rule base"};
    app.require_subcommand(1);

    TrainOptions train_opt;
    CLI::App* train = app.add_subcommand("train", "induce a tree from a labeled CSV");
    train->add_option("--csv", train_opt.csv, "labeled training CSV")->required();
    train->add_option("--config", train_opt.config, "grade/band overrides");
    train->add_option("--out", train_opt.out, "also write the tree as JSON here");
    train->add_flag("--prune", train_opt.prune, "pessimistic pruning");
    train->add_option("--confidence", train_opt.confidence,
                      "pruning confidence, default 0.25");
    train->add_option("--min-leaf", train_opt.min_leaf,
                      "minimum leaf weight, default 2.0");

    CompileOptions compile_opt;
    CLI::App* compile =
        app.add_subcommand("compile", "compile a tree into a Mamdani FIS");
    compile->add_option("--tree", compile_opt.tree, "tree file (text or JSON)")
        ->required();
    compile->add_option("--config", compile_opt.config, "grade/band overrides");
    compile->add_option("--out", compile_opt.out,
                        "FIS output path (stdout when omitted)");
    compile->add_option("--provenance", compile_opt.provenance,
                        "provenance sidecar path (default <out>.provenance.json)");
    compile->add_option("--name", compile_opt.name, "system name");
    compile->add_flag("--drop-zero-coverage", compile_opt.drop_zero_coverage,
                      "skip leaves with coverage 0");
    compile->add_flag("--weight-by-purity", compile_opt.weight_by_purity,
                      "rule weight = leaf purity instead of 1.0");
    compile->add_flag("--graded", compile_opt.graded,
                      "overlapping membership functions instead of crisp");

    InferOptions infer_opt;
    CLI::App* infer = app.add_subcommand("infer", "classify one input vector");
    infer->add_option("--fis", infer_opt.fis, "FIS file")->required();
    infer->add_option("--csv", infer_opt.csv, "take the input vector from this CSV");
    infer->add_option("--row", infer_opt.row, "1-based data row of --csv, default 1");
    infer->add_option("--set", infer_opt.sets,
                      "input assignment NAME=VALUE (letter grade or number), "
                      "repeatable, overrides --csv values");
    infer->add_option("--config", infer_opt.config, "grade/band overrides");
    infer->add_option("--resolution", infer_opt.resolution,
                      "output samples, default 1001");

    EvalOptions eval_opt;
    CLI::App* eval =
        app.add_subcommand("eval", "agreement report over a labeled CSV");
    eval->add_option("--fis", eval_opt.fis, "FIS file");
    eval->add_option("--tree", eval_opt.tree, "tree file (compiled on the fly)");
    eval->add_option("--csv", eval_opt.csv, "labeled CSV")->required();
    eval->add_option("--config", eval_opt.config, "grade/band overrides");
    eval->add_flag("--json", eval_opt.json, "machine-readable report");
    eval->add_flag("--drop-zero-coverage", eval_opt.drop_zero_coverage,
                   "skip leaves with coverage 0 (with --tree)");
    eval->add_flag("--weight-by-purity", eval_opt.weight_by_purity,
                   "rule weight = leaf purity (with --tree)");
    eval->add_flag("--graded", eval_opt.graded,
                   "overlapping membership functions (with --tree)");
    eval->add_option("--resolution", eval_opt.resolution,
                     "output samples, default 1001");

    GenerateOptions gen_opt;
    CLI::App* generate =
        app.add_subcommand("generate", "sample a labeled synthetic CSV from a tree");
    generate->add_option("--tree", gen_opt.tree, "tree file labels the samples")
        ->required();
    generate->add_option("--n", gen_opt.n, "record count, default 126");
    generate->add_option("--seed", gen_opt.seed, "RNG seed, default 42");
    generate->add_option("--noise", gen_opt.noise,
                         "label flip probability in [0,1], default 0");
    generate->add_option("--config", gen_opt.config, "grade/band overrides");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (train->parsed()) return run_train(train_opt);
        if (compile->parsed()) return run_compile(compile_opt);
        if (infer->parsed()) return run_infer(infer_opt);
        if (eval->parsed()) return run_eval(eval_opt);
        if (generate->parsed()) return run_generate(gen_opt);
    } catch (const fc45::NoActivationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
