#include "fc45/c45.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "fc45/errors.hpp"

namespace fc45 {
namespace {

constexpr double kSplitInfoGuard = 1e-10; // skip candidates below this
constexpr double kPurityTolerance = 1e-12;

double log2_safe(double x) { return std::log2(x); }

std::string format_threshold(double t) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), t);
    return std::string(buf, ptr);
}

// Inverse standard normal CDF, Acklam's rational approximation
// (relative error < 1.15e-9 over (0,1)).
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p outside (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > 1 - plow) {
        q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

// Estimated error count at a would-be leaf: N times the Wilson upper
// confidence bound on the error rate E/N at the given confidence level.
double pessimistic_errors(double errors, double n, double confidence) {
    if (n <= 0.0) return 0.0;
    double z = normal_quantile(1.0 - confidence);
    double f = errors / n;
    double z2 = z * z;
    double ub = (f + z2 / (2 * n) + z * std::sqrt(f * (1 - f) / n + z2 / (4 * n * n))) /
                (1 + z2 / n);
    return n * ub;
}

struct WRow {
    const StudentRecord* rec;
    double w;
};

ClassDistribution distribution_of(const std::vector<WRow>& rows) {
    ClassDistribution d;
    for (const auto& r : rows) {
        if (!r.rec->observed_major)
            throw DataError("record " + r.rec->id + " has no class label");
        d.add(*r.rec->observed_major, r.w);
    }
    return d;
}

bool is_threshold_label(const std::string& label) {
    return label.rfind("<= ", 0) == 0 || label.rfind("> ", 0) == 0;
}

double threshold_of_label(const std::string& label) {
    std::size_t pos = label.rfind("<= ", 0) == 0 ? 3 : 2;
    double t = 0.0;
    auto [ptr, ec] = std::from_chars(label.data() + pos, label.data() + label.size(), t);
    if (ec != std::errc{})
        throw TreeMismatchError("malformed threshold branch label: " + label);
    return t;
}

} // namespace

void ClassDistribution::add(const std::string& label, double weight) {
    counts[label] += weight;
}

double ClassDistribution::total() const {
    double t = 0.0;
    for (const auto& [_, c] : counts) t += c;
    return t;
}

double ClassDistribution::count(const std::string& label) const {
    auto it = counts.find(label);
    return it == counts.end() ? 0.0 : it->second;
}

std::string ClassDistribution::majority(const std::vector<std::string>& order) const {
    if (counts.empty()) throw DomainError("majority of empty distribution");
    std::string best;
    double best_count = -1.0;
    auto consider = [&](const std::string& label) {
        auto it = counts.find(label);
        if (it == counts.end()) return;
        if (it->second > best_count) {
            best = label;
            best_count = it->second;
        }
    };
    for (const auto& label : order) consider(label);
    for (const auto& [label, _] : counts) // labels outside the preference order
        if (std::find(order.begin(), order.end(), label) == order.end()) consider(label);
    return best;
}

double entropy(const ClassDistribution& dist) {
    double total = 0.0;
    for (const auto& [label, c] : dist.counts) {
        if (c < 0.0) throw DomainError("negative class count for " + label);
        total += c;
    }
    if (total <= 0.0) throw DomainError("entropy of empty distribution");
    double h = 0.0;
    for (const auto& [_, c] : dist.counts) {
        if (c <= 0.0) continue;
        double p = c / total;
        h -= p * log2_safe(p);
    }
    return h;
}

double information_gain(const ClassDistribution& parent,
                        const std::vector<ClassDistribution>& partition) {
    std::map<std::string, double> sums;
    for (const auto& block : partition)
        for (const auto& [label, c] : block.counts) sums[label] += c;
    for (const auto& [label, c] : sums)
        if (std::abs(c - parent.count(label)) > 1e-9)
            throw ConsistencyError("partition does not sum to parent for class " + label);
    for (const auto& [label, c] : parent.counts)
        if (std::abs(c - sums[label]) > 1e-9)
            throw ConsistencyError("partition does not sum to parent for class " + label);

    double total = parent.total();
    double h = entropy(parent);
    for (const auto& block : partition) {
        double bt = block.total();
        if (bt <= 0.0) continue;
        h -= bt / total * entropy(block);
    }
    return h;
}

double split_info(const std::vector<double>& sizes) {
    double total = 0.0;
    for (double s : sizes) {
        if (s < 0.0) throw DomainError("negative partition size");
        total += s;
    }
    if (total <= 0.0) throw DomainError("split_info of all-zero sizes");
    double h = 0.0;
    for (double s : sizes) {
        if (s <= 0.0) continue;
        double p = s / total;
        h -= p * log2_safe(p);
    }
    return h;
}

std::size_t DecisionTree::leaf_count() const {
    if (is_leaf()) return 1;
    std::size_t n = 0;
    for (const auto& b : node().branches) n += b.subtree.leaf_count();
    return n;
}

std::size_t DecisionTree::node_count() const {
    if (is_leaf()) return 1;
    std::size_t n = 1;
    for (const auto& b : node().branches) n += b.subtree.node_count();
    return n;
}

double DecisionTree::weight() const {
    if (is_leaf()) return leaf().total;
    double w = 0.0;
    for (const auto& b : node().branches) w += b.subtree.weight();
    return w;
}

bool operator==(const DecisionTree::Leaf& a, const DecisionTree::Leaf& b) {
    return a.label == b.label && a.total == b.total &&
           a.misclassified == b.misclassified;
}

bool operator==(const DecisionTree& a, const DecisionTree& b) {
    if (a.is_leaf() != b.is_leaf()) return false;
    if (a.is_leaf()) return a.leaf() == b.leaf();
    const auto& na = a.node();
    const auto& nb = b.node();
    if (na.attribute != nb.attribute || na.branches.size() != nb.branches.size())
        return false;
    for (std::size_t i = 0; i < na.branches.size(); ++i) {
        if (na.branches[i].label != nb.branches[i].label) return false;
        if (!(na.branches[i].subtree == nb.branches[i].subtree)) return false;
    }
    return true;
}

DecisionTree make_leaf(std::string label, double total, double misclassified) {
    return DecisionTree{DecisionTree::Leaf{std::move(label), total, misclassified}};
}

DecisionTree make_node(std::string attribute,
                       std::vector<std::pair<std::string, DecisionTree>> branches) {
    DecisionTree::Node n;
    n.attribute = std::move(attribute);
    for (auto& [label, sub] : branches)
        n.branches.push_back({std::move(label), std::move(sub)});
    return DecisionTree{std::move(n)};
}

namespace {

// Per-attribute split evaluation on weighted rows. Gains are computed over
// the rows with a known value and scaled by the known-weight fraction, so an
// attribute that is mostly missing cannot win on a sliver of the data.
std::optional<SplitCandidate> evaluate_attribute(const std::vector<WRow>& rows,
                                                 const AttributeSpec& attr,
                                                 int attr_index, double total_weight) {
    std::vector<const WRow*> known;
    double known_weight = 0.0;
    for (const auto& r : rows) {
        if (is_missing(r.rec->values[attr_index])) continue;
        known.push_back(&r);
        known_weight += r.w;
    }
    if (known_weight <= 0.0) return std::nullopt;
    double known_fraction = known_weight / total_weight;

    ClassDistribution parent;
    for (const auto* r : known) parent.add(*r->rec->observed_major, r->w);
    double parent_entropy = entropy(parent);

    if (is_categorical(attr.kind)) {
        std::vector<ClassDistribution> blocks(attr.domain.size());
        std::vector<double> sizes(attr.domain.size(), 0.0);
        for (const auto* r : known) {
            const auto& sym = std::get<std::string>(r->rec->values[attr_index]);
            int idx = attr.symbol_index(sym);
            if (idx < 0)
                throw DataError("record " + r->rec->id + ": value \"" + sym +
                                "\" not in domain of " + attr.name);
            blocks[idx].add(*r->rec->observed_major, r->w);
            sizes[idx] += r->w;
        }
        double h = parent_entropy;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (sizes[i] <= 0.0) continue;
            h -= sizes[i] / known_weight * entropy(blocks[i]);
        }
        double gain = known_fraction * h;
        double si = split_info(sizes);
        if (gain <= 0.0 || si < kSplitInfoGuard) return std::nullopt;
        return SplitCandidate{attr.name, false, 0.0, gain, si, gain / si};
    }

    // numeric: thresholds at midpoints between consecutive distinct values
    std::vector<std::pair<double, const WRow*>> sorted;
    sorted.reserve(known.size());
    for (const auto* r : known)
        sorted.push_back({std::get<double>(r->rec->values[attr_index]), r});
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::optional<SplitCandidate> best;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (sorted[i].first == sorted[i + 1].first) continue;
        double t = (sorted[i].first + sorted[i + 1].first) / 2.0;
        ClassDistribution lo, hi;
        double lo_w = 0.0, hi_w = 0.0;
        for (const auto& [v, r] : sorted) {
            if (v <= t) {
                lo.add(*r->rec->observed_major, r->w);
                lo_w += r->w;
            } else {
                hi.add(*r->rec->observed_major, r->w);
                hi_w += r->w;
            }
        }
        double h = parent_entropy - lo_w / known_weight * entropy(lo) -
                   hi_w / known_weight * entropy(hi);
        double gain = known_fraction * h;
        double si = split_info({lo_w, hi_w});
        if (gain <= 0.0 || si < kSplitInfoGuard) continue;
        if (!best || gain > best->gain)
            best = SplitCandidate{attr.name, true, t, gain, si, gain / si};
    }
    return best;
}

std::optional<SplitCandidate> best_split_weighted(const std::vector<WRow>& rows,
                                                  const Schema& schema,
                                                  const std::vector<int>& available,
                                                  const InductionParams& params) {
    double total_weight = 0.0;
    for (const auto& r : rows) total_weight += r.w;
    if (total_weight <= 0.0) return std::nullopt;

    std::vector<SplitCandidate> candidates;
    for (int idx : available) {
        auto c = evaluate_attribute(rows, schema.inputs[idx], idx, total_weight);
        if (c) candidates.push_back(*c);
    }
    if (candidates.empty()) return std::nullopt;

    if (!params.use_gain_ratio) {
        const SplitCandidate* best = &candidates[0];
        for (const auto& c : candidates)
            if (c.gain > best->gain) best = &c;
        return *best;
    }

    double avg_gain = 0.0;
    for (const auto& c : candidates) avg_gain += c.gain;
    avg_gain /= static_cast<double>(candidates.size());

    const SplitCandidate* best = nullptr;
    for (const auto& c : candidates) {
        if (c.gain < avg_gain) continue;
        if (!best || c.gain_ratio > best->gain_ratio) best = &c;
    }
    if (!best) { // rounding pushed the average above the max; fall back to gain
        best = &candidates[0];
        for (const auto& c : candidates)
            if (c.gain > best->gain) best = &c;
    }
    return *best;
}

struct Induction {
    const Schema& schema;
    const InductionParams& params;

    DecisionTree build(std::vector<WRow> rows, std::vector<int> available) {
        ClassDistribution dist = distribution_of(rows);
        double total = dist.total();
        std::string majority = dist.majority(schema.class_attribute.domain);
        double mis = total - dist.count(majority);

        if (mis <= kPurityTolerance || total < 2.0 * params.min_leaf_weight)
            return make_leaf(majority, total, mis);

        auto cand = best_split_weighted(rows, schema, available, params);
        if (!cand) return make_leaf(majority, total, mis);

        int attr_index = schema.input_index(cand->attribute);
        const AttributeSpec& attr = schema.inputs[attr_index];

        std::vector<WRow> known;
        std::vector<WRow> missing;
        for (const auto& r : rows)
            (is_missing(r.rec->values[attr_index]) ? missing : known).push_back(r);
        double known_weight = 0.0;
        for (const auto& r : known) known_weight += r.w;

        DecisionTree::Node node;
        node.attribute = cand->attribute;

        auto descend = [&](const std::string& label, std::vector<WRow> subset,
                           double subset_weight, std::vector<int> child_avail) {
            if (subset_weight <= 0.0) {
                node.branches.push_back({label, make_leaf(majority, 0.0, 0.0)});
                return;
            }
            // fractional-instance handling: missing rows follow every branch,
            // carrying the branch's share of the known weight
            for (const auto& m : missing) {
                double w = m.w * (subset_weight / known_weight);
                if (w > 0.0) subset.push_back({m.rec, w});
            }
            node.branches.push_back({label, build(std::move(subset), std::move(child_avail))});
        };

        if (cand->numeric) {
            std::vector<WRow> lo, hi;
            double lo_w = 0.0, hi_w = 0.0;
            for (const auto& r : known) {
                double v = std::get<double>(r.rec->values[attr_index]);
                if (v <= cand->threshold) {
                    lo.push_back(r);
                    lo_w += r.w;
                } else {
                    hi.push_back(r);
                    hi_w += r.w;
                }
            }
            std::string t = format_threshold(cand->threshold);
            descend("<= " + t, std::move(lo), lo_w, available);
            descend("> " + t, std::move(hi), hi_w, available);
        } else {
            std::vector<int> child_avail;
            for (int i : available)
                if (i != attr_index) child_avail.push_back(i);
            for (const auto& sym : attr.domain) {
                std::vector<WRow> subset;
                double w = 0.0;
                for (const auto& r : known) {
                    if (std::get<std::string>(r.rec->values[attr_index]) == sym) {
                        subset.push_back(r);
                        w += r.w;
                    }
                }
                descend(sym, std::move(subset), w, child_avail);
            }
        }
        return DecisionTree{std::move(node)};
    }
};

} // namespace

std::optional<SplitCandidate> best_split(const std::vector<StudentRecord>& records,
                                         const Schema& schema,
                                         const std::vector<int>& available_inputs,
                                         const InductionParams& params) {
    if (records.empty()) return std::nullopt;
    std::vector<WRow> rows;
    rows.reserve(records.size());
    for (const auto& r : records) rows.push_back({&r, 1.0});
    return best_split_weighted(rows, schema, available_inputs, params);
}

DecisionTree build_tree(const std::vector<StudentRecord>& records,
                        const Schema& schema, const InductionParams& params) {
    if (records.empty()) throw DomainError("build_tree: empty record list");
    schema.validate();
    for (const auto& r : records) {
        if (!r.observed_major)
            throw DataError("record " + r.id + " has no class label");
        if (r.values.size() != schema.inputs.size())
            throw DataError("record " + r.id + " has wrong arity");
    }
    std::vector<WRow> rows;
    rows.reserve(records.size());
    for (const auto& r : records) rows.push_back({&r, 1.0});
    std::vector<int> available(schema.inputs.size());
    for (std::size_t i = 0; i < available.size(); ++i) available[i] = static_cast<int>(i);

    Induction ind{schema, params};
    DecisionTree tree = ind.build(std::move(rows), std::move(available));
    if (params.prune) tree = prune_tree(tree, records, schema, params);
    return tree;
}

namespace {

// Routes weighted rows into a node's branches; a row whose value names no
// branch is treated like a missing value (fractional descent).
std::vector<std::vector<WRow>> route_rows(const DecisionTree::Node& node,
                                          const std::vector<WRow>& rows,
                                          const Schema& schema) {
    int attr_index = schema.input_index(node.attribute);
    if (attr_index < 0)
        throw TreeMismatchError("tree attribute not in schema: " + node.attribute);

    bool threshold_node = !node.branches.empty() &&
                          is_threshold_label(node.branches.front().label);

    std::vector<std::vector<WRow>> out(node.branches.size());
    std::vector<double> known_w(node.branches.size(), 0.0);
    std::vector<WRow> unrouted;

    auto branch_for = [&](const Value& v) -> int {
        if (is_missing(v)) return -1;
        if (threshold_node) {
            if (!std::holds_alternative<double>(v)) return -1;
            double x = std::get<double>(v);
            for (std::size_t b = 0; b < node.branches.size(); ++b) {
                const auto& label = node.branches[b].label;
                double t = threshold_of_label(label);
                bool le = label.rfind("<= ", 0) == 0;
                if ((le && x <= t) || (!le && x > t)) return static_cast<int>(b);
            }
            return -1;
        }
        if (!std::holds_alternative<std::string>(v)) return -1;
        const auto& sym = std::get<std::string>(v);
        for (std::size_t b = 0; b < node.branches.size(); ++b)
            if (node.branches[b].label == sym) return static_cast<int>(b);
        return -1;
    };

    for (const auto& r : rows) {
        int b = branch_for(r.rec->values[attr_index]);
        if (b < 0) {
            unrouted.push_back(r);
        } else {
            out[b].push_back(r);
            known_w[b] += r.w;
        }
    }
    double total_known = 0.0;
    for (double w : known_w) total_known += w;
    if (total_known > 0.0) {
        for (const auto& r : unrouted)
            for (std::size_t b = 0; b < out.size(); ++b) {
                double w = r.w * (known_w[b] / total_known);
                if (w > 0.0) out[b].push_back({r.rec, w});
            }
    }
    return out;
}

struct Pruner {
    const Schema& schema;
    const InductionParams& params;

    // returns the pruned subtree and its pessimistic error estimate
    std::pair<DecisionTree, double> prune(const DecisionTree& tree,
                                          const std::vector<WRow>& rows) {
        if (tree.is_leaf()) {
            double n = 0.0, errors = 0.0;
            for (const auto& r : rows) {
                n += r.w;
                if (*r.rec->observed_major != tree.leaf().label) errors += r.w;
            }
            return {tree, pessimistic_errors(errors, n, params.pruning_confidence)};
        }

        const auto& node = tree.node();
        auto routed = route_rows(node, rows, schema);

        DecisionTree::Node pruned_node;
        pruned_node.attribute = node.attribute;
        double subtree_est = 0.0;
        for (std::size_t b = 0; b < node.branches.size(); ++b) {
            auto [sub, est] = prune(node.branches[b].subtree, routed[b]);
            subtree_est += est;
            pruned_node.branches.push_back({node.branches[b].label, std::move(sub)});
        }

        ClassDistribution dist;
        double n = 0.0;
        for (const auto& r : rows) {
            dist.add(*r.rec->observed_major, r.w);
            n += r.w;
        }
        if (dist.counts.empty())
            return {DecisionTree{std::move(pruned_node)}, subtree_est};
        std::string majority = dist.majority(schema.class_attribute.domain);
        double leaf_errors = n - dist.count(majority);
        double leaf_est = pessimistic_errors(leaf_errors, n, params.pruning_confidence);

        if (leaf_est <= subtree_est)
            return {make_leaf(majority, n, leaf_errors), leaf_est};
        return {DecisionTree{std::move(pruned_node)}, subtree_est};
    }
};

} // namespace

DecisionTree prune_tree(const DecisionTree& tree,
                        const std::vector<StudentRecord>& records,
                        const Schema& schema, const InductionParams& params) {
    if (!(params.pruning_confidence > 0.0 && params.pruning_confidence < 1.0))
        throw DomainError("pruning_confidence must lie in (0,1)");
    for (const auto& r : records)
        if (!r.observed_major)
            throw DataError("record " + r.id + " has no class label");
    std::vector<WRow> rows;
    rows.reserve(records.size());
    for (const auto& r : records) rows.push_back({&r, 1.0});
    Pruner pruner{schema, params};
    return pruner.prune(tree, rows).first;
}

Classification classify(const DecisionTree& tree, const StudentRecord& record,
                        const Schema& schema, const GpaBanding& banding,
                        AbsentBranchPolicy policy) {
    const DecisionTree* cur = &tree;
    while (!cur->is_leaf()) {
        const auto& node = cur->node();
        if (node.branches.empty())
            throw TreeMismatchError("node " + node.attribute + " has no branches");
        int attr_index = schema.input_index(node.attribute);
        if (attr_index < 0)
            throw TreeMismatchError("tree attribute not in schema: " + node.attribute);
        const Value& v = record.values.at(attr_index);

        auto largest_branch = [&]() -> const DecisionTree* {
            const DecisionTree* best = &node.branches.front().subtree;
            double best_w = best->weight();
            for (const auto& b : node.branches) {
                double w = b.subtree.weight();
                if (w > best_w) {
                    best = &b.subtree;
                    best_w = w;
                }
            }
            return best;
        };

        if (is_missing(v)) {
            cur = largest_branch();
            continue;
        }

        bool threshold_node = is_threshold_label(node.branches.front().label);
        const DecisionTree* next = nullptr;
        if (threshold_node) {
            if (!std::holds_alternative<double>(v))
                throw TreeMismatchError("numeric branch on symbolic value at " +
                                        node.attribute);
            double x = std::get<double>(v);
            for (const auto& b : node.branches) {
                double t = threshold_of_label(b.label);
                bool le = b.label.rfind("<= ", 0) == 0;
                if ((le && x <= t) || (!le && x > t)) {
                    next = &b.subtree;
                    break;
                }
            }
        } else {
            std::string sym;
            if (std::holds_alternative<std::string>(v)) {
                sym = std::get<std::string>(v);
            } else {
                // numeric value against band-label branches
                sym = discretize_gpa(std::get<double>(v), banding);
            }
            for (const auto& b : node.branches) {
                if (b.label == sym) {
                    next = &b.subtree;
                    break;
                }
            }
            if (!next && policy == AbsentBranchPolicy::Error)
                throw TreeMismatchError("no branch for " + node.attribute + " = " + sym);
        }
        if (!next) {
            if (policy == AbsentBranchPolicy::Error)
                throw TreeMismatchError("no branch matched at " + node.attribute);
            next = largest_branch();
        }
        cur = next;
    }
    const auto& leaf = cur->leaf();
    return {leaf.label, leaf.total, leaf.misclassified};
}

} // namespace fc45
