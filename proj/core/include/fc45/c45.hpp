#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fc45/schema.hpp"

namespace fc45 {

/// Class label -> instance weight. Weights are real-valued so that records
/// with missing values can be split fractionally across branches.
struct ClassDistribution {
    std::map<std::string, double> counts;

    void add(const std::string& label, double weight = 1.0);
    double total() const;
    double count(const std::string& label) const;
    /// Heaviest class; ties go to the earliest label in `order` (labels not in
    /// `order` come after, in map order).
    std::string majority(const std::vector<std::string>& order) const;
};

/// Shannon entropy -sum p_i log2 p_i; 0*log 0 == 0. DomainError on an empty
/// distribution or negative counts.
double entropy(const ClassDistribution& dist);

/// Entropy(parent) - sum (|S_i|/|S|) Entropy(S_i). ConsistencyError when the
/// partition's per-class sums differ from the parent beyond 1e-9.
double information_gain(const ClassDistribution& parent,
                        const std::vector<ClassDistribution>& partition);

/// -sum (s_i/S) log2 (s_i/S); zero-size blocks are ignored. DomainError when
/// every size is zero.
double split_info(const std::vector<double>& sizes);

struct SplitCandidate {
    std::string attribute;
    bool numeric = false;
    double threshold = 0.0; ///< numeric splits only: branches <= t and > t
    double gain = 0.0;
    double split_info = 0.0;
    double gain_ratio = 0.0;
};

struct InductionParams {
    double min_leaf_weight = 2.0;
    bool use_gain_ratio = true;
    bool prune = false;
    double pruning_confidence = 0.25; ///< in (0,1)
};

struct DecisionTree {
    struct Leaf {
        std::string label;
        double total = 0.0;
        double misclassified = 0.0;
    };
    struct Branch;
    struct Node {
        std::string attribute;
        std::vector<Branch> branches; ///< ordered; induction emits domain order
    };

    std::variant<Leaf, Node> impl;

    bool is_leaf() const { return std::holds_alternative<Leaf>(impl); }
    const Leaf& leaf() const { return std::get<Leaf>(impl); }
    const Node& node() const { return std::get<Node>(impl); }
    Leaf& leaf() { return std::get<Leaf>(impl); }
    Node& node() { return std::get<Node>(impl); }

    std::size_t leaf_count() const;
    std::size_t node_count() const; ///< internal nodes + leaves
    double weight() const;          ///< sum of leaf coverage totals
};

struct DecisionTree::Branch {
    std::string label;
    DecisionTree subtree;
};

bool operator==(const DecisionTree& a, const DecisionTree& b);
bool operator==(const DecisionTree::Leaf& a, const DecisionTree::Leaf& b);

DecisionTree make_leaf(std::string label, double total, double misclassified);
DecisionTree make_node(std::string attribute,
                       std::vector<std::pair<std::string, DecisionTree>> branches);

/// Evaluates the full-domain split of every available categorical attribute
/// and, for numeric attributes, thresholds at midpoints between consecutive
/// distinct values. Candidates need gain > 0 and split_info > 0; when
/// use_gain_ratio is on the winner maximizes gain ratio among candidates with
/// at least average gain (the C4.5 restriction that keeps near-trivial numeric
/// splits from winning on split_info alone). Ties go to the earlier attribute
/// in schema order, then to the smaller threshold.
std::optional<SplitCandidate> best_split(const std::vector<StudentRecord>& records,
                                         const Schema& schema,
                                         const std::vector<int>& available_inputs,
                                         const InductionParams& params);

/// Recursive C4.5 induction. Emits a leaf when the records are pure, no split
/// qualifies, or total weight < 2 * min_leaf_weight. Empty branches become
/// leaves with the parent's majority class and coverage (0, 0). Records with
/// a missing value on the split attribute descend into every branch with
/// weight scaled by the branch's share of the known weight.
DecisionTree build_tree(const std::vector<StudentRecord>& records,
                        const Schema& schema, const InductionParams& params);

/// Bottom-up pessimistic pruning: a subtree is replaced by its majority-class
/// leaf when the Wilson upper confidence bound (at params.pruning_confidence)
/// on the leaf's error count is <= the sum over the subtree's leaves.
/// Idempotent for a fixed record set.
DecisionTree prune_tree(const DecisionTree& tree,
                        const std::vector<StudentRecord>& records,
                        const Schema& schema, const InductionParams& params);

/// What to do when a record's value names no branch at a node (possible only
/// for trees parsed from text; induced trees carry every domain value).
enum class AbsentBranchPolicy {
    Error,         ///< raise TreeMismatchError
    LargestBranch, ///< descend the branch with the greatest training weight
};

struct Classification {
    std::string label;
    double leaf_total = 0.0;
    double leaf_misclassified = 0.0;
};

/// Descends by branch label. Numeric record values are routed through
/// discretize_gpa when the node branches on band labels, or compared against
/// the threshold when it branches on "<= t" / "> t". A missing value follows
/// the branch with the greatest training weight.
Classification classify(const DecisionTree& tree, const StudentRecord& record,
                        const Schema& schema, const GpaBanding& banding,
                        AbsentBranchPolicy policy = AbsentBranchPolicy::Error);

} // namespace fc45
