#pragma once

#include <string>

#include "fc45/c45.hpp"

namespace fc45 {

// Weka-style indented tree dump, one branch per line with "| " per depth:
//
//   X11 = VERY_GOOD
//   | X7 = A-: PROGRAMMING (2.0/1.0)
//   X11 = CUMLAUDE: PROGRAMMING (52.0/1.0)
//
// Numeric tests print as "attr <= 77.5" / "attr > 77.5". Leaf coverage is
// "(total)" or "(total/misclassified)"; a single-leaf tree is one line
// "CLASS (total)". Parse errors carry the 1-based line number.
DecisionTree parse_j48_text(const std::string& text);

// Inverse of parse. Branches are emitted in stored order (induction stores
// them in attribute-domain order), coverage with two decimals and a trailing
// zero trimmed, "/misclassified" omitted when it formats as zero. Output is
// newline-terminated. Throws if a node has no branches.
std::string print_j48_text(const DecisionTree& tree);

} // namespace fc45
