#pragma once

#include <string>

#include "fc45/c45.hpp"

namespace fc45 {

// Structured tree serialization for tooling. Tagged objects:
//
//   {"leaf": {"label": "PROGRAMMING", "total": 52.0, "misclassified": 1.0}}
//   {"node": {"attribute": "X11",
//             "branches": [{"label": "VERY_GOOD", "subtree": {...}}, ...]}}
//
// Branch order is preserved. indent < 0 emits compact single-line JSON.
std::string tree_to_json(const DecisionTree& tree, int indent = 2);

// Throws ParseError on malformed JSON or a shape that is neither of the two
// tagged objects above.
DecisionTree tree_from_json(const std::string& json_text);

} // namespace fc45
