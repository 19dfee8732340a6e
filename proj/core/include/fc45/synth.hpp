#pragma once

#include <cstdint>
#include <vector>

#include "fc45/c45.hpp"
#include "fc45/schema.hpp"

namespace fc45 {

// Samples n records with inputs drawn uniformly from each attribute's domain
// (grade-point attributes uniform on [0,4], other numeric attributes uniform
// on their declared range) and labels them with the tree's classification.
// With probability noise_rate the label is replaced by a uniformly chosen
// different class. Output is bit-identical for a given seed across platforms;
// the input draws do not depend on noise_rate. Records are ids "S1".."Sn".
//
// Labeling follows the tree's largest branch when a sampled value has no
// branch of its own (trees reproduced from print-outs may omit branches that
// never occurred in training).
std::vector<StudentRecord> generate_synthetic(std::size_t n, const Schema& schema,
                                              std::uint64_t seed,
                                              const DecisionTree& tree,
                                              double noise_rate,
                                              const GpaBanding& banding =
                                                  default_gpa_banding());

} // namespace fc45
