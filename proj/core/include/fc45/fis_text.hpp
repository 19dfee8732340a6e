#pragma once

#include <string>

#include "fc45/fuzzy.hpp"

namespace fc45 {

// MATLAB-style FIS text, line-oriented:
//
//   [System]
//   Name='compiled'
//   Type='mamdani'
//   NumInputs=2
//   NumOutputs=1
//   NumRules=1
//   AndMethod='min'
//   OrMethod='max'
//   ImpMethod='min'
//   AggMethod='max'
//   DefuzzMethod='centroid'
//
//   [Input1]
//   Name='X1'
//   Range=[0.0000 4.0000]
//   NumMFs=1
//   MF1='A':'trimf',[3.7000 4.0000 4.0000]
//   ...
//   [Rules]
//   1 0, 1 (1.0000) : 1
//
// MF types: trimf, trapmf, gaussmf (sigma center), plus two local additions
// for exact-indicator terms: rectmf,[lo hi] (interval, half-open; read back
// as closed at hi when hi equals the top of the variable's range) and
// crispmf,[p1 ... pn] (point set). Rule lines carry one 1-based term index
// per input (0 = unused), the consequent index, the weight, and the AND
// connective ": 1". All numbers are written 4-decimal fixed-point, so the
// writer output is byte-stable under write -> read -> write. The resolution
// field is runtime-only and not serialized.
std::string write_fis(const FuzzyInferenceSystem& fis);

// Inverse of write_fis. Throws ParseError with the 1-based line number on
// malformed lines, unknown MF types, section/count mismatches, out-of-range
// rule indices, or operator methods other than the fixed Mamdani suite.
FuzzyInferenceSystem read_fis(const std::string& text);

} // namespace fc45
