#pragma once

#include <string>
#include <vector>

#include "fc45/schema.hpp"

namespace fc45 {

/// CSV layout: optional leading id column (conventionally STUDENT_NAME), then
/// the schema's input attributes in order, then optionally the class
/// attribute. UTF-8, RFC 4180 quoting, first row is the header. A cell that
/// is empty or "?" reads as Missing.
std::vector<StudentRecord> parse_csv(const std::string& text, const Schema& schema);
std::vector<StudentRecord> load_csv(const std::string& path, const Schema& schema);

/// Emits STUDENT_NAME, the inputs, and the class column ("?" when a record
/// carries no observed label). parse_csv(write_csv(r)) == r.
std::string write_csv(const std::vector<StudentRecord>& records, const Schema& schema);
void save_csv(const std::string& path, const std::vector<StudentRecord>& records,
              const Schema& schema);

/// Raw cell rows, header included.
std::vector<std::vector<std::string>> csv_rows(const std::string& text);

/// Builds a schema for a CSV whose layout is not known in advance. A header
/// matching the student layout returns student_schema(). Otherwise the last
/// column is the class, a leading STUDENT_NAME/ID/NO column is the record
/// id, and every other column is Numeric when all its non-missing cells
/// parse as numbers (range = observed min/max), else Categorical with the
/// domain in first-appearance order.
Schema infer_schema(const std::string& text);

} // namespace fc45
