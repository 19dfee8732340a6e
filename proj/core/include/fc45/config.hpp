#pragma once

#include <string>

#include "fc45/schema.hpp"

namespace fc45 {

/// Grade encoding and GPA banding, overridable from a key=value config file.
struct ToolkitConfig {
    GradeEncoding encoding = default_grade_encoding();
    GpaBanding banding = default_gpa_banding();
};

/// Accepted keys:
///   grade.<SYMBOL> = <points>   point value of a letter grade, e.g. grade.B- = 2.7
///   band.<NAME>    = <lo>       lower bound of a GPA band; each band ends where
///                               the next begins, the last ends at 4.0
/// Lines starting with '#' and blank lines are ignored.
ToolkitConfig parse_config(const std::string& text);
ToolkitConfig load_config(const std::string& path);

} // namespace fc45
