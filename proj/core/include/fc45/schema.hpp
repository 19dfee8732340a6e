#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fc45 {

enum class AttrKind {
    LetterGrade, ///< categorical, the 9-symbol A..E scale
    Gpa,         ///< numeric on [0, 4]
    Categorical, ///< generic symbolic attribute
    Numeric,     ///< generic real-valued attribute
    ClassLabel,  ///< the (categorical) class attribute
};

bool is_categorical(AttrKind k);
bool is_numeric(AttrKind k);

struct AttributeSpec {
    std::string name;
    AttrKind kind = AttrKind::Categorical;
    std::vector<std::string> domain; ///< categorical kinds only, in order
    double lo = 0.0;                 ///< numeric kinds only
    double hi = 4.0;

    bool has_symbol(const std::string& symbol) const;
    /// Position of `symbol` in the domain, -1 if absent.
    int symbol_index(const std::string& symbol) const;
};

/// Attribute layout of a dataset: N input attributes plus one class attribute.
struct Schema {
    std::vector<AttributeSpec> inputs;
    AttributeSpec class_attribute;

    const AttributeSpec* find_input(const std::string& name) const;
    int input_index(const std::string& name) const;

    /// Throws SchemaError on duplicate names, empty domains or a non-categorical class.
    void validate() const;
};

const std::vector<std::string>& letter_grades(); ///< A, A-, B+, B, B-, C+, C, D, E
const std::vector<std::string>& class_labels();  ///< MULTIMEDIA, WEB, PROGRAMMING

/// The student-record schema: X1..X8 course grades, X9..X12 semester GPAs,
/// MAJOR as the class attribute (13 attributes total).
Schema student_schema();

struct Missing {
    bool operator==(const Missing&) const = default;
};

/// One crisp cell: a symbol for categorical attributes, a real for numeric
/// ones, or Missing.
using Value = std::variant<Missing, std::string, double>;

bool is_missing(const Value& v);

struct StudentRecord {
    std::string id;
    std::vector<Value> values; ///< aligned with Schema::inputs
    std::optional<std::string> observed_major;

    bool operator==(const StudentRecord&) const = default;
};

/// Letter-to-points map, strictly decreasing over the letter domain.
struct GradeEncoding {
    std::vector<std::pair<std::string, double>> points;

    double at(const std::string& symbol) const; ///< DomainError if unknown
    void validate() const;
};

/// A = 4.0, A- = 3.7, B+ = 3.3, B = 3.0, B- = 2.7, C+ = 2.3, C = 2.0,
/// D = 1.0, E = 0.0.
GradeEncoding default_grade_encoding();

struct GpaBand {
    std::string name;
    double lo;
    double hi; ///< half-open [lo, hi); the top band includes hi
};

/// Ordered bands partitioning [0, 4] with no gaps or overlaps.
struct GpaBanding {
    std::vector<GpaBand> bands;

    const GpaBand& band_of(double value) const; ///< DomainError outside [lo, hi]
    std::vector<std::string> names() const;
    void validate() const;
};

/// FAILED = [0, 2.00), GOOD = [2.00, 2.76), VERY_GOOD = [2.76, 3.51),
/// CUMLAUDE = [3.51, 4.00].
GpaBanding default_gpa_banding();

std::string discretize_gpa(double value, const GpaBanding& banding);
double encode_grade(const std::string& symbol, const GradeEncoding& encoding);

/// Rewrites GPA inputs as categorical band attributes and discretizes the
/// matching record values; letter-grade inputs pass through unchanged.
/// Used to train trees that branch on band labels.
std::pair<Schema, std::vector<StudentRecord>>
apply_banding(const Schema& schema, const std::vector<StudentRecord>& records,
              const GpaBanding& banding);

} // namespace fc45
