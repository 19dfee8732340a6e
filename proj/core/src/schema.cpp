#include "fc45/schema.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "fc45/errors.hpp"

namespace fc45 {

bool is_categorical(AttrKind k) {
    return k == AttrKind::LetterGrade || k == AttrKind::Categorical ||
           k == AttrKind::ClassLabel;
}

bool is_numeric(AttrKind k) {
    return k == AttrKind::Gpa || k == AttrKind::Numeric;
}

bool AttributeSpec::has_symbol(const std::string& symbol) const {
    return symbol_index(symbol) >= 0;
}

int AttributeSpec::symbol_index(const std::string& symbol) const {
    for (std::size_t i = 0; i < domain.size(); ++i)
        if (domain[i] == symbol) return static_cast<int>(i);
    return -1;
}

const AttributeSpec* Schema::find_input(const std::string& name) const {
    int i = input_index(name);
    return i < 0 ? nullptr : &inputs[i];
}

int Schema::input_index(const std::string& name) const {
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (inputs[i].name == name) return static_cast<int>(i);
    return -1;
}

void Schema::validate() const {
    if (inputs.empty()) throw SchemaError("schema has no input attributes");
    std::set<std::string> names;
    auto check = [&](const AttributeSpec& a) {
        if (a.name.empty()) throw SchemaError("attribute with empty name");
        if (!names.insert(a.name).second)
            throw SchemaError("duplicate attribute name: " + a.name);
        if (is_categorical(a.kind) && a.domain.empty())
            throw SchemaError("categorical attribute " + a.name + " has empty domain");
        if (is_numeric(a.kind) && !(a.lo < a.hi))
            throw SchemaError("numeric attribute " + a.name + " has empty range");
    };
    for (const auto& a : inputs) check(a);
    check(class_attribute);
    if (!is_categorical(class_attribute.kind))
        throw SchemaError("class attribute must be categorical");
}

const std::vector<std::string>& letter_grades() {
    static const std::vector<std::string> k = {"A", "A-", "B+", "B", "B-",
                                               "C+", "C",  "D",  "E"};
    return k;
}

const std::vector<std::string>& class_labels() {
    static const std::vector<std::string> k = {"MULTIMEDIA", "WEB", "PROGRAMMING"};
    return k;
}

Schema student_schema() {
    Schema s;
    for (int i = 1; i <= 8; ++i)
        s.inputs.push_back({"X" + std::to_string(i), AttrKind::LetterGrade,
                            letter_grades(), 0.0, 4.0});
    for (int i = 9; i <= 12; ++i)
        s.inputs.push_back({"X" + std::to_string(i), AttrKind::Gpa, {}, 0.0, 4.0});
    s.class_attribute = {"MAJOR", AttrKind::ClassLabel, class_labels(), 0.0, 0.0};
    s.validate();
    return s;
}

bool is_missing(const Value& v) { return std::holds_alternative<Missing>(v); }

double GradeEncoding::at(const std::string& symbol) const {
    for (const auto& [sym, pts] : points)
        if (sym == symbol) return pts;
    throw DomainError("unknown grade symbol: " + symbol);
}

void GradeEncoding::validate() const {
    const auto& letters = letter_grades();
    if (points.size() != letters.size())
        throw DomainError("grade encoding must cover all " +
                          std::to_string(letters.size()) + " letter grades");
    double prev = 4.0 + 1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].first != letters[i])
            throw DomainError("grade encoding order mismatch at " + points[i].first);
        double v = points[i].second;
        if (v < 0.0 || v > 4.0)
            throw DomainError("grade point outside [0,4]: " + points[i].first);
        if (!(v < prev))
            throw DomainError("grade points must be strictly decreasing at " +
                              points[i].first);
        prev = v;
    }
}

GradeEncoding default_grade_encoding() {
    GradeEncoding e;
    e.points = {{"A", 4.0}, {"A-", 3.7}, {"B+", 3.3}, {"B", 3.0}, {"B-", 2.7},
                {"C+", 2.3}, {"C", 2.0}, {"D", 1.0},  {"E", 0.0}};
    return e;
}

const GpaBand& GpaBanding::band_of(double value) const {
    if (bands.empty()) throw DomainError("empty GPA banding");
    if (value < bands.front().lo || value > bands.back().hi)
        throw DomainError("GPA value outside [" + std::to_string(bands.front().lo) +
                          ", " + std::to_string(bands.back().hi) +
                          "]: " + std::to_string(value));
    for (const auto& b : bands)
        if (value < b.hi) return b;
    return bands.back(); // top band includes its upper endpoint
}

std::vector<std::string> GpaBanding::names() const {
    std::vector<std::string> out;
    out.reserve(bands.size());
    for (const auto& b : bands) out.push_back(b.name);
    return out;
}

void GpaBanding::validate() const {
    if (bands.empty()) throw DomainError("empty GPA banding");
    std::set<std::string> names;
    for (std::size_t i = 0; i < bands.size(); ++i) {
        const auto& b = bands[i];
        if (!names.insert(b.name).second)
            throw DomainError("duplicate band name: " + b.name);
        if (!(b.lo < b.hi))
            throw DomainError("band " + b.name + " has empty interval");
        if (i > 0 && bands[i - 1].hi != b.lo)
            throw DomainError("bands have a gap or overlap before " + b.name);
    }
}

GpaBanding default_gpa_banding() {
    GpaBanding b;
    b.bands = {{"FAILED", 0.0, 2.00},
               {"GOOD", 2.00, 2.76},
               {"VERY_GOOD", 2.76, 3.51},
               {"CUMLAUDE", 3.51, 4.00}};
    return b;
}

std::string discretize_gpa(double value, const GpaBanding& banding) {
    return banding.band_of(value).name;
}

double encode_grade(const std::string& symbol, const GradeEncoding& encoding) {
    return encoding.at(symbol);
}

std::pair<Schema, std::vector<StudentRecord>>
apply_banding(const Schema& schema, const std::vector<StudentRecord>& records,
              const GpaBanding& banding) {
    Schema banded = schema;
    for (auto& attr : banded.inputs) {
        if (attr.kind != AttrKind::Gpa) continue;
        attr.kind = AttrKind::Categorical;
        attr.domain = banding.names();
    }
    std::vector<StudentRecord> out = records;
    for (auto& rec : out) {
        if (rec.values.size() != schema.inputs.size())
            throw DataError("record " + rec.id + " has wrong arity");
        for (std::size_t i = 0; i < schema.inputs.size(); ++i) {
            if (schema.inputs[i].kind != AttrKind::Gpa) continue;
            if (is_missing(rec.values[i])) continue;
            rec.values[i] = discretize_gpa(std::get<double>(rec.values[i]), banding);
        }
    }
    return {std::move(banded), std::move(out)};
}

} // namespace fc45
