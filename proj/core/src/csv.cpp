#include "fc45/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fc45/errors.hpp"

namespace fc45 {
namespace {

struct RawRow {
    std::vector<std::string> cells;
    int line; // 1-based line where the row starts
};

// RFC 4180 tokenizer. Handles quoted cells, "" escapes and embedded newlines.
std::vector<RawRow> tokenize(const std::string& text) {
    std::vector<RawRow> rows;
    std::vector<std::string> cells;
    std::string cell;
    bool in_quotes = false;
    bool row_has_content = false;
    int line = 1;
    int row_start_line = 1;

    auto end_cell = [&] {
        cells.push_back(cell);
        cell.clear();
    };
    auto end_row = [&] {
        end_cell();
        rows.push_back({std::move(cells), row_start_line});
        cells = {};
        row_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                cell += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            row_has_content = true;
            break;
        case ',':
            end_cell();
            row_has_content = true;
            break;
        case '\r':
            break;
        case '\n':
            if (row_has_content || !cell.empty() || !cells.empty()) end_row();
            ++line;
            row_start_line = line;
            break;
        default:
            cell += c;
            row_has_content = true;
        }
    }
    if (in_quotes) throw ParseError("unterminated quoted cell", row_start_line);
    if (row_has_content || !cell.empty() || !cells.empty()) end_row();
    return rows;
}

Value parse_cell(const std::string& cell, const AttributeSpec& attr, int line) {
    if (cell.empty() || cell == "?") return Missing{};
    if (is_categorical(attr.kind)) {
        if (!attr.has_symbol(cell))
            throw DataError("row at line " + std::to_string(line) + ": value \"" +
                            cell + "\" not in domain of " + attr.name);
        return cell;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw DataError("row at line " + std::to_string(line) +
                        ": unparsable numeric cell \"" + cell + "\" for " + attr.name);
    if (v < attr.lo || v > attr.hi)
        throw DataError("row at line " + std::to_string(line) + ": " + attr.name +
                        " value " + cell + " outside [" + std::to_string(attr.lo) +
                        ", " + std::to_string(attr.hi) + "]");
    return v;
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

bool needs_quotes(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quote(const std::string& s) {
    if (!needs_quotes(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::vector<StudentRecord> parse_csv(const std::string& text, const Schema& schema) {
    schema.validate();
    auto rows = tokenize(text);
    if (rows.empty()) throw SchemaError("CSV has no header row");

    const auto& header = rows.front().cells;
    std::size_t col = 0;
    bool has_id = false;
    if (!header.empty() && schema.input_index(header[0]) < 0 &&
        header[0] != schema.class_attribute.name) {
        has_id = true;
        col = 1;
    }
    for (const auto& attr : schema.inputs) {
        if (col >= header.size() || header[col] != attr.name)
            throw SchemaError("header mismatch: expected column \"" + attr.name +
                              "\" at position " + std::to_string(col + 1) +
                              (col < header.size() ? ", found \"" + header[col] + "\""
                                                   : ", header too short"));
        ++col;
    }
    bool has_class = false;
    if (col < header.size()) {
        if (header[col] != schema.class_attribute.name)
            throw SchemaError("header mismatch: unexpected column \"" + header[col] +
                              "\"");
        has_class = true;
        ++col;
    }
    if (col < header.size())
        throw SchemaError("header mismatch: unexpected column \"" + header[col] + "\"");

    std::vector<StudentRecord> records;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        std::size_t expected = (has_id ? 1 : 0) + schema.inputs.size() + (has_class ? 1 : 0);
        if (row.cells.size() != expected)
            throw DataError("row at line " + std::to_string(row.line) + ": expected " +
                            std::to_string(expected) + " cells, found " +
                            std::to_string(row.cells.size()));
        StudentRecord rec;
        std::size_t c = 0;
        rec.id = has_id ? row.cells[c++] : "row" + std::to_string(r);
        for (const auto& attr : schema.inputs)
            rec.values.push_back(parse_cell(row.cells[c++], attr, row.line));
        if (has_class) {
            const auto& cell = row.cells[c];
            if (!(cell.empty() || cell == "?")) {
                if (!schema.class_attribute.has_symbol(cell))
                    throw DataError("row at line " + std::to_string(row.line) +
                                    ": unknown class label \"" + cell + "\"");
                rec.observed_major = cell;
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<StudentRecord> load_csv(const std::string& path, const Schema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open CSV file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), schema);
}

std::string write_csv(const std::vector<StudentRecord>& records, const Schema& schema) {
    std::string out = "STUDENT_NAME";
    for (const auto& attr : schema.inputs) out += "," + quote(attr.name);
    out += "," + quote(schema.class_attribute.name) + "\n";
    for (const auto& rec : records) {
        out += quote(rec.id);
        for (std::size_t i = 0; i < schema.inputs.size(); ++i) {
            out += ',';
            const Value& v = rec.values.at(i);
            if (is_missing(v))
                out += '?';
            else if (std::holds_alternative<std::string>(v))
                out += quote(std::get<std::string>(v));
            else
                out += format_number(std::get<double>(v));
        }
        out += ',';
        out += rec.observed_major ? quote(*rec.observed_major) : std::string("?");
        out += '\n';
    }
    return out;
}

void save_csv(const std::string& path, const std::vector<StudentRecord>& records,
              const Schema& schema) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write CSV file: " + path);
    out << write_csv(records, schema);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    for (auto& row : tokenize(text)) out.push_back(std::move(row.cells));
    return out;
}

Schema infer_schema(const std::string& text) {
    auto rows = tokenize(text);
    if (rows.empty()) throw SchemaError("CSV has no header row");
    const auto& header = rows.front().cells;

    // the student layout takes its full schema, not an inferred one; the
    // class column may be absent (unlabeled data for inference)
    {
        Schema s = student_schema();
        std::size_t col =
            (!header.empty() && s.input_index(header[0]) < 0 &&
             header[0] != s.class_attribute.name)
                ? 1
                : 0;
        std::size_t rest = header.size() - std::min(col, header.size());
        bool ok = rest == s.inputs.size() || rest == s.inputs.size() + 1;
        for (std::size_t i = 0; ok && i < s.inputs.size(); ++i)
            ok = header[col + i] == s.inputs[i].name;
        if (ok && rest == s.inputs.size() + 1 &&
            header.back() != s.class_attribute.name)
            ok = false;
        if (ok) return s;
    }

    std::size_t first = 0;
    if (!header.empty() &&
        (header[0] == "STUDENT_NAME" || header[0] == "ID" || header[0] == "NO"))
        first = 1;
    if (header.size() < first + 2)
        throw SchemaError("need at least one input column and a class column");

    for (std::size_t r = 1; r < rows.size(); ++r)
        if (rows[r].cells.size() != header.size())
            throw DataError("row at line " + std::to_string(rows[r].line) +
                            ": expected " + std::to_string(header.size()) +
                            " cells, found " + std::to_string(rows[r].cells.size()));

    auto infer_column = [&](std::size_t col) {
        AttributeSpec attr;
        attr.name = header[col];
        if (attr.name.empty())
            throw SchemaError("column " + std::to_string(col + 1) + " has no name");
        bool numeric = true;
        bool any = false;
        double lo = 0.0, hi = 0.0;
        std::vector<std::string> domain;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const std::string& cell = rows[r].cells[col];
            if (cell.empty() || cell == "?") continue;
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
                numeric = false;
            } else {
                if (!any || v < lo) lo = v;
                if (!any || v > hi) hi = v;
            }
            any = true;
            bool seen = false;
            for (const auto& d : domain) seen = seen || d == cell;
            if (!seen) domain.push_back(cell);
        }
        if (!any)
            throw DataError("column " + attr.name + " has no values to infer from");
        if (numeric) {
            attr.kind = AttrKind::Numeric;
            attr.lo = lo;
            attr.hi = hi;
        } else {
            attr.kind = AttrKind::Categorical;
            attr.domain = std::move(domain);
        }
        return attr;
    };

    Schema schema;
    for (std::size_t col = first; col + 1 < header.size(); ++col)
        schema.inputs.push_back(infer_column(col));
    AttributeSpec cls = infer_column(header.size() - 1);
    if (cls.kind != AttrKind::Categorical)
        throw SchemaError("class column " + cls.name +
                          " must be categorical, found only numbers");
    cls.kind = AttrKind::ClassLabel;
    schema.class_attribute = std::move(cls);
    schema.validate();
    return schema;
}

} // namespace fc45
