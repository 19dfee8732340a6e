#include "fc45/tree_text.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <set>
#include <vector>

#include "fc45/errors.hpp"

namespace fc45 {
namespace {

struct Line {
    int number = 0; // 1-based in the input
    int depth = 0;
    std::string attribute;   // empty for a root-leaf line
    std::string branch;      // "VERY_GOOD", "<= 77.5", "> 77.5"
    bool has_leaf = false;
    std::string leaf_label;
    double total = 0.0;
    double misclassified = 0.0;
};

double parse_number(const std::string& s, int lineno) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("malformed coverage number \"" + s + "\"", lineno);
    return v;
}

// "(2.0)" or "(2.0/1.0)" without the parentheses
void parse_coverage(const std::string& s, int lineno, Line& out) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        out.total = parse_number(s, lineno);
        out.misclassified = 0.0;
    } else {
        out.total = parse_number(s.substr(0, slash), lineno);
        out.misclassified = parse_number(s.substr(slash + 1), lineno);
    }
    if (out.total < 0.0 || out.misclassified < 0.0)
        throw ParseError("negative coverage", lineno);
}

// splits "attr = value" / "attr <= t" / "attr > t" into attribute and branch
void parse_test(const std::string& s, int lineno, Line& out) {
    for (const char* op : {" = ", " <= ", " > "}) {
        auto pos = s.find(op);
        if (pos == std::string::npos || pos == 0) continue;
        out.attribute = s.substr(0, pos);
        std::string rhs = s.substr(pos + std::string(op).size());
        if (rhs.empty()) break;
        out.branch = (op[1] == '=') ? rhs : std::string(op + 1) + rhs;
        return;
    }
    throw ParseError("malformed branch test \"" + s + "\"", lineno);
}

std::optional<Line> parse_line(const std::string& raw, int lineno) {
    std::string text = raw;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    while (!text.empty() && text.back() == ' ') text.pop_back();

    Line line;
    line.number = lineno;
    std::size_t pos = 0;
    while (text.compare(pos, 2, "| ") == 0) {
        pos += 2;
        ++line.depth;
    }
    std::string content = text.substr(pos);
    if (content.empty()) {
        if (line.depth > 0) throw ParseError("indentation with no content", lineno);
        return std::nullopt; // blank line
    }
    if (content[0] == '|' || content[0] == ' ')
        throw ParseError("inconsistent indentation", lineno);

    // peel a trailing "(coverage)" if present
    std::string head = content;
    if (content.back() == ')') {
        auto open = content.rfind(" (");
        if (open == std::string::npos)
            throw ParseError("malformed leaf annotation", lineno);
        line.has_leaf = true;
        parse_coverage(content.substr(open + 2, content.size() - open - 3), lineno, line);
        head = content.substr(0, open);
        if (head.empty()) throw ParseError("malformed leaf annotation", lineno);
    }

    if (line.has_leaf) {
        auto colon = head.rfind(": ");
        if (colon == std::string::npos) {
            line.leaf_label = head; // root-leaf form "CLASS (t)"
            if (line.leaf_label.find(' ') != std::string::npos)
                throw ParseError("malformed leaf annotation", lineno);
            return line;
        }
        line.leaf_label = head.substr(colon + 2);
        if (line.leaf_label.empty())
            throw ParseError("missing class label", lineno);
        parse_test(head.substr(0, colon), lineno, line);
        return line;
    }
    if (head.find(':') != std::string::npos)
        throw ParseError("leaf line without coverage", lineno);
    parse_test(head, lineno, line);
    return line;
}

struct Parser {
    const std::vector<Line>& lines;
    std::size_t pos = 0;

    DecisionTree parse_node(int depth) {
        DecisionTree::Node node;
        std::set<std::string> seen;
        while (pos < lines.size() && lines[pos].depth == depth) {
            const Line& line = lines[pos];
            if (line.attribute.empty())
                throw ParseError("leaf without a branch test", line.number);
            if (node.branches.empty()) {
                node.attribute = line.attribute;
            } else if (node.attribute != line.attribute) {
                throw ParseError("sibling branches test different attributes (" +
                                     node.attribute + " vs " + line.attribute + ")",
                                 line.number);
            }
            if (!seen.insert(line.branch).second)
                throw ParseError("duplicate branch label \"" + line.branch + "\"",
                                 line.number);
            ++pos;
            if (line.has_leaf) {
                if (pos < lines.size() && lines[pos].depth > depth)
                    throw ParseError("inconsistent indentation", lines[pos].number);
                node.branches.push_back(
                    {line.branch,
                     make_leaf(line.leaf_label, line.total, line.misclassified)});
            } else {
                if (pos >= lines.size() || lines[pos].depth != depth + 1)
                    throw ParseError("branch has no subtree", line.number);
                node.branches.push_back({line.branch, parse_node(depth + 1)});
            }
        }
        if (pos < lines.size() && lines[pos].depth > depth)
            throw ParseError("inconsistent indentation", lines[pos].number);
        return DecisionTree{std::move(node)};
    }
};

std::string format_coverage(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    std::string s(buf);
    // trim to one decimal when the second is zero: "52.00" -> "52.0"
    if (s.size() >= 2 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
    return s;
}

void print_leaf_coverage(const DecisionTree::Leaf& leaf, std::string& out) {
    out += leaf.label;
    out += " (";
    out += format_coverage(leaf.total);
    std::string mis = format_coverage(leaf.misclassified);
    if (mis != "0.0") {
        out += '/';
        out += mis;
    }
    out += ")";
}

void print_node(const DecisionTree& tree, int depth, std::string& out) {
    const auto& node = tree.node();
    if (node.branches.empty())
        throw DomainError("cannot serialize node without branches: " + node.attribute);
    for (const auto& branch : node.branches) {
        for (int i = 0; i < depth; ++i) out += "| ";
        out += node.attribute;
        if (branch.label.rfind("<= ", 0) == 0 || branch.label.rfind("> ", 0) == 0) {
            out += ' ';
            out += branch.label;
        } else {
            out += " = ";
            out += branch.label;
        }
        if (branch.subtree.is_leaf()) {
            out += ": ";
            print_leaf_coverage(branch.subtree.leaf(), out);
            out += '\n';
        } else {
            out += '\n';
            print_node(branch.subtree, depth + 1, out);
        }
    }
}

} // namespace

DecisionTree parse_j48_text(const std::string& text) {
    std::vector<Line> lines;
    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        std::string raw = text.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        ++lineno;
        if (!(raw.empty() && end == std::string::npos)) {
            auto parsed = parse_line(raw, lineno);
            if (parsed) lines.push_back(*parsed);
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (lines.empty()) throw ParseError("empty tree text", lineno);
    if (lines.front().depth != 0)
        throw ParseError("inconsistent indentation", lines.front().number);

    if (lines.size() == 1 && lines.front().attribute.empty()) {
        const Line& l = lines.front();
        if (!l.has_leaf) throw ParseError("malformed leaf annotation", l.number);
        return make_leaf(l.leaf_label, l.total, l.misclassified);
    }

    Parser parser{lines};
    DecisionTree tree = parser.parse_node(0);
    if (parser.pos < lines.size())
        throw ParseError("inconsistent indentation", lines[parser.pos].number);
    return tree;
}

std::string print_j48_text(const DecisionTree& tree) {
    std::string out;
    if (tree.is_leaf()) {
        print_leaf_coverage(tree.leaf(), out);
        out += '\n';
        return out;
    }
    print_node(tree, 0, out);
    return out;
}

} // namespace fc45
