#include "fc45/fis_text.hpp"

#include <charconv>
#include <cstdio>
#include <vector>

#include "fc45/errors.hpp"

namespace fc45 {
namespace {

std::string fmt4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

struct MfWriter {
    std::string operator()(const Triangular& t) const {
        return "'trimf',[" + fmt4(t.a) + " " + fmt4(t.b) + " " + fmt4(t.c) + "]";
    }
    std::string operator()(const Trapezoidal& t) const {
        return "'trapmf',[" + fmt4(t.a) + " " + fmt4(t.b) + " " + fmt4(t.c) + " " +
               fmt4(t.d) + "]";
    }
    std::string operator()(const Gaussian& g) const {
        return "'gaussmf',[" + fmt4(g.sigma) + " " + fmt4(g.center) + "]";
    }
    std::string operator()(const CrispIndicator& c) const {
        if (c.interval)
            return "'rectmf',[" + fmt4(c.lo) + " " + fmt4(c.hi) + "]";
        std::string out = "'crispmf',[";
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            if (i) out += ' ';
            out += fmt4(c.points[i]);
        }
        return out + "]";
    }
};

void write_variable(const LinguisticVariable& var, const std::string& section,
                    std::string& out) {
    out += "[" + section + "]\n";
    out += "Name='" + var.name + "'\n";
    out += "Range=[" + fmt4(var.lo) + " " + fmt4(var.hi) + "]\n";
    out += "NumMFs=" + std::to_string(var.terms.size()) + "\n";
    for (std::size_t i = 0; i < var.terms.size(); ++i) {
        out += "MF" + std::to_string(i + 1) + "='" + var.terms[i].first +
               "':" + std::visit(MfWriter{}, var.terms[i].second) + "\n";
    }
}

struct Reader {
    std::vector<std::pair<int, std::string>> lines; // (1-based number, content)
    std::size_t pos = 0;

    explicit Reader(const std::string& text) {
        int number = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            std::string raw = text.substr(
                start, end == std::string::npos ? std::string::npos : end - start);
            ++number;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t'))
                raw.pop_back();
            std::size_t lead = raw.find_first_not_of(" \t");
            if (lead != std::string::npos)
                lines.push_back({number, raw.substr(lead)});
            if (end == std::string::npos) break;
            start = end + 1;
        }
    }

    bool done() const { return pos >= lines.size(); }
    int lineno() const { return done() ? (lines.empty() ? 1 : lines.back().first) : lines[pos].first; }
    const std::string& peek() const { return lines[pos].second; }

    std::string expect_section() {
        if (done()) throw ParseError("unexpected end of file, expected a section", lineno());
        const std::string& s = peek();
        if (s.size() < 3 || s.front() != '[' || s.back() != ']')
            throw ParseError("expected a [Section] header, got \"" + s + "\"", lineno());
        ++pos;
        return s.substr(1, s.size() - 2);
    }

    // "Key=rest" where the key is known by the caller
    std::string expect_key(const std::string& key) {
        if (done())
            throw ParseError("unexpected end of file, expected " + key + "=", lineno());
        const std::string& s = peek();
        if (s.compare(0, key.size() + 1, key + "=") != 0)
            throw ParseError("expected " + key + "=..., got \"" + s + "\"", lineno());
        ++pos;
        return s.substr(key.size() + 1);
    }
};

std::string unquote(const std::string& s, int lineno) {
    if (s.size() < 2 || s.front() != '\'' || s.back() != '\'')
        throw ParseError("expected a 'quoted' value, got \"" + s + "\"", lineno);
    return s.substr(1, s.size() - 2);
}

double parse_real(const std::string& s, int lineno) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("malformed number \"" + s + "\"", lineno);
    return v;
}

long parse_int(const std::string& s, int lineno) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("malformed integer \"" + s + "\"", lineno);
    return v;
}

std::vector<std::string> split_spaces(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<double> parse_bracket_list(const std::string& s, int lineno) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("expected [list], got \"" + s + "\"", lineno);
    std::vector<double> out;
    for (const auto& tok : split_spaces(s.substr(1, s.size() - 2)))
        out.push_back(parse_real(tok, lineno));
    return out;
}

MembershipFunction make_mf(const std::string& type, const std::vector<double>& p,
                           int lineno) {
    auto arity = [&](std::size_t n) {
        if (p.size() != n)
            throw ParseError(type + " takes " + std::to_string(n) + " parameters, got " +
                                 std::to_string(p.size()),
                             lineno);
    };
    if (type == "trimf") {
        arity(3);
        return Triangular{p[0], p[1], p[2]};
    }
    if (type == "trapmf") {
        arity(4);
        return Trapezoidal{p[0], p[1], p[2], p[3]};
    }
    if (type == "gaussmf") {
        arity(2);
        return Gaussian{p[0], p[1]};
    }
    if (type == "rectmf") {
        arity(2);
        CrispIndicator c;
        c.interval = true;
        c.lo = p[0];
        c.hi = p[1];
        return c;
    }
    if (type == "crispmf") {
        if (p.empty()) throw ParseError("crispmf needs at least one point", lineno);
        CrispIndicator c;
        c.points = p;
        return c;
    }
    throw ParseError("unknown membership function type '" + type + "'", lineno);
}

LinguisticVariable read_variable(Reader& r) {
    LinguisticVariable var;
    int lineno = r.lineno();
    var.name = unquote(r.expect_key("Name"), lineno);

    lineno = r.lineno();
    auto range = parse_bracket_list(r.expect_key("Range"), lineno);
    if (range.size() != 2)
        throw ParseError("Range takes exactly two numbers", lineno);
    var.lo = range[0];
    var.hi = range[1];

    lineno = r.lineno();
    long num_mfs = parse_int(r.expect_key("NumMFs"), lineno);
    if (num_mfs < 0) throw ParseError("NumMFs cannot be negative", lineno);

    for (long k = 1; k <= num_mfs; ++k) {
        lineno = r.lineno();
        std::string rest = r.expect_key("MF" + std::to_string(k));
        // 'term':'type',[params]
        auto colon = rest.find("':'");
        if (colon == std::string::npos || rest.empty() || rest.front() != '\'')
            throw ParseError("malformed MF line", lineno);
        std::string term = rest.substr(1, colon - 1);
        std::string tail = rest.substr(colon + 2); // 'type',[params]
        auto comma = tail.find("',");
        if (comma == std::string::npos)
            throw ParseError("malformed MF line", lineno);
        std::string type = tail.substr(1, comma - 1);
        auto params = parse_bracket_list(tail.substr(comma + 2), lineno);
        MembershipFunction mf = make_mf(type, params, lineno);
        if (auto* crisp = std::get_if<CrispIndicator>(&mf);
            crisp && crisp->interval && crisp->hi == var.hi)
            crisp->closed_hi = true;
        try {
            validate_mf(mf);
        } catch (const DomainError& e) {
            throw ParseError(e.what(), lineno);
        }
        var.terms.push_back({term, std::move(mf)});
    }
    try {
        var.validate();
    } catch (const DomainError& e) {
        throw ParseError(e.what(), lineno);
    }
    return var;
}

void expect_fixed(Reader& r, const std::string& key, const std::string& want) {
    int lineno = r.lineno();
    std::string got = unquote(r.expect_key(key), lineno);
    if (got != want)
        throw ParseError(key + " must be '" + want + "', got '" + got + "'", lineno);
}

FuzzyRule read_rule(const std::string& line, int lineno,
                    const FuzzyInferenceSystem& fis) {
    auto comma = line.find(',');
    if (comma == std::string::npos)
        throw ParseError("rule line needs a comma before the consequent", lineno);
    auto ante_tokens = split_spaces(line.substr(0, comma));
    if (ante_tokens.size() != fis.inputs.size())
        throw ParseError("rule line has " + std::to_string(ante_tokens.size()) +
                             " antecedent indices, expected " +
                             std::to_string(fis.inputs.size()),
                         lineno);

    FuzzyRule rule;
    for (std::size_t i = 0; i < ante_tokens.size(); ++i) {
        long idx = parse_int(ante_tokens[i], lineno);
        if (idx == 0) continue;
        if (idx < 0 || idx > static_cast<long>(fis.inputs[i].terms.size()))
            throw ParseError("antecedent index " + std::to_string(idx) +
                                 " out of range for input " + fis.inputs[i].name,
                             lineno);
        rule.antecedent.push_back(
            {fis.inputs[i].name, fis.inputs[i].terms[idx - 1].first});
    }
    if (rule.antecedent.empty())
        throw ParseError("rule has an empty antecedent", lineno);

    // "<out> (<weight>) : <connective>"
    auto tail = split_spaces(line.substr(comma + 1));
    if (tail.size() != 4 || tail[2] != ":")
        throw ParseError("malformed rule consequent \"" + line.substr(comma + 1) + "\"",
                         lineno);
    long out_idx = parse_int(tail[0], lineno);
    if (out_idx < 1 || out_idx > static_cast<long>(fis.output.terms.size()))
        throw ParseError("consequent index " + std::to_string(out_idx) +
                             " out of range for the output variable",
                         lineno);
    rule.consequent = {fis.output.name, fis.output.terms[out_idx - 1].first};

    if (tail[1].size() < 3 || tail[1].front() != '(' || tail[1].back() != ')')
        throw ParseError("expected (weight), got \"" + tail[1] + "\"", lineno);
    rule.weight = parse_real(tail[1].substr(1, tail[1].size() - 2), lineno);
    if (!(rule.weight > 0.0 && rule.weight <= 1.0))
        throw ParseError("rule weight must lie in (0,1]", lineno);

    long conn = parse_int(tail[3], lineno);
    if (conn != 1)
        throw ParseError("only the AND connective (: 1) is supported", lineno);
    return rule;
}

} // namespace

std::string write_fis(const FuzzyInferenceSystem& fis) {
    fis.validate();
    std::string out;
    out += "[System]\n";
    out += "Name='" + fis.name + "'\n";
    out += "Type='mamdani'\n";
    out += "NumInputs=" + std::to_string(fis.inputs.size()) + "\n";
    out += "NumOutputs=1\n";
    out += "NumRules=" + std::to_string(fis.rules.size()) + "\n";
    out += "AndMethod='min'\n";
    out += "OrMethod='max'\n";
    out += "ImpMethod='min'\n";
    out += "AggMethod='max'\n";
    out += "DefuzzMethod='centroid'\n";

    for (std::size_t i = 0; i < fis.inputs.size(); ++i) {
        out += "\n";
        write_variable(fis.inputs[i], "Input" + std::to_string(i + 1), out);
    }
    out += "\n";
    write_variable(fis.output, "Output1", out);

    out += "\n[Rules]\n";
    for (const auto& rule : fis.rules) {
        std::string line;
        for (std::size_t i = 0; i < fis.inputs.size(); ++i) {
            int idx = 0;
            for (const auto& [var, term] : rule.antecedent) {
                if (var != fis.inputs[i].name) continue;
                idx = fis.inputs[i].term_index(term) + 1;
                break;
            }
            if (i) line += ' ';
            line += std::to_string(idx);
        }
        line += ", ";
        line += std::to_string(fis.output.term_index(rule.consequent.second) + 1);
        line += " (" + fmt4(rule.weight) + ") : 1";
        out += line + "\n";
    }
    return out;
}

FuzzyInferenceSystem read_fis(const std::string& text) {
    Reader r(text);

    if (r.expect_section() != "System")
        throw ParseError("first section must be [System]", r.lineno());

    FuzzyInferenceSystem fis;
    int lineno = r.lineno();
    fis.name = unquote(r.expect_key("Name"), lineno);
    expect_fixed(r, "Type", "mamdani");
    lineno = r.lineno();
    long num_inputs = parse_int(r.expect_key("NumInputs"), lineno);
    if (num_inputs < 1) throw ParseError("NumInputs must be at least 1", lineno);
    lineno = r.lineno();
    if (parse_int(r.expect_key("NumOutputs"), lineno) != 1)
        throw ParseError("NumOutputs must be 1", lineno);
    lineno = r.lineno();
    long num_rules = parse_int(r.expect_key("NumRules"), lineno);
    if (num_rules < 0) throw ParseError("NumRules cannot be negative", lineno);
    expect_fixed(r, "AndMethod", "min");
    expect_fixed(r, "OrMethod", "max");
    expect_fixed(r, "ImpMethod", "min");
    expect_fixed(r, "AggMethod", "max");
    expect_fixed(r, "DefuzzMethod", "centroid");

    for (long i = 1; i <= num_inputs; ++i) {
        std::string section = r.expect_section();
        if (section != "Input" + std::to_string(i))
            throw ParseError("expected [Input" + std::to_string(i) + "], got [" +
                                 section + "]",
                             r.lineno());
        fis.inputs.push_back(read_variable(r));
    }

    std::string section = r.expect_section();
    if (section != "Output1")
        throw ParseError("expected [Output1], got [" + section + "]", r.lineno());
    fis.output = read_variable(r);

    if (r.expect_section() != "Rules")
        throw ParseError("expected [Rules]", r.lineno());
    for (long i = 0; i < num_rules; ++i) {
        if (r.done())
            throw ParseError("NumRules=" + std::to_string(num_rules) + " but only " +
                                 std::to_string(i) + " rule lines present",
                             r.lineno());
        lineno = r.lineno();
        fis.rules.push_back(read_rule(r.peek(), lineno, fis));
        ++r.pos;
    }
    if (!r.done())
        throw ParseError("unexpected content after the rule list", r.lineno());

    try {
        fis.validate();
    } catch (const Error& e) {
        throw ParseError(e.what(), r.lineno());
    }
    return fis;
}

} // namespace fc45
