#include "fc45/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fc45/errors.hpp"

namespace fc45 {
namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, int line) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("bad numeric value \"" + s + "\"", line);
    return v;
}

} // namespace

ToolkitConfig parse_config(const std::string& text) {
    ToolkitConfig cfg;
    // band lower bounds keyed by band index, rebuilt into intervals afterwards
    std::vector<double> band_lo;
    for (const auto& b : cfg.banding.bands) band_lo.push_back(b.lo);

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key = value", line);
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.rfind("grade.", 0) == 0) {
            std::string sym = key.substr(6);
            bool found = false;
            for (auto& [letter, pts] : cfg.encoding.points) {
                if (letter == sym) {
                    pts = parse_double(val, line);
                    found = true;
                    break;
                }
            }
            if (!found) throw ParseError("unknown grade symbol \"" + sym + "\"", line);
        } else if (key.rfind("band.", 0) == 0) {
            std::string name = key.substr(5);
            bool found = false;
            for (std::size_t i = 0; i < cfg.banding.bands.size(); ++i) {
                if (cfg.banding.bands[i].name == name) {
                    band_lo[i] = parse_double(val, line);
                    found = true;
                    break;
                }
            }
            if (!found) throw ParseError("unknown band name \"" + name + "\"", line);
        } else {
            throw ParseError("unknown config key \"" + key + "\"", line);
        }
    }

    for (std::size_t i = 0; i < cfg.banding.bands.size(); ++i) {
        cfg.banding.bands[i].lo = band_lo[i];
        cfg.banding.bands[i].hi =
            i + 1 < band_lo.size() ? band_lo[i + 1] : 4.0;
    }
    cfg.banding.validate();
    if (cfg.banding.bands.front().lo != 0.0)
        throw DomainError("first GPA band must start at 0.0");
    cfg.encoding.validate();
    return cfg;
}

ToolkitConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace fc45
