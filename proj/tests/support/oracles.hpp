#pragma once

// Brute-force reference implementations used to cross-check the library.
// Deliberately written in a plain style with no shared code beyond the data
// model: map-based counting, direct formulas, dense-grid integration.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fc45/schema.hpp"

namespace oracle {

inline double entropy(const std::vector<double>& counts) {
    double total = 0.0;
    for (double c : counts) total += c;
    double h = 0.0;
    for (double c : counts)
        if (c > 0.0) h -= (c / total) * std::log2(c / total);
    return h;
}

inline double split_info(const std::vector<double>& sizes) {
    return entropy(sizes);
}

struct Split {
    std::string attribute;
    bool numeric = false;
    double threshold = 0.0;
    double gain = 0.0;
    double si = 0.0;
    double ratio = 0.0;
};

namespace detail {

using Counts = std::map<std::string, double>;

inline double entropy_of(const Counts& counts) {
    std::vector<double> v;
    for (const auto& [_, c] : counts) v.push_back(c);
    return entropy(v);
}

inline double sum_of(const Counts& counts) {
    double t = 0.0;
    for (const auto& [_, c] : counts) t += c;
    return t;
}

} // namespace detail

// Reference split selection. Semantics: one candidate per attribute
// (categorical: domain partition; numeric: the midpoint threshold with the
// highest gain, smaller threshold on ties), gain scaled by the fraction of
// rows with a known value, split info over the known-value blocks, candidates
// with non-positive gain or near-zero split info dropped, then the best gain
// ratio among candidates with at least average gain. Ties keep the earlier
// attribute in schema order.
inline std::optional<Split> best_split(const std::vector<fc45::StudentRecord>& records,
                                       const fc45::Schema& schema) {
    const double n = static_cast<double>(records.size());
    if (records.empty()) return std::nullopt;

    std::vector<Split> candidates;
    for (std::size_t ai = 0; ai < schema.inputs.size(); ++ai) {
        const auto& attr = schema.inputs[ai];

        std::vector<const fc45::StudentRecord*> known;
        for (const auto& r : records)
            if (!fc45::is_missing(r.values[ai])) known.push_back(&r);
        if (known.empty()) continue;
        const double kw = static_cast<double>(known.size());

        detail::Counts parent;
        for (const auto* r : known) parent[*r->observed_major] += 1.0;
        const double hp = detail::entropy_of(parent);

        if (fc45::is_categorical(attr.kind)) {
            std::map<std::string, detail::Counts> blocks;
            for (const auto* r : known)
                blocks[std::get<std::string>(r->values[ai])][*r->observed_major] += 1.0;
            double rem = 0.0;
            std::vector<double> sizes;
            for (const auto& [_, block] : blocks) {
                double bw = detail::sum_of(block);
                sizes.push_back(bw);
                rem += bw / kw * detail::entropy_of(block);
            }
            double gain = (kw / n) * (hp - rem);
            double si = split_info(sizes);
            if (gain > 0.0 && si >= 1e-10)
                candidates.push_back({attr.name, false, 0.0, gain, si, gain / si});
            continue;
        }

        std::vector<double> values;
        for (const auto* r : known) values.push_back(std::get<double>(r->values[ai]));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());

        std::optional<Split> best_t;
        for (std::size_t i = 0; i + 1 < values.size(); ++i) {
            double t = (values[i] + values[i + 1]) / 2.0;
            detail::Counts lo, hi;
            for (const auto* r : known) {
                double v = std::get<double>(r->values[ai]);
                (v <= t ? lo : hi)[*r->observed_major] += 1.0;
            }
            double lo_w = detail::sum_of(lo), hi_w = detail::sum_of(hi);
            double rem = lo_w / kw * detail::entropy_of(lo) +
                         hi_w / kw * detail::entropy_of(hi);
            double gain = (kw / n) * (hp - rem);
            double si = split_info({lo_w, hi_w});
            if (gain <= 0.0 || si < 1e-10) continue;
            if (!best_t || gain > best_t->gain)
                best_t = Split{attr.name, true, t, gain, si, gain / si};
        }
        if (best_t) candidates.push_back(*best_t);
    }

    if (candidates.empty()) return std::nullopt;

    double avg = 0.0;
    for (const auto& c : candidates) avg += c.gain;
    avg /= static_cast<double>(candidates.size());

    const Split* chosen = nullptr;
    for (const auto& c : candidates) {
        if (c.gain < avg) continue;
        if (!chosen || c.ratio > chosen->ratio) chosen = &c;
    }
    if (!chosen)
        for (const auto& c : candidates)
            if (!chosen || c.gain > chosen->gain) chosen = &c;
    return *chosen;
}

// Centroid of an arbitrary membership curve by dense sampling. Used as the
// ground truth the coarse fixed-resolution defuzzifier is compared against.
inline double centroid_fine(const std::function<double(double)>& mu, double lo,
                            double hi, std::size_t samples = 1000001) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        double y = lo + (hi - lo) * static_cast<double>(i) /
                            static_cast<double>(samples - 1);
        double m = mu(y);
        num += y * m;
        den += m;
    }
    if (den <= 0.0) throw std::runtime_error("centroid_fine: empty membership curve");
    return num / den;
}

} // namespace oracle
