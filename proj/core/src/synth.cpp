#include "fc45/synth.hpp"

#include <random>

#include "fc45/errors.hpp"

namespace fc45 {
namespace {

// std::uniform_*_distribution output differs between standard libraries, so
// derive draws from the raw mt19937_64 stream directly.
struct Draws {
    std::mt19937_64 rng;

    explicit Draws(std::uint64_t seed) : rng(seed) {}

    double real01() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng() % n); }
};

} // namespace

std::vector<StudentRecord> generate_synthetic(std::size_t n, const Schema& schema,
                                              std::uint64_t seed,
                                              const DecisionTree& tree,
                                              double noise_rate,
                                              const GpaBanding& banding) {
    if (!(noise_rate >= 0.0 && noise_rate <= 1.0))
        throw DomainError("noise_rate must lie in [0,1]");
    schema.validate();
    const auto& classes = schema.class_attribute.domain;
    if (classes.size() < 2 && noise_rate > 0.0)
        throw DomainError("label noise needs at least two classes");

    Draws draws(seed);
    std::vector<StudentRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        StudentRecord rec;
        rec.id = "S" + std::to_string(i + 1);
        rec.values.reserve(schema.inputs.size());
        for (const auto& attr : schema.inputs) {
            switch (attr.kind) {
            case AttrKind::LetterGrade:
            case AttrKind::Categorical:
                rec.values.emplace_back(attr.domain[draws.index(attr.domain.size())]);
                break;
            case AttrKind::Gpa:
            case AttrKind::Numeric:
                rec.values.emplace_back(attr.lo + (attr.hi - attr.lo) * draws.real01());
                break;
            case AttrKind::ClassLabel:
                throw SchemaError("class attribute listed among inputs");
            }
        }
        std::string label =
            classify(tree, rec, schema, banding, AbsentBranchPolicy::LargestBranch)
                .label;
        // fixed draw count per record keeps inputs independent of noise_rate
        double u = draws.real01();
        std::size_t alt = classes.size() > 1 ? draws.index(classes.size() - 1) : 0;
        if (u < noise_rate) {
            std::size_t own = 0;
            while (own < classes.size() && classes[own] != label) ++own;
            label = classes[alt + (alt >= own ? 1 : 0)];
        }
        rec.observed_major = label;
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace fc45
