#include <doctest.h>

#include <cmath>

#include "fc45/errors.hpp"
#include "fc45/fuzzy.hpp"

#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace fc45;

namespace {

// three output classes on [0,30], triangle per class, the layout the rule
// compiler produces for the student schema
FuzzyInferenceSystem tiny_fis() {
    FuzzyInferenceSystem fis;
    fis.name = "tiny";
    LinguisticVariable x;
    x.name = "x";
    x.lo = 0.0;
    x.hi = 10.0;
    x.terms = {{"low", Trapezoidal{0, 0, 2, 5}},
               {"high", Trapezoidal{2, 5, 10, 10}}};
    fis.inputs = {x};
    fis.output.name = "class";
    fis.output.lo = 0.0;
    fis.output.hi = 30.0;
    fis.output.terms = {{"first", Triangular{0, 5, 10}},
                        {"second", Triangular{10, 15, 20}},
                        {"third", Triangular{20, 25, 30}}};
    fis.rules = {
        FuzzyRule{{{"x", "low"}}, {"class", "first"}, 1.0},
        FuzzyRule{{{"x", "high"}}, {"class", "third"}, 1.0},
    };
    return fis;
}

} // namespace

TEST_CASE("triangular membership") {
    Triangular t{0, 5, 10};
    CHECK(membership(t, -1) == 0.0);
    CHECK(membership(t, 0) == 0.0);
    CHECK(membership(t, 2.5) == doctest::Approx(0.5));
    CHECK(membership(t, 5) == 1.0);
    CHECK(membership(t, 7.5) == doctest::Approx(0.5));
    CHECK(membership(t, 10) == 0.0);
    CHECK(membership(t, 11) == 0.0);

    // degenerate edges: a == b gives a left shoulder, peak still 1
    CHECK(membership(Triangular{0, 0, 4}, 0) == 1.0);
    CHECK(membership(Triangular{0, 0, 4}, 2) == doctest::Approx(0.5));
    CHECK(membership(Triangular{0, 4, 4}, 4) == 1.0);
    CHECK(membership(Triangular{2, 2, 2}, 2) == 1.0);
    CHECK(membership(Triangular{2, 2, 2}, 2.001) == 0.0);

    CHECK_THROWS_AS(validate_mf(Triangular{1, 0, 2}), DomainError);
    CHECK_THROWS_AS(validate_mf(Triangular{0, 3, 2}), DomainError);
    CHECK_NOTHROW(validate_mf(Triangular{0, 0, 0}));
}

TEST_CASE("trapezoidal membership") {
    Trapezoidal t{0, 2, 4, 8};
    CHECK(membership(t, 0) == 0.0);
    CHECK(membership(t, 1) == doctest::Approx(0.5));
    CHECK(membership(t, 2) == 1.0);
    CHECK(membership(t, 3) == 1.0);
    CHECK(membership(t, 4) == 1.0);
    CHECK(membership(t, 6) == doctest::Approx(0.5));
    CHECK(membership(t, 8) == 0.0);

    // shoulder forms used for the extreme grade terms
    Trapezoidal left{0, 0, 0, 1};
    CHECK(membership(left, 0) == 1.0);
    CHECK(membership(left, 0.5) == doctest::Approx(0.5));
    CHECK(membership(left, 1) == 0.0);
    Trapezoidal right{3.7, 4, 4, 4};
    CHECK(membership(right, 4) == 1.0);
    CHECK(membership(right, 3.85) == doctest::Approx(0.5));
    CHECK(membership(right, 3.7) == 0.0);

    CHECK_THROWS_AS(validate_mf(Trapezoidal{0, 3, 2, 4}), DomainError);
    CHECK_THROWS_AS(validate_mf(Trapezoidal{5, 5, 5, 4}), DomainError);
}

TEST_CASE("gaussian membership") {
    Gaussian g{2.0, 10.0};
    CHECK(membership(g, 10) == 1.0);
    CHECK(membership(g, 12) == doctest::Approx(std::exp(-0.5)));
    CHECK(membership(g, 8) == doctest::Approx(std::exp(-0.5)));
    CHECK(membership(g, 16) == doctest::Approx(std::exp(-4.5)));
    CHECK_THROWS_AS(validate_mf(Gaussian{0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(validate_mf(Gaussian{-1.0, 1.0}), DomainError);
}

TEST_CASE("crisp indicator membership") {
    CrispIndicator pts;
    pts.points = {1.0, 2.0, 3.3};
    CHECK(membership(pts, 2.0) == 1.0);
    CHECK(membership(pts, 2.0 + 5e-10) == 1.0); // point tolerance
    CHECK(membership(pts, 2.1) == 0.0);
    CHECK(membership(pts, 3.3) == 1.0);

    CrispIndicator band;
    band.interval = true;
    band.lo = 2.0;
    band.hi = 2.76;
    CHECK(membership(band, 2.0) == 1.0);
    CHECK(membership(band, 2.5) == 1.0);
    CHECK(membership(band, 2.76) == 0.0); // half-open by default
    CHECK(membership(band, 1.99) == 0.0);
    band.closed_hi = true;
    CHECK(membership(band, 2.76) == 1.0);

    CrispIndicator empty;
    CHECK_THROWS_AS(validate_mf(empty), DomainError);
    CrispIndicator bad;
    bad.interval = true;
    bad.lo = 3.0;
    bad.hi = 2.0;
    CHECK_THROWS_AS(validate_mf(bad), DomainError);
}

TEST_CASE("fuzzify evaluates every term and checks the universe") {
    LinguisticVariable v;
    v.name = "gpa";
    v.lo = 0.0;
    v.hi = 4.0;
    v.terms = {{"low", Trapezoidal{0, 0, 1, 2}}, {"high", Trapezoidal{1, 2, 4, 4}}};
    auto deg = fuzzify(v, 1.5);
    CHECK(deg.size() == 2);
    CHECK(deg["low"] == doctest::Approx(0.5));
    CHECK(deg["high"] == doctest::Approx(0.5));
    CHECK_THROWS_AS(fuzzify(v, 4.5), DomainError);
    CHECK_THROWS_AS(fuzzify(v, -0.5), DomainError);
}

TEST_CASE("firing strength is weight times min over clauses") {
    FuzzyRule r;
    r.antecedent = {{"a", "t1"}, {"b", "t2"}};
    r.consequent = {"out", "c"};
    r.weight = 0.5;
    std::map<std::string, std::map<std::string, double>> fz = {
        {"a", {{"t1", 0.8}}},
        {"b", {{"t2", 0.6}}},
    };
    CHECK(firing_strength(r, fz) == doctest::Approx(0.5 * 0.6));
    fz["b"]["t2"] = 0.9;
    CHECK(firing_strength(r, fz) == doctest::Approx(0.5 * 0.8));

    FuzzyRule unknown_var = r;
    unknown_var.antecedent[0].first = "zz";
    CHECK_THROWS_AS(firing_strength(unknown_var, fz), RuleBaseError);
    FuzzyRule unknown_term = r;
    unknown_term.antecedent[0].second = "zz";
    CHECK_THROWS_AS(firing_strength(unknown_term, fz), RuleBaseError);
}

TEST_CASE("aggregation clips and takes the pointwise max") {
    FuzzyInferenceSystem fis = tiny_fis();
    fis.resolution = 31; // step 1.0 on [0,30]
    auto agg = aggregate_output(fis, {0.5, 0.25});
    REQUIRE(agg.size() == 31);
    CHECK(agg[5] == doctest::Approx(0.5));   // first triangle peak, clipped
    CHECK(agg[2] == doctest::Approx(0.4));   // rising edge below the clip
    CHECK(agg[15] == doctest::Approx(0.0));  // second class not in any rule
    CHECK(agg[25] == doctest::Approx(0.25)); // third triangle peak, clipped
    CHECK(agg[0] == 0.0);
    CHECK(agg[30] == 0.0);

    CHECK_THROWS_AS(aggregate_output(fis, {0.5}), DomainError); // arity
    fis.resolution = 1;
    CHECK_THROWS_AS(aggregate_output(fis, {0.5, 0.25}), DomainError);
}

TEST_CASE("centroid of a symmetric set is its center when on-grid") {
    // triangle centered at 15: 15 lies on the 1001-point grid of [0,30]
    std::vector<double> samples(1001);
    Triangular t{10, 15, 20};
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = membership(t, 30.0 * static_cast<double>(i) / 1000.0);
    CHECK(defuzz_centroid(samples, 0.0, 30.0) == doctest::Approx(15.0).epsilon(1e-12));

    CHECK_THROWS_AS(defuzz_centroid(std::vector<double>(1001, 0.0), 0.0, 30.0),
                    NoActivationError);
}

TEST_CASE("centroid tracks the dense-grid reference") {
    TestRng rng(9001);
    for (int it = 0; it < 30; ++it) {
        // random clipped triangles over [0,30], aggregated by max
        long k = rng.range(1, 3);
        std::vector<std::pair<Triangular, double>> parts;
        for (long i = 0; i < k; ++i) {
            double a = rng.real(0.0, 20.0);
            double b = a + rng.real(0.5, 5.0);
            double c = b + rng.real(0.5, 5.0);
            parts.push_back({Triangular{a, b, std::min(c, 30.0)},
                             rng.real(0.1, 1.0)});
        }
        auto mu = [&](double y) {
            double m = 0.0;
            for (const auto& [tri, s] : parts)
                m = std::max(m, std::min(s, membership(tri, y)));
            return m;
        };
        std::vector<double> samples(1001);
        for (std::size_t i = 0; i < samples.size(); ++i)
            samples[i] = mu(30.0 * static_cast<double>(i) / 1000.0);
        double coarse = defuzz_centroid(samples, 0.0, 30.0);
        double fine = oracle::centroid_fine(mu, 0.0, 30.0, 200001);
        CHECK(std::abs(coarse - fine) <= 30.0 * 1e-4);
    }
}

TEST_CASE("inference end to end") {
    FuzzyInferenceSystem fis = tiny_fis();
    CHECK_NOTHROW(fis.validate());

    // x = 1 is fully "low": only the first rule fires
    auto r = infer(fis, {{"x", 1.0}});
    CHECK(r.rule_strengths[0] == doctest::Approx(1.0));
    CHECK(r.rule_strengths[1] == doctest::Approx(0.0));
    CHECK(r.label == "first");
    CHECK(r.crisp == doctest::Approx(5.0).epsilon(1e-3));

    // x = 3.5 fires both rules equally; the aggregate is symmetric around 15
    r = infer(fis, {{"x", 3.5}});
    CHECK(r.rule_strengths[0] == doctest::Approx(0.5));
    CHECK(r.rule_strengths[1] == doctest::Approx(0.5));
    CHECK(r.crisp == doctest::Approx(15.0).epsilon(1e-9));
    // the label scans every declared output term, not just the fired ones,
    // and "second" peaks exactly at 15
    CHECK(r.label == "second");

    CHECK_THROWS_AS(infer(fis, {}), DomainError);                  // missing input
    CHECK_THROWS_AS(infer(fis, {{"zz", 1.0}}), DomainError);       // unknown input
    CHECK_THROWS_AS(infer(fis, {{"x", 99.0}}), DomainError);       // outside universe
}

TEST_CASE("no activation lists the inputs") {
    FuzzyInferenceSystem fis = tiny_fis();
    // carve a hole: only a rule on a term that is zero at x = 3.5
    fis.inputs[0].terms.push_back({"nowhere", Triangular{9, 9.5, 10}});
    fis.rules = {FuzzyRule{{{"x", "nowhere"}}, {"class", "first"}, 1.0}};
    try {
        infer(fis, {{"x", 3.5}});
        FAIL("expected NoActivationError");
    } catch (const NoActivationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("no rule fired") != std::string::npos);
        CHECK(msg.find("x=3.5") != std::string::npos);
    }
}

TEST_CASE("system validation") {
    FuzzyInferenceSystem fis = tiny_fis();
    fis.rules[0].weight = 0.0;
    CHECK_THROWS_AS(fis.validate(), RuleBaseError);
    fis = tiny_fis();
    fis.rules[0].weight = 1.5;
    CHECK_THROWS_AS(fis.validate(), RuleBaseError);
    fis = tiny_fis();
    fis.rules[0].antecedent[0].second = "zz"; // unknown term
    CHECK_THROWS_AS(fis.validate(), RuleBaseError);
    fis = tiny_fis();
    fis.rules[0].antecedent.push_back({"x", "high"}); // variable twice
    CHECK_THROWS_AS(fis.validate(), RuleBaseError);
    fis = tiny_fis();
    fis.resolution = 1;
    CHECK_THROWS_AS(fis.validate(), DomainError);
    fis = tiny_fis();
    fis.inputs[0].lo = 11.0; // inverted universe
    CHECK_THROWS_AS(fis.validate(), DomainError);
}
