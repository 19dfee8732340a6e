#include <doctest.h>

#include <cmath>

#include "fc45/c45.hpp"
#include "fc45/errors.hpp"
#include "fc45/tree_text.hpp"

#include "support/datasets.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace fc45;

namespace {

ClassDistribution dist(std::initializer_list<std::pair<const char*, double>> init) {
    ClassDistribution d;
    for (const auto& [label, c] : init) d.add(label, c);
    return d;
}

std::vector<int> all_inputs(const Schema& s) {
    std::vector<int> v;
    for (int i = 0; i < static_cast<int>(s.inputs.size()); ++i) v.push_back(i);
    return v;
}

} // namespace

TEST_CASE("entropy matches hand values") {
    CHECK(entropy(dist({{"yes", 9}, {"no", 5}})) ==
          doctest::Approx(0.94028595867063114).epsilon(1e-12));
    CHECK(entropy(dist({{"a", 7}})) == 0.0);
    CHECK(entropy(dist({{"a", 1}, {"b", 1}})) == doctest::Approx(1.0));
    CHECK(entropy(dist({{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}})) ==
          doctest::Approx(2.0));
    CHECK_THROWS_AS(entropy(ClassDistribution{}), DomainError);
    CHECK_THROWS_AS(entropy(dist({{"a", -1}, {"b", 2}})), DomainError);
}

TEST_CASE("information gain matches hand values") {
    auto parent = dist({{"yes", 9}, {"no", 5}});
    std::vector<ClassDistribution> part = {dist({{"yes", 2}, {"no", 3}}),
                                           dist({{"yes", 4}}),
                                           dist({{"yes", 3}, {"no", 2}})};
    CHECK(information_gain(parent, part) ==
          doctest::Approx(0.24674981977443933).epsilon(1e-12));

    // partition must rebuild the parent exactly
    std::vector<ClassDistribution> bad = {dist({{"yes", 9}}), dist({{"no", 4}})};
    CHECK_THROWS_AS(information_gain(parent, bad), ConsistencyError);
}

TEST_CASE("split info matches hand values") {
    CHECK(split_info({4, 6, 4}) ==
          doctest::Approx(1.5566567074628228).epsilon(1e-12));
    CHECK(split_info({7, 7}) == doctest::Approx(1.0));
    CHECK(split_info({14, 0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(split_info({0, 0}), DomainError);
    CHECK_THROWS_AS(split_info({-1, 2}), DomainError);
}

TEST_CASE("entropy and split info agree with the reference on random counts") {
    TestRng rng(7001);
    for (int it = 0; it < 200; ++it) {
        long k = rng.range(1, 6);
        ClassDistribution d;
        std::vector<double> counts;
        for (long i = 0; i < k; ++i) {
            double c = rng.chance(0.15) ? 0.0 : rng.real(0.0, 50.0);
            counts.push_back(c);
            if (c > 0.0) d.add("c" + std::to_string(i), c);
        }
        if (d.counts.empty()) continue;
        CHECK(entropy(d) == doctest::Approx(oracle::entropy(counts)).epsilon(1e-12));
        bool any = false;
        for (double c : counts) any = any || c > 0.0;
        if (any)
            CHECK(split_info(counts) ==
                  doctest::Approx(oracle::split_info(counts)).epsilon(1e-12));
    }
}

TEST_CASE("weather split statistics") {
    Schema s = weather_schema();
    auto recs = weather_records();
    InductionParams params;

    auto best = best_split(recs, s, all_inputs(s), params);
    REQUIRE(best.has_value());
    CHECK(best->attribute == "outlook");
    CHECK_FALSE(best->numeric);
    CHECK(best->gain == doctest::Approx(0.24674981977443933).epsilon(1e-12));
    CHECK(best->split_info == doctest::Approx(1.5774062828523454).epsilon(1e-12));
    CHECK(best->gain_ratio == doctest::Approx(0.15642756242117528).epsilon(1e-12));

    // the 13-vs-1 temperature cut has the best raw ratio (0.3055) but falls
    // below average gain, so it must not be chosen
    auto temp_only = best_split(recs, s, {1}, params);
    REQUIRE(temp_only.has_value());
    CHECK(temp_only->numeric);
    CHECK(temp_only->threshold == 84.0);
    CHECK(temp_only->gain == doctest::Approx(0.1134008641811034).epsilon(1e-12));
    CHECK(temp_only->gain_ratio ==
          doctest::Approx(0.30547141518417825).epsilon(1e-12));

    auto hum_only = best_split(recs, s, {2}, params);
    REQUIRE(hum_only.has_value());
    CHECK(hum_only->threshold == 82.5);
    CHECK(hum_only->gain == doctest::Approx(0.15183550136234164).epsilon(1e-12));

    auto windy_only = best_split(recs, s, {3}, params);
    REQUIRE(windy_only.has_value());
    CHECK(windy_only->gain == doctest::Approx(0.048127030408269489).epsilon(1e-12));

    InductionParams by_gain;
    by_gain.use_gain_ratio = false;
    auto raw = best_split(recs, s, all_inputs(s), by_gain);
    REQUIRE(raw.has_value());
    CHECK(raw->attribute == "outlook"); // highest raw gain as well
}

TEST_CASE("weather tree structure and training accuracy") {
    Schema s = weather_schema();
    auto recs = weather_records();
    DecisionTree t = build_tree(recs, s, InductionParams{});

    std::string expected = "outlook = sunny\n"
                           "| humidity <= 77.5: yes (2.0)\n"
                           "| humidity > 77.5: no (3.0)\n"
                           "outlook = overcast: yes (4.0)\n"
                           "outlook = rainy\n"
                           "| windy = FALSE: yes (3.0)\n"
                           "| windy = TRUE: no (2.0)\n";
    CHECK(print_j48_text(t) == expected);
    CHECK(t.leaf_count() == 5);
    CHECK(t.node_count() == 8);
    CHECK(t.weight() == doctest::Approx(14.0));

    for (const auto& r : recs) {
        auto c = classify(t, r, s, default_gpa_banding());
        CHECK(c.label == *r.observed_major);
    }

    // deterministic: same input, identical tree
    CHECK(build_tree(recs, s, InductionParams{}) == t);
}

TEST_CASE("split selection agrees with the reference on random datasets") {
    TestRng rng(7002);
    InductionParams params;
    int compared = 0;
    for (int it = 0; it < 40; ++it) {
        Schema s = random_schema(rng);
        auto recs = random_records(rng, s);
        auto got = best_split(recs, s, all_inputs(s), params);
        auto want = oracle::best_split(recs, s);
        REQUIRE(got.has_value() == want.has_value());
        if (!got) continue;
        ++compared;
        CHECK(got->attribute == want->attribute);
        CHECK(got->numeric == want->numeric);
        if (got->numeric) CHECK(got->threshold == doctest::Approx(want->threshold));
        CHECK(got->gain == doctest::Approx(want->gain).epsilon(1e-9));
        CHECK(got->split_info == doctest::Approx(want->si).epsilon(1e-9));
        CHECK(got->gain_ratio == doctest::Approx(want->ratio).epsilon(1e-9));
    }
    CHECK(compared > 20); // the generator must not degenerate into no-split data
}

TEST_CASE("missing values descend fractionally") {
    Schema s;
    AttributeSpec a;
    a.name = "A";
    a.kind = AttrKind::Categorical;
    a.domain = {"x", "y"};
    s.inputs = {a};
    s.class_attribute.name = "cls";
    s.class_attribute.kind = AttrKind::ClassLabel;
    s.class_attribute.domain = {"c1", "c2"};

    auto row = [](const char* id, Value v, const char* label) {
        StudentRecord r;
        r.id = id;
        r.values = {std::move(v)};
        r.observed_major = label;
        return r;
    };
    std::vector<StudentRecord> recs = {
        row("k1", std::string("x"), "c1"), row("k2", std::string("x"), "c1"),
        row("k3", std::string("y"), "c2"), row("k4", std::string("y"), "c2"),
        row("m1", Missing{}, "c1"),
    };

    // gain over known rows is 1 bit, scaled by known fraction 4/5
    auto best = best_split(recs, s, {0}, InductionParams{});
    REQUIRE(best.has_value());
    CHECK(best->gain == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(best->split_info == doctest::Approx(1.0).epsilon(1e-12));

    // the missing row follows both branches with half its weight
    DecisionTree t = build_tree(recs, s, InductionParams{});
    REQUIRE_FALSE(t.is_leaf());
    REQUIRE(t.node().branches.size() == 2);
    const auto& bx = t.node().branches[0].subtree.leaf();
    const auto& by = t.node().branches[1].subtree.leaf();
    CHECK(bx.label == "c1");
    CHECK(bx.total == doctest::Approx(2.5));
    CHECK(bx.misclassified == doctest::Approx(0.0));
    CHECK(by.label == "c2");
    CHECK(by.total == doctest::Approx(2.5));
    CHECK(by.misclassified == doctest::Approx(0.5));
}

TEST_CASE("classify routes missing values to the heaviest branch") {
    Schema s;
    AttributeSpec a;
    a.name = "A";
    a.kind = AttrKind::Categorical;
    a.domain = {"x", "y"};
    s.inputs = {a};
    s.class_attribute.name = "cls";
    s.class_attribute.kind = AttrKind::ClassLabel;
    s.class_attribute.domain = {"c1", "c2"};

    DecisionTree t = make_node("A", {{"x", make_leaf("c1", 6.0, 0.0)},
                                     {"y", make_leaf("c2", 2.0, 0.0)}});
    StudentRecord r;
    r.id = "q";
    r.values = {Missing{}};
    CHECK(classify(t, r, s, default_gpa_banding()).label == "c1");
}

TEST_CASE("classify on the reference tree") {
    DecisionTree t = parse_j48_text(REFERENCE_TREE_TEXT);
    Schema s = student_schema();
    GpaBanding b = default_gpa_banding();

    StudentRecord r;
    r.id = "s";
    r.values.assign(12, Missing{});
    r.values[6] = std::string("B"); // X7
    r.values[10] = 3.0;             // X11 -> VERY_GOOD
    auto c = classify(t, r, s, b);
    CHECK(c.label == "PROGRAMMING");
    CHECK(c.leaf_total == 27.0);
    CHECK(c.leaf_misclassified == 2.0);

    r.values[10] = 2.5; // GOOD branch tests X12
    r.values[11] = 3.0; // VERY_GOOD
    c = classify(t, r, s, b);
    CHECK(c.label == "MULTIMEDIA");
    CHECK(c.leaf_total == 4.0);

    // X7 = A has no branch in this tree
    r.values[10] = 3.0;
    r.values[6] = std::string("A");
    CHECK_THROWS_AS(classify(t, r, s, b), TreeMismatchError);
    CHECK(classify(t, r, s, b, AbsentBranchPolicy::LargestBranch).label ==
          "PROGRAMMING"); // heaviest sibling is X7 = B with 27 rows
}

TEST_CASE("small datasets stop at a majority leaf") {
    Schema s = weather_schema();
    auto recs = weather_records();
    recs.resize(3); // below twice the minimum leaf weight
    DecisionTree t = build_tree(recs, s, InductionParams{});
    REQUIRE(t.is_leaf());
    CHECK(t.leaf().label == "no"); // 2 no vs 1 yes in the first three rows
    CHECK(t.leaf().total == doctest::Approx(3.0));
    CHECK(t.leaf().misclassified == doctest::Approx(1.0));
}

TEST_CASE("majority tie-break follows the preference order") {
    auto d = dist({{"b", 2}, {"a", 2}});
    CHECK(d.majority({"a", "b"}) == "a");
    CHECK(d.majority({"b", "a"}) == "b");
    CHECK(dist({{"z", 5}}).majority({"a", "b"}) == "z"); // outside the order
}

TEST_CASE("pruning collapses uninformative splits and keeps clean ones") {
    Schema s;
    AttributeSpec a;
    a.name = "A";
    a.kind = AttrKind::Categorical;
    a.domain = {"x", "y"};
    s.inputs = {a};
    s.class_attribute.name = "cls";
    s.class_attribute.kind = AttrKind::ClassLabel;
    s.class_attribute.domain = {"c1", "c2"};

    auto row = [](const char* id, const char* v, const char* label) {
        StudentRecord r;
        r.id = id;
        r.values = {std::string(v)};
        r.observed_major = label;
        return r;
    };

    // both branches predict the same class: the split adds nothing and the
    // pessimistic estimate of the merged leaf is lower
    std::vector<StudentRecord> same = {row("1", "x", "c1"), row("2", "y", "c1")};
    DecisionTree t = make_node("A", {{"x", make_leaf("c1", 1.0, 0.0)},
                                     {"y", make_leaf("c1", 1.0, 0.0)}});
    DecisionTree pruned = prune_tree(t, same, s, InductionParams{});
    REQUIRE(pruned.is_leaf());
    CHECK(pruned.leaf().label == "c1");
    CHECK(pruned.leaf().total == doctest::Approx(2.0));
    CHECK(pruned.leaf().misclassified == doctest::Approx(0.0));
    CHECK(prune_tree(pruned, same, s, InductionParams{}) == pruned); // idempotent

    // a perfect informative split survives
    Schema ws = weather_schema();
    auto wrecs = weather_records();
    DecisionTree wt = build_tree(wrecs, ws, InductionParams{});
    CHECK(prune_tree(wt, wrecs, ws, InductionParams{}) == wt);
}

TEST_CASE("pruning never grows the tree on noisy data") {
    Schema s = weather_schema();
    auto recs = weather_records();
    TestRng rng(7003);
    for (int it = 0; it < 20; ++it) {
        auto noisy = recs;
        for (auto& r : noisy)
            if (rng.chance(0.2))
                r.observed_major = *r.observed_major == "yes" ? "no" : "yes";
        DecisionTree grown = build_tree(noisy, s, InductionParams{});
        DecisionTree pruned = prune_tree(grown, noisy, s, InductionParams{});
        CHECK(pruned.node_count() <= grown.node_count());
        CHECK(prune_tree(pruned, noisy, s, InductionParams{}) == pruned);
    }
}

TEST_CASE("tree counters on the reference tree") {
    DecisionTree t = parse_j48_text(REFERENCE_TREE_TEXT);
    CHECK(t.leaf_count() == 17);
    CHECK(t.node_count() == 21); // 4 internal nodes + 17 leaves
    CHECK(t.weight() == doctest::Approx(126.0));
}
