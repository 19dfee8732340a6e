#pragma once

#include <string>
#include <vector>

#include "fc45/schema.hpp"

// Reference decision tree over the banded student attributes, in the J48 text
// dialect. This exact byte sequence is the canonical print form: parsing it
// and printing the result must reproduce it unchanged.
inline const std::string REFERENCE_TREE_TEXT =
    R"(X11 = VERY_GOOD
| X7 = A-: PROGRAMMING (2.0/1.0)
| X7 = B+: PROGRAMMING (17.0/5.0)
| X7 = B: PROGRAMMING (27.0/2.0)
| X7 = B-
| | X12 = VERY_GOOD: PROGRAMMING (8.0/2.0)
| | X12 = CUMLAUDE: PROGRAMMING (0.0)
| | X12 = GOOD: MULTIMEDIA (2.0)
| | X12 = FAILED: PROGRAMMING (0.0)
| X7 = C+: WEB (4.0/1.0)
| X7 = C: MULTIMEDIA (6.0/2.0)
| X7 = D: PROGRAMMING (0.0)
| X7 = E: PROGRAMMING (0.0)
X11 = CUMLAUDE: PROGRAMMING (52.0/1.0)
X11 = GOOD
| X12 = VERY_GOOD: MULTIMEDIA (4.0/1.0)
| X12 = CUMLAUDE: MULTIMEDIA (0.0)
| X12 = GOOD: WEB (2.0)
| X12 = FAILED: MULTIMEDIA (1.0)
X11 = FAILED: MULTIMEDIA (1.0)
)";

// The classic 14-day play/don't-play weather table: two categorical and two
// numeric inputs, boolean class. Small enough to verify split statistics by
// hand.
inline const std::string WEATHER_CSV =
    "outlook,temperature,humidity,windy,play\n"
    "sunny,85,85,FALSE,no\n"
    "sunny,80,90,TRUE,no\n"
    "overcast,83,86,FALSE,yes\n"
    "rainy,70,96,FALSE,yes\n"
    "rainy,68,80,FALSE,yes\n"
    "rainy,65,70,TRUE,no\n"
    "overcast,64,65,TRUE,yes\n"
    "sunny,72,95,FALSE,no\n"
    "sunny,69,70,FALSE,yes\n"
    "rainy,75,80,FALSE,yes\n"
    "sunny,75,70,TRUE,yes\n"
    "overcast,72,90,TRUE,yes\n"
    "overcast,81,75,FALSE,yes\n"
    "rainy,71,91,TRUE,no\n";

inline fc45::Schema weather_schema() {
    fc45::Schema s;
    fc45::AttributeSpec outlook;
    outlook.name = "outlook";
    outlook.kind = fc45::AttrKind::Categorical;
    outlook.domain = {"sunny", "overcast", "rainy"};
    fc45::AttributeSpec temperature;
    temperature.name = "temperature";
    temperature.kind = fc45::AttrKind::Numeric;
    temperature.lo = 64.0;
    temperature.hi = 85.0;
    fc45::AttributeSpec humidity;
    humidity.name = "humidity";
    humidity.kind = fc45::AttrKind::Numeric;
    humidity.lo = 65.0;
    humidity.hi = 96.0;
    fc45::AttributeSpec windy;
    windy.name = "windy";
    windy.kind = fc45::AttrKind::Categorical;
    windy.domain = {"FALSE", "TRUE"};
    s.inputs = {outlook, temperature, humidity, windy};
    s.class_attribute.name = "play";
    s.class_attribute.kind = fc45::AttrKind::ClassLabel;
    s.class_attribute.domain = {"no", "yes"};
    return s;
}

inline std::vector<fc45::StudentRecord> weather_records() {
    struct Row {
        const char* outlook;
        double temperature;
        double humidity;
        const char* windy;
        const char* play;
    };
    static const Row rows[] = {
        {"sunny", 85, 85, "FALSE", "no"},   {"sunny", 80, 90, "TRUE", "no"},
        {"overcast", 83, 86, "FALSE", "yes"}, {"rainy", 70, 96, "FALSE", "yes"},
        {"rainy", 68, 80, "FALSE", "yes"},  {"rainy", 65, 70, "TRUE", "no"},
        {"overcast", 64, 65, "TRUE", "yes"}, {"sunny", 72, 95, "FALSE", "no"},
        {"sunny", 69, 70, "FALSE", "yes"},  {"rainy", 75, 80, "FALSE", "yes"},
        {"sunny", 75, 70, "TRUE", "yes"},   {"overcast", 72, 90, "TRUE", "yes"},
        {"overcast", 81, 75, "FALSE", "yes"}, {"rainy", 71, 91, "TRUE", "no"},
    };
    std::vector<fc45::StudentRecord> out;
    int i = 0;
    for (const Row& r : rows) {
        fc45::StudentRecord rec;
        // matches the ids parse_csv synthesizes when the CSV has no id column
        rec.id = "row" + std::to_string(++i);
        rec.values = {std::string(r.outlook), r.temperature, r.humidity,
                      std::string(r.windy)};
        rec.observed_major = r.play;
        out.push_back(std::move(rec));
    }
    return out;
}
