#include "fc45/tree_json.hpp"

#include <json.hpp>

#include "fc45/errors.hpp"

namespace fc45 {
namespace {

using nlohmann::json;

json encode(const DecisionTree& tree) {
    if (tree.is_leaf()) {
        const auto& l = tree.leaf();
        return json{{"leaf", json{{"label", l.label},
                                  {"total", l.total},
                                  {"misclassified", l.misclassified}}}};
    }
    const auto& n = tree.node();
    json branches = json::array();
    for (const auto& b : n.branches)
        branches.push_back(json{{"label", b.label}, {"subtree", encode(b.subtree)}});
    return json{{"node", json{{"attribute", n.attribute}, {"branches", branches}}}};
}

DecisionTree decode(const json& j) {
    if (!j.is_object())
        throw ParseError("tree json: expected an object", 0);
    if (j.contains("leaf")) {
        const json& l = j.at("leaf");
        if (!l.is_object() || !l.contains("label") || !l.contains("total"))
            throw ParseError("tree json: malformed leaf object", 0);
        return make_leaf(l.at("label").get<std::string>(),
                         l.at("total").get<double>(),
                         l.value("misclassified", 0.0));
    }
    if (j.contains("node")) {
        const json& n = j.at("node");
        if (!n.is_object() || !n.contains("attribute") || !n.contains("branches") ||
            !n.at("branches").is_array() || n.at("branches").empty())
            throw ParseError("tree json: malformed node object", 0);
        DecisionTree::Node node;
        node.attribute = n.at("attribute").get<std::string>();
        for (const json& b : n.at("branches")) {
            if (!b.is_object() || !b.contains("label") || !b.contains("subtree"))
                throw ParseError("tree json: malformed branch object", 0);
            node.branches.push_back(
                {b.at("label").get<std::string>(), decode(b.at("subtree"))});
        }
        return DecisionTree{std::move(node)};
    }
    throw ParseError("tree json: expected a \"node\" or \"leaf\" key", 0);
}

} // namespace

std::string tree_to_json(const DecisionTree& tree, int indent) {
    return encode(tree).dump(indent) + (indent >= 0 ? "\n" : "");
}

DecisionTree tree_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("tree json: ") + e.what(), 0);
    }
    try {
        return decode(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("tree json: ") + e.what(), 0);
    }
}

} // namespace fc45
