#pragma once

// JSON form of refactoring sequences: an array of action records, e.g.
//   [ { "kind": "RedeployComponent", "component": "c1", "target": "new-node:n1" } ]

#include <string>

#include "model_io.hpp"
#include "refactoring.hpp"

namespace archopt {

inline json to_json(const RefactoringAction& a) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            json j{{"kind", std::string(kind_name(kind_of(RefactoringAction(x))))}};
            if constexpr (std::is_same_v<T, CloneComponent> || std::is_same_v<T, RedeployComponent>) {
                j["component"] = x.component;
                j["target"] = x.target;
            } else if constexpr (std::is_same_v<T, MoveOperationToNewComponent>) {
                j["operation"] = x.operation;
                j["target_node"] = x.target_node;
            } else {
                j["operation"] = x.operation;
                j["target_component"] = x.target_component;
            }
            return j;
        },
        a);
}

inline json to_json(const RefactoringSequence& seq) {
    json arr = json::array();
    for (const auto& a : seq.actions) arr.push_back(to_json(a));
    return arr;
}

inline RefactoringSequence sequence_from_json(const json& doc) {
    if (!doc.is_array()) throw SchemaError("", "sequence must be an array of actions");
    RefactoringSequence seq;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        std::string p = "/" + std::to_string(i);
        auto kind = kind_from_name(detail::get_string(doc[i], "kind", p));
        if (!kind) throw SchemaError(p + "/kind", "unknown action kind");
        switch (*kind) {
            case ActionKind::Clone:
            case ActionKind::Redeploy:
                seq.actions.push_back(make_action(*kind, detail::get_string(doc[i], "component", p),
                                                  detail::get_string(doc[i], "target", p)));
                break;
            case ActionKind::MoveToNew:
                seq.actions.push_back(make_action(*kind, detail::get_string(doc[i], "operation", p),
                                                  detail::get_string(doc[i], "target_node", p)));
                break;
            case ActionKind::MoveToExisting:
                seq.actions.push_back(make_action(*kind, detail::get_string(doc[i], "operation", p),
                                                  detail::get_string(doc[i], "target_component", p)));
                break;
        }
    }
    return seq;
}

inline RefactoringSequence load_sequence(const std::string& text) { return sequence_from_json(parse_document(text)); }

}  // namespace archopt
