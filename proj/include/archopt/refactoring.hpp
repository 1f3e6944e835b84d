#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "model.hpp"

namespace archopt {

/// Node targets are either an existing node id or "new-node:<template-id>".
inline constexpr std::string_view kNewNodePrefix = "new-node:";

inline bool is_new_node_target(const std::string& target) { return target.starts_with(kNewNodePrefix); }
inline std::string new_node_template(const std::string& target) { return target.substr(kNewNodePrefix.size()); }
inline std::string new_node_target(const std::string& tmpl) { return std::string(kNewNodePrefix) + tmpl; }

struct CloneComponent {
    std::string component;
    std::string target;
    bool operator==(const CloneComponent&) const = default;
};

struct MoveOperationToNewComponent {
    std::string operation;
    std::string target_node;
    bool operator==(const MoveOperationToNewComponent&) const = default;
};

struct MoveOperationToComponent {
    std::string operation;
    std::string target_component;
    bool operator==(const MoveOperationToComponent&) const = default;
};

struct RedeployComponent {
    std::string component;
    std::string target;
    bool operator==(const RedeployComponent&) const = default;
};

using RefactoringAction =
    std::variant<CloneComponent, MoveOperationToNewComponent, MoveOperationToComponent, RedeployComponent>;

enum class ActionKind { Clone = 0, MoveToNew = 1, MoveToExisting = 2, Redeploy = 3 };

inline constexpr std::array<ActionKind, 4> kAllKinds{ActionKind::Clone, ActionKind::MoveToNew,
                                                     ActionKind::MoveToExisting, ActionKind::Redeploy};

inline ActionKind kind_of(const RefactoringAction& a) { return static_cast<ActionKind>(a.index()); }

inline std::string_view kind_name(ActionKind k) {
    switch (k) {
        case ActionKind::Clone: return "CloneComponent";
        case ActionKind::MoveToNew: return "MoveOperationToNewComponent";
        case ActionKind::MoveToExisting: return "MoveOperationToComponent";
        case ActionKind::Redeploy: return "RedeployComponent";
    }
    return "?";
}

inline std::optional<ActionKind> kind_from_name(std::string_view name) {
    for (auto k : kAllKinds)
        if (kind_name(k) == name) return k;
    return std::nullopt;
}

/// The genotype: an ordered list of actions applied left to right.
struct RefactoringSequence {
    std::vector<RefactoringAction> actions;
    bool operator==(const RefactoringSequence&) const = default;
};

/// Baseline refactoring factor per action kind.
struct BrfTable {
    std::array<double, 4> factor{1.23, 1.80, 1.64, 1.45};

    double operator[](ActionKind k) const { return factor[static_cast<std::size_t>(k)]; }
    double& operator[](ActionKind k) { return factor[static_cast<std::size_t>(k)]; }
};

/// Architectural distance: sum of the BRFs of the actions.
inline double distance(const RefactoringSequence& seq, const BrfTable& brf) {
    double d = 0.0;
    for (const auto& a : seq.actions) d += brf[kind_of(a)];
    return d;
}

struct Feasibility {
    bool ok = true;
    std::string reason;
    explicit operator bool() const { return ok; }
};

class InfeasibleAction : public Error {
public:
    InfeasibleAction(std::size_t index_, const std::string& reason_)
        : Error("action " + std::to_string(index_) + " is infeasible: " + reason_), index(index_), reason(reason_) {}
    std::size_t index;
    std::string reason;
};

namespace detail {

template <class Range, class Get>
std::string fresh_id(const std::string& base, std::size_t index, const Range& existing, Get get) {
    std::string id = base + "~" + std::to_string(index);
    auto taken = [&](const std::string& x) {
        return std::any_of(existing.begin(), existing.end(), [&](const auto& e) { return get(e) == x; });
    };
    while (taken(id)) id += "~";
    return id;
}

inline std::string fresh_operation_id(const Architecture& arch, const std::string& base, std::size_t index) {
    std::string id = base + "~" + std::to_string(index);
    auto taken = [&](const std::string& x) {
        for (const auto& c : arch.components)
            for (const auto& o : c.operations)
                if (o.id == x) return true;
        return false;
    };
    while (taken(id)) id += "~";
    return id;
}

/// Resolves a node target, instantiating a copy of the template node (and its
/// links) for "new-node:" targets. Returns the node id or an error reason.
inline std::variant<std::string, std::string> resolve_node(Architecture& arch, const std::string& target,
                                                           std::size_t index) {
    using R = std::variant<std::string, std::string>;
    if (!is_new_node_target(target)) {
        for (const auto& n : arch.nodes)
            if (n.id == target) return R(std::in_place_index<0>, target);
        return R(std::in_place_index<1>, "target node '" + target + "' does not exist");
    }
    std::string tmpl = new_node_template(target);
    auto it = std::find_if(arch.nodes.begin(), arch.nodes.end(), [&](const auto& n) { return n.id == tmpl; });
    if (it == arch.nodes.end()) return R(std::in_place_index<1>, "template node '" + tmpl + "' does not exist");

    ProcessorNode fresh = *it;
    fresh.id = fresh_id(tmpl, index, arch.nodes, [](const auto& n) { return n.id; });
    arch.nodes.push_back(fresh);

    std::vector<NetworkLink> added;
    std::optional<NetworkLink> first;
    for (const auto& l : arch.links) {
        if (l.a != tmpl && l.b != tmpl) continue;
        if (!first) first = l;
        NetworkLink copy = l;
        (copy.a == tmpl ? copy.a : copy.b) = fresh.id;
        added.push_back(copy);
    }
    NetworkLink local = first.value_or(NetworkLink{});
    local.a = tmpl;
    local.b = fresh.id;
    added.push_back(local);
    for (auto& l : added) {
        l.id = fresh_id(l.id.empty() ? "link" : l.id, index, arch.links, [](const auto& x) { return x.id; });
        arch.links.push_back(l);
    }
    return R(std::in_place_index<0>, fresh.id);
}

inline std::optional<std::size_t> find_component(const Architecture& arch, const std::string& id) {
    for (std::size_t i = 0; i < arch.components.size(); ++i)
        if (arch.components[i].id == id) return i;
    return std::nullopt;
}

inline std::optional<std::size_t> find_owner(const Architecture& arch, const std::string& op) {
    for (std::size_t i = 0; i < arch.components.size(); ++i)
        for (const auto& o : arch.components[i].operations)
            if (o.id == op) return i;
    return std::nullopt;
}

inline void drop_if_empty(Architecture& arch, std::size_t c) {
    if (!arch.components[c].operations.empty()) return;
    arch.deployment.erase(arch.components[c].id);
    arch.components.erase(arch.components.begin() + static_cast<std::ptrdiff_t>(c));
}

/// Rewrites every run of consecutive steps sharing an operation origin so
/// that the group's share of the run is split evenly over all group members
/// that own a replica of that origin.
inline void rebalance_replicas(Architecture& arch, const std::string& group) {
    ArchIndex idx(arch);
    for (auto& s : arch.scenarios) {
        std::vector<CallStep> out;
        std::size_t n = 0;
        while (n < s.steps.size()) {
            const std::string origin = idx.op(arch, s.steps[n].operation).origin_id();
            double total = 0.0;
            bool placed = false;
            std::vector<CallStep> outside;
            for (; n < s.steps.size() && idx.op(arch, s.steps[n].operation).origin_id() == origin; ++n) {
                const auto& st = s.steps[n];
                if (arch.components[idx.owner.at(st.operation)].group_id() == group) {
                    total += st.count;
                    placed = true;
                } else {
                    outside.push_back(st);
                }
            }
            if (placed) {
                std::vector<std::string> replicas;
                for (const auto& c : arch.components) {
                    if (c.group_id() != group) continue;
                    for (const auto& o : c.operations)
                        if (o.origin_id() == origin) replicas.push_back(o.id);
                }
                for (const auto& r : replicas)
                    out.push_back({r, total / static_cast<double>(replicas.size())});
            }
            out.insert(out.end(), outside.begin(), outside.end());
        }
        s.steps = std::move(out);
    }
}

struct Applied {
    std::optional<Architecture> arch;
    std::string reason;
};

inline Applied apply_unchecked(const Architecture& in, const CloneComponent& a, std::size_t index) {
    Architecture arch = in;
    auto c = find_component(arch, a.component);
    if (!c) return {std::nullopt, "component '" + a.component + "' does not exist"};
    auto node = resolve_node(arch, a.target, index);
    if (node.index() == 1) return {std::nullopt, std::get<1>(node)};

    Component replica = arch.components[*c];
    replica.replica_group = arch.components[*c].group_id();
    arch.components[*c].replica_group = replica.replica_group;
    replica.id = fresh_id(arch.components[*c].id, index, arch.components, [](const auto& x) { return x.id; });
    for (auto& o : replica.operations) {
        o.origin = o.origin_id();
        o.id = fresh_operation_id(arch, o.id, index);
    }
    arch.deployment[replica.id] = std::get<0>(node);
    std::string group = replica.replica_group;
    arch.components.insert(arch.components.begin() + static_cast<std::ptrdiff_t>(*c) + 1, std::move(replica));
    rebalance_replicas(arch, group);
    return {std::move(arch), {}};
}

inline Applied apply_unchecked(const Architecture& in, const MoveOperationToNewComponent& a, std::size_t index) {
    Architecture arch = in;
    auto src = find_owner(arch, a.operation);
    if (!src) return {std::nullopt, "operation '" + a.operation + "' does not exist"};
    if (is_new_node_target(a.target_node)) return {std::nullopt, "new-node targets are not allowed here"};
    auto node = resolve_node(arch, a.target_node, index);
    if (node.index() == 1) return {std::nullopt, std::get<1>(node)};

    auto& ops = arch.components[*src].operations;
    auto it = std::find_if(ops.begin(), ops.end(), [&](const auto& o) { return o.id == a.operation; });
    Component fresh;
    fresh.id = fresh_id(arch.components[*src].id, index, arch.components, [](const auto& x) { return x.id; });
    fresh.failure_prob = arch.components[*src].failure_prob;
    fresh.operations.push_back(*it);
    ops.erase(it);
    arch.deployment[fresh.id] = std::get<0>(node);
    arch.components.push_back(std::move(fresh));
    drop_if_empty(arch, *src);
    return {std::move(arch), {}};
}

inline Applied apply_unchecked(const Architecture& in, const MoveOperationToComponent& a, std::size_t) {
    Architecture arch = in;
    auto src = find_owner(arch, a.operation);
    if (!src) return {std::nullopt, "operation '" + a.operation + "' does not exist"};
    auto dst = find_component(arch, a.target_component);
    if (!dst) return {std::nullopt, "component '" + a.target_component + "' does not exist"};
    if (*src == *dst) return {std::nullopt, "target component equals current owner"};

    auto& ops = arch.components[*src].operations;
    auto it = std::find_if(ops.begin(), ops.end(), [&](const auto& o) { return o.id == a.operation; });
    arch.components[*dst].operations.push_back(*it);
    ops.erase(it);
    drop_if_empty(arch, *src);
    return {std::move(arch), {}};
}

inline Applied apply_unchecked(const Architecture& in, const RedeployComponent& a, std::size_t index) {
    Architecture arch = in;
    auto c = find_component(arch, a.component);
    if (!c) return {std::nullopt, "component '" + a.component + "' does not exist"};
    if (!is_new_node_target(a.target) && arch.deployment.at(a.component) == a.target)
        return {std::nullopt, "target equals current node"};
    auto node = resolve_node(arch, a.target, index);
    if (node.index() == 1) return {std::nullopt, std::get<1>(node)};
    arch.deployment[a.component] = std::get<0>(node);
    return {std::move(arch), {}};
}

/// Applies and checks the result; index seeds fresh-id generation.
inline Applied try_apply(const Architecture& arch, const RefactoringAction& action, std::size_t index) {
    Applied r = std::visit([&](const auto& a) { return apply_unchecked(arch, a, index); }, action);
    if (!r.arch) return r;
    auto violations = validate(*r.arch);
    if (!violations.empty()) return {std::nullopt, "result is invalid: " + violations.front().to_string()};
    try {
        (void)invocation_matrix(*r.arch);
    } catch (const MissingLinkError& e) {
        return {std::nullopt, e.what()};
    }
    return r;
}

}  // namespace detail

inline Feasibility is_feasible(const Architecture& arch, const RefactoringAction& action, std::size_t index = 0) {
    auto r = detail::try_apply(arch, action, index);
    return {r.arch.has_value(), r.reason};
}

/// Returns a new architecture with the action applied; the input is untouched.
inline Architecture apply(const Architecture& arch, const RefactoringAction& action, std::size_t index = 0) {
    auto r = detail::try_apply(arch, action, index);
    if (!r.arch) throw InfeasibleAction(index, r.reason);
    return std::move(*r.arch);
}

inline Architecture apply_sequence(const Architecture& arch, const RefactoringSequence& seq) {
    Architecture cur = arch;
    for (std::size_t i = 0; i < seq.actions.size(); ++i) cur = apply(cur, seq.actions[i], i);
    return cur;
}

struct SamplingOptions {
    bool allow_new_nodes = true;
    int max_tries = 50;
};

class NoFeasibleAction : public Error {
public:
    NoFeasibleAction() : Error("no feasible action exists") {}
};

namespace detail {

template <class Rng>
std::size_t uniform_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

template <class Rng>
std::string sample_node_target(const Architecture& arch, Rng& rng, const SamplingOptions& opt) {
    std::size_t choices = arch.nodes.size() + (opt.allow_new_nodes ? 1 : 0);
    std::size_t pick = uniform_index(rng, choices);
    if (pick < arch.nodes.size()) return arch.nodes[pick].id;
    return new_node_target(arch.nodes[uniform_index(rng, arch.nodes.size())].id);
}

template <class Rng>
const std::string& sample_operation(const Architecture& arch, Rng& rng) {
    std::size_t total = 0;
    for (const auto& c : arch.components) total += c.operations.size();
    std::size_t pick = uniform_index(rng, total);
    for (const auto& c : arch.components) {
        if (pick < c.operations.size()) return c.operations[pick].id;
        pick -= c.operations.size();
    }
    return arch.components.back().operations.back().id;
}

template <class Rng>
RefactoringAction sample_parameters(const Architecture& arch, ActionKind kind, Rng& rng, const SamplingOptions& opt) {
    switch (kind) {
        case ActionKind::Clone: {
            const auto& c = arch.components[uniform_index(rng, arch.components.size())].id;
            return CloneComponent{c, sample_node_target(arch, rng, opt)};
        }
        case ActionKind::MoveToNew: {
            const auto& o = sample_operation(arch, rng);
            return MoveOperationToNewComponent{o, arch.nodes[uniform_index(rng, arch.nodes.size())].id};
        }
        case ActionKind::MoveToExisting: {
            const auto& o = sample_operation(arch, rng);
            return MoveOperationToComponent{o, arch.components[uniform_index(rng, arch.components.size())].id};
        }
        case ActionKind::Redeploy: {
            const auto& c = arch.components[uniform_index(rng, arch.components.size())].id;
            return RedeployComponent{c, sample_node_target(arch, rng, opt)};
        }
    }
    throw Error("unknown action kind");
}

}  // namespace detail

/// Samples a feasible action for position `index` of a sequence: kind first
/// (uniform), then parameters by rejection; falls back to the other kinds
/// in random order when a kind stays infeasible for `max_tries` draws.
template <class Rng>
RefactoringAction random_action(const Architecture& arch, Rng& rng, std::size_t index = 0,
                                const SamplingOptions& opt = {}) {
    if (arch.components.empty() || arch.nodes.empty()) throw NoFeasibleAction();
    std::vector<ActionKind> order(kAllKinds.begin(), kAllKinds.end());
    std::swap(order[0], order[detail::uniform_index(rng, order.size())]);
    std::shuffle(order.begin() + 1, order.end(), rng);
    for (auto kind : order) {
        for (int t = 0; t < opt.max_tries; ++t) {
            RefactoringAction a = detail::sample_parameters(arch, kind, rng, opt);
            if (is_feasible(arch, a, index)) return a;
        }
    }
    throw NoFeasibleAction();
}

/// Replaces each infeasible action, in prefix order, by a random action
/// feasible for the architecture produced by the preceding actions.
template <class Rng>
RefactoringSequence repair(const Architecture& arch, RefactoringSequence seq, Rng& rng,
                           const SamplingOptions& opt = {}) {
    Architecture cur = arch;
    for (std::size_t i = 0; i < seq.actions.size(); ++i) {
        auto r = detail::try_apply(cur, seq.actions[i], i);
        if (!r.arch) {
            seq.actions[i] = random_action(cur, rng, i, opt);
            r = detail::try_apply(cur, seq.actions[i], i);
        }
        cur = std::move(*r.arch);
    }
    return seq;
}

template <class Rng>
RefactoringSequence random_sequence(const Architecture& arch, std::size_t length, Rng& rng,
                                    const SamplingOptions& opt = {}) {
    RefactoringSequence seq;
    Architecture cur = arch;
    for (std::size_t i = 0; i < length; ++i) {
        seq.actions.push_back(random_action(cur, rng, i, opt));
        cur = apply(cur, seq.actions.back(), i);
    }
    return seq;
}

// Text form used in CSV output: Kind(arg1,arg2);Kind(arg1,arg2)

inline std::string to_text(const RefactoringAction& a) {
    auto args = std::visit(
        [](const auto& x) -> std::pair<std::string, std::string> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, CloneComponent>) return {x.component, x.target};
            else if constexpr (std::is_same_v<T, MoveOperationToNewComponent>) return {x.operation, x.target_node};
            else if constexpr (std::is_same_v<T, MoveOperationToComponent>) return {x.operation, x.target_component};
            else return {x.component, x.target};
        },
        a);
    return std::string(kind_name(kind_of(a))) + "(" + args.first + "," + args.second + ")";
}

inline std::string to_text(const RefactoringSequence& seq) {
    std::string s;
    for (std::size_t i = 0; i < seq.actions.size(); ++i) {
        if (i) s += ";";
        s += to_text(seq.actions[i]);
    }
    return s;
}

inline RefactoringAction make_action(ActionKind kind, std::string first, std::string second) {
    switch (kind) {
        case ActionKind::Clone: return CloneComponent{std::move(first), std::move(second)};
        case ActionKind::MoveToNew: return MoveOperationToNewComponent{std::move(first), std::move(second)};
        case ActionKind::MoveToExisting: return MoveOperationToComponent{std::move(first), std::move(second)};
        case ActionKind::Redeploy: return RedeployComponent{std::move(first), std::move(second)};
    }
    throw Error("unknown action kind");
}

inline RefactoringSequence sequence_from_text(const std::string& text) {
    RefactoringSequence seq;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(';', pos);
        if (end == std::string::npos) end = text.size();
        std::string item = text.substr(pos, end - pos);
        std::size_t open = item.find('(');
        std::size_t comma = item.find(',');
        if (open == std::string::npos || comma == std::string::npos || comma < open || item.back() != ')')
            throw Error("malformed action '" + item + "'");
        auto kind = kind_from_name(item.substr(0, open));
        if (!kind) throw Error("unknown action kind in '" + item + "'");
        seq.actions.push_back(make_action(*kind, item.substr(open + 1, comma - open - 1),
                                          item.substr(comma + 1, item.size() - comma - 2)));
        pos = end + 1;
    }
    return seq;
}

}  // namespace archopt
