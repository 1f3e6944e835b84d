#pragma once

// Architecture description: components, processor nodes, network links,
// deployment and closed usage scenarios, together with the derived matrices
// consumed by the performance and reliability evaluators.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace archopt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense row-major matrix of doubles.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    bool operator==(const Matrix&) const = default;
};

struct Operation {
    std::string id;
    double cpu_demand = 0.0;  // seconds per invocation on a unit-speed node
    std::string origin;       // id of the operation this one replicates; empty means itself

    const std::string& origin_id() const { return origin.empty() ? id : origin; }

    friend bool operator==(const Operation& a, const Operation& b) {
        return a.id == b.id && a.cpu_demand == b.cpu_demand && a.origin_id() == b.origin_id();
    }
};

struct Component {
    std::string id;
    std::vector<Operation> operations;
    double failure_prob = 0.0;  // probability of failure per invocation
    std::string replica_group;  // components sharing a group are clones; empty means itself

    const std::string& group_id() const { return replica_group.empty() ? id : replica_group; }

    friend bool operator==(const Component& a, const Component& b) {
        return a.id == b.id && a.operations == b.operations && a.failure_prob == b.failure_prob &&
               a.group_id() == b.group_id();
    }
};

struct ProcessorNode {
    std::string id;
    double speed = 1.0;
    int cores = 1;

    bool operator==(const ProcessorNode&) const = default;
};

struct NetworkLink {
    std::string id;
    std::string a;
    std::string b;
    double failure_prob = 0.0;
    double delay = 0.0;  // seconds per message

    bool connects(const std::string& x, const std::string& y) const {
        return (a == x && b == y) || (a == y && b == x);
    }

    bool operator==(const NetworkLink&) const = default;
};

struct CallStep {
    std::string operation;
    double count = 1.0;  // expected invocations per scenario cycle

    bool operator==(const CallStep&) const = default;
};

struct UsageScenario {
    std::string id;
    double weight = 1.0;
    int population = 1;
    double think_time = 0.0;
    std::vector<CallStep> steps;

    bool operator==(const UsageScenario&) const = default;
};

struct Architecture {
    std::vector<Component> components;
    std::vector<ProcessorNode> nodes;
    std::vector<NetworkLink> links;
    std::vector<UsageScenario> scenarios;
    std::map<std::string, std::string> deployment;  // component id -> node id

    bool operator==(const Architecture&) const = default;
};

/// Id lookup tables over one architecture. Holds indices, not pointers, so it
/// stays valid for copies of the architecture it was built from.
struct ArchIndex {
    std::unordered_map<std::string, std::size_t> component;
    std::unordered_map<std::string, std::size_t> node;
    std::unordered_map<std::string, std::size_t> link;
    std::unordered_map<std::string, std::size_t> scenario;
    std::unordered_map<std::string, std::size_t> owner;  // operation id -> component index
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> operation;  // -> (component, slot)

    explicit ArchIndex(const Architecture& arch) {
        for (std::size_t i = 0; i < arch.components.size(); ++i) {
            component.emplace(arch.components[i].id, i);
            const auto& ops = arch.components[i].operations;
            for (std::size_t s = 0; s < ops.size(); ++s) {
                owner.emplace(ops[s].id, i);
                operation.emplace(ops[s].id, std::pair{i, s});
            }
        }
        for (std::size_t k = 0; k < arch.nodes.size(); ++k) node.emplace(arch.nodes[k].id, k);
        for (std::size_t l = 0; l < arch.links.size(); ++l) link.emplace(arch.links[l].id, l);
        for (std::size_t j = 0; j < arch.scenarios.size(); ++j) scenario.emplace(arch.scenarios[j].id, j);
    }

    const Operation& op(const Architecture& arch, const std::string& id) const {
        auto [c, s] = operation.at(id);
        return arch.components[c].operations[s];
    }

    std::size_t node_of(const Architecture& arch, std::size_t component_index) const {
        return node.at(arch.deployment.at(arch.components[component_index].id));
    }
};

struct Violation {
    std::string element;
    std::string rule;

    std::string to_string() const { return element + ": " + rule; }
};

inline bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    for (char ch : id) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == ';' || ch == '(' || ch == ')')
            return false;
    }
    return true;
}

namespace detail {

inline bool is_probability(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }
inline bool is_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace detail

/// Returns every invariant violation; an empty list means the model is valid.
inline std::vector<Violation> validate(const Architecture& arch) {
    std::vector<Violation> out;
    auto add = [&](std::string element, std::string rule) { out.push_back({std::move(element), std::move(rule)}); };

    auto check_ids = [&](const std::string& category, const std::string& id, std::set<std::string>& seen) {
        if (!valid_id(id)) add(category + " '" + id + "'", "id must be non-empty without whitespace or ,;()");
        if (!seen.insert(id).second) add(category + " " + id, "duplicate " + category + " id");
    };

    std::set<std::string> comp_ids, op_ids, node_ids, link_ids, scen_ids;

    for (const auto& c : arch.components) {
        check_ids("component", c.id, comp_ids);
        if (!detail::is_probability(c.failure_prob))
            add("component " + c.id, "failure probability must lie in [0,1]");
        if (c.operations.empty()) add("component " + c.id, "component must own at least one operation");
        for (const auto& o : c.operations) {
            check_ids("operation", o.id, op_ids);
            if (!detail::is_nonneg(o.cpu_demand))
                add("operation " + o.id, "cpu demand must be finite and >= 0");
        }
    }
    for (const auto& n : arch.nodes) {
        check_ids("node", n.id, node_ids);
        if (!(std::isfinite(n.speed) && n.speed > 0.0)) add("node " + n.id, "speed factor must be > 0");
        if (n.cores < 1) add("node " + n.id, "cores must be >= 1");
    }
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& l : arch.links) {
        check_ids("link", l.id, link_ids);
        if (!node_ids.contains(l.a)) add("link " + l.id, "endpoint '" + l.a + "' does not exist");
        if (!node_ids.contains(l.b)) add("link " + l.id, "endpoint '" + l.b + "' does not exist");
        if (l.a == l.b) add("link " + l.id, "endpoints must differ");
        if (!detail::is_probability(l.failure_prob)) add("link " + l.id, "failure probability must lie in [0,1]");
        if (!detail::is_nonneg(l.delay)) add("link " + l.id, "message delay must be finite and >= 0");
        auto key = std::minmax(l.a, l.b);
        if (!pairs.insert({key.first, key.second}).second)
            add("link " + l.id, "at most one link per node pair");
    }

    double weight_sum = 0.0;
    for (const auto& s : arch.scenarios) {
        check_ids("scenario", s.id, scen_ids);
        if (!detail::is_probability(s.weight)) add("scenario " + s.id, "mix weight must lie in [0,1]");
        weight_sum += s.weight;
        if (s.population < 1) add("scenario " + s.id, "population must be >= 1");
        if (!detail::is_nonneg(s.think_time)) add("scenario " + s.id, "think time must be finite and >= 0");
        if (s.steps.empty()) add("scenario " + s.id, "scenario must have at least one step");
        for (std::size_t n = 0; n < s.steps.size(); ++n) {
            const auto& st = s.steps[n];
            std::string where = "scenario " + s.id + " step " + std::to_string(n);
            if (!op_ids.contains(st.operation)) add(where, "operation '" + st.operation + "' does not exist");
            if (!detail::is_nonneg(st.count)) add(where, "expected count must be finite and >= 0");
        }
    }
    if (arch.scenarios.empty()) add("scenarios", "at least one scenario is required");
    else if (std::abs(weight_sum - 1.0) > 1e-9) add("scenarios", "scenario mix weights must sum to 1");

    for (const auto& c : arch.components) {
        auto it = arch.deployment.find(c.id);
        if (it == arch.deployment.end()) add("component " + c.id, "component is not deployed");
    }
    for (const auto& [comp, node] : arch.deployment) {
        if (!comp_ids.contains(comp)) add("deployment " + comp, "deployed component does not exist");
        if (!node_ids.contains(node)) add("deployment " + comp, "target node '" + node + "' does not exist");
    }
    return out;
}

/// Total expected invocations of each operation in scenario j.
inline std::unordered_map<std::string, double> operation_counts(const UsageScenario& s) {
    std::unordered_map<std::string, double> counts;
    for (const auto& st : s.steps) counts[st.operation] += st.count;
    return counts;
}

/// D[k][j]: seconds of processing demanded from node k per cycle of scenario j.
inline Matrix demand_matrix(const Architecture& arch) {
    ArchIndex idx(arch);
    Matrix d(arch.nodes.size(), arch.scenarios.size());
    for (std::size_t j = 0; j < arch.scenarios.size(); ++j) {
        for (const auto& st : arch.scenarios[j].steps) {
            std::size_t c = idx.owner.at(st.operation);
            std::size_t k = idx.node_of(arch, c);
            d(k, j) += st.count * idx.op(arch, st.operation).cpu_demand / arch.nodes[k].speed;
        }
    }
    return d;
}

/// Sum over steps of count x cpu demand, per scenario (node speed ignored).
inline std::vector<double> scenario_work(const Architecture& arch) {
    ArchIndex idx(arch);
    std::vector<double> w(arch.scenarios.size(), 0.0);
    for (std::size_t j = 0; j < arch.scenarios.size(); ++j)
        for (const auto& st : arch.scenarios[j].steps) w[j] += st.count * idx.op(arch, st.operation).cpu_demand;
    return w;
}

struct Invocations {
    Matrix components;  // v[i][j]
    Matrix links;       // m[l][j]
};

class MissingLinkError : public Error {
public:
    MissingLinkError(std::string a, std::string b)
        : Error("no network link connects nodes " + a + " and " + b), node_a(std::move(a)), node_b(std::move(b)) {}
    std::string node_a;
    std::string node_b;
};

/// Expected component invocations and link messages per scenario cycle.
///
/// The caller of a step is the component owning the previous step's
/// operation; the first step is called by the client, which sends no link
/// messages. A run of consecutive steps calling replicas of the same
/// operation (see Operation::origin) is one logical call fanned out over the
/// replicas, so the following step is called by each replica in proportion
/// to the replica's share of that run.
inline Invocations invocation_matrix(const Architecture& arch) {
    ArchIndex idx(arch);
    Invocations inv{Matrix(arch.components.size(), arch.scenarios.size()),
                    Matrix(arch.links.size(), arch.scenarios.size())};

    auto link_index = [&](std::size_t ka, std::size_t kb) -> std::size_t {
        const auto& a = arch.nodes[ka].id;
        const auto& b = arch.nodes[kb].id;
        for (std::size_t l = 0; l < arch.links.size(); ++l)
            if (arch.links[l].connects(a, b)) return l;
        throw MissingLinkError(a, b);
    };

    struct Call {
        std::size_t node;
        double count;
    };

    for (std::size_t j = 0; j < arch.scenarios.size(); ++j) {
        const auto& steps = arch.scenarios[j].steps;
        std::vector<std::pair<std::size_t, double>> callers;  // (node, share); empty = client
        std::size_t n = 0;
        while (n < steps.size()) {
            const std::string& origin = idx.op(arch, steps[n].operation).origin_id();
            std::vector<Call> run;
            double total = 0.0;
            for (; n < steps.size() && idx.op(arch, steps[n].operation).origin_id() == origin; ++n) {
                std::size_t c = idx.owner.at(steps[n].operation);
                inv.components(c, j) += steps[n].count;
                run.push_back({idx.node_of(arch, c), steps[n].count});
                total += steps[n].count;
            }
            for (const auto& [from, share] : callers)
                for (const auto& call : run)
                    if (from != call.node) inv.links(link_index(from, call.node), j) += share * call.count;
            callers.clear();
            for (const auto& call : run)
                callers.emplace_back(call.node, total > 0.0 ? call.count / total : 1.0 / run.size());
        }
    }
    return inv;
}

}  // namespace archopt
