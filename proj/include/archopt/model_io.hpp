#pragma once

// JSON document format for architectures.
//
//   { "components": [ { "id", "failure_prob", "operations": [ { "id", "cpu_demand" } ] } ],
//     "nodes":      [ { "id", "speed", "cores" } ],
//     "links":      [ { "id", "endpoints": [a, b], "failure_prob", "delay" } ],
//     "scenarios":  [ { "id", "weight", "population", "think_time",
//                       "steps": [ { "operation", "count" } ] } ],
//     "deployment": { component-id: node-id } }
//
// Optional keys written only when they differ from the defaults: operation
// "origin" and component "replica_group" (both produced by cloning).

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "model.hpp"

namespace archopt {

using json = nlohmann::json;

class ParseError : public Error {
public:
    using Error::Error;
};

/// Structural problem in a document: missing key or wrong type, with its path.
class SchemaError : public Error {
public:
    SchemaError(std::string path_, const std::string& what)
        : Error(path_ + ": " + what), path(std::move(path_)) {}
    std::string path;
};

/// Document parsed but the architecture breaks an invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> v) : Error(join(v)), violations(std::move(v)) {}
    std::vector<Violation> violations;

private:
    static std::string join(const std::vector<Violation>& v) {
        std::string s = "invalid architecture:";
        for (const auto& x : v) s += "\n  " + x.to_string();
        return s;
    }
};

namespace detail {

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw SchemaError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path + "/" + key, "missing required key");
    return *it;
}

inline double get_number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) throw SchemaError(path + "/" + key, "expected a number");
    return v.get<double>();
}

inline int get_int(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number_integer()) throw SchemaError(path + "/" + key, "expected an integer");
    return v.get<int>();
}

inline std::string get_string(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) throw SchemaError(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

inline const json& get_array(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_array()) throw SchemaError(path + "/" + key, "expected an array");
    return v;
}

inline std::string optional_string(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) return {};
    if (!it->is_string()) throw SchemaError(path + "/" + key, "expected a string");
    return it->get<std::string>();
}

}  // namespace detail

/// Builds an architecture from a parsed document without checking invariants.
inline Architecture from_json(const json& doc) {
    using namespace detail;
    if (!doc.is_object()) throw SchemaError("", "document root must be an object");
    Architecture arch;

    const json& comps = get_array(doc, "components", "");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        std::string p = "/components/" + std::to_string(i);
        Component c;
        c.id = get_string(comps[i], "id", p);
        c.failure_prob = get_number(comps[i], "failure_prob", p);
        c.replica_group = optional_string(comps[i], "replica_group", p);
        const json& ops = get_array(comps[i], "operations", p);
        for (std::size_t s = 0; s < ops.size(); ++s) {
            std::string q = p + "/operations/" + std::to_string(s);
            Operation o;
            o.id = get_string(ops[s], "id", q);
            o.cpu_demand = get_number(ops[s], "cpu_demand", q);
            o.origin = optional_string(ops[s], "origin", q);
            c.operations.push_back(std::move(o));
        }
        arch.components.push_back(std::move(c));
    }

    const json& nodes = get_array(doc, "nodes", "");
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        std::string p = "/nodes/" + std::to_string(k);
        arch.nodes.push_back({get_string(nodes[k], "id", p), get_number(nodes[k], "speed", p),
                              get_int(nodes[k], "cores", p)});
    }

    const json& links = get_array(doc, "links", "");
    for (std::size_t l = 0; l < links.size(); ++l) {
        std::string p = "/links/" + std::to_string(l);
        const json& ends = get_array(links[l], "endpoints", p);
        if (ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
            throw SchemaError(p + "/endpoints", "expected two node ids");
        arch.links.push_back({get_string(links[l], "id", p), ends[0].get<std::string>(), ends[1].get<std::string>(),
                              get_number(links[l], "failure_prob", p), get_number(links[l], "delay", p)});
    }

    const json& scens = get_array(doc, "scenarios", "");
    for (std::size_t j = 0; j < scens.size(); ++j) {
        std::string p = "/scenarios/" + std::to_string(j);
        UsageScenario s;
        s.id = get_string(scens[j], "id", p);
        s.weight = get_number(scens[j], "weight", p);
        s.population = get_int(scens[j], "population", p);
        s.think_time = get_number(scens[j], "think_time", p);
        const json& steps = get_array(scens[j], "steps", p);
        for (std::size_t n = 0; n < steps.size(); ++n) {
            std::string q = p + "/steps/" + std::to_string(n);
            s.steps.push_back({get_string(steps[n], "operation", q), get_number(steps[n], "count", q)});
        }
        arch.scenarios.push_back(std::move(s));
    }

    const json& dep = require(doc, "deployment", "");
    if (!dep.is_object()) throw SchemaError("/deployment", "expected an object");
    for (const auto& [comp, node] : dep.items()) {
        if (!node.is_string()) throw SchemaError("/deployment/" + comp, "expected a node id");
        arch.deployment.emplace(comp, node.get<std::string>());
    }
    return arch;
}

inline json to_json(const Architecture& arch) {
    json doc;
    doc["components"] = json::array();
    for (const auto& c : arch.components) {
        json jc{{"id", c.id}, {"failure_prob", c.failure_prob}, {"operations", json::array()}};
        if (c.group_id() != c.id) jc["replica_group"] = c.group_id();
        for (const auto& o : c.operations) {
            json jo{{"id", o.id}, {"cpu_demand", o.cpu_demand}};
            if (o.origin_id() != o.id) jo["origin"] = o.origin_id();
            jc["operations"].push_back(std::move(jo));
        }
        doc["components"].push_back(std::move(jc));
    }
    doc["nodes"] = json::array();
    for (const auto& n : arch.nodes) doc["nodes"].push_back({{"id", n.id}, {"speed", n.speed}, {"cores", n.cores}});
    doc["links"] = json::array();
    for (const auto& l : arch.links)
        doc["links"].push_back({{"id", l.id},
                                {"endpoints", {l.a, l.b}},
                                {"failure_prob", l.failure_prob},
                                {"delay", l.delay}});
    doc["scenarios"] = json::array();
    for (const auto& s : arch.scenarios) {
        json js{{"id", s.id},
                {"weight", s.weight},
                {"population", s.population},
                {"think_time", s.think_time},
                {"steps", json::array()}};
        for (const auto& st : s.steps) js["steps"].push_back({{"operation", st.operation}, {"count", st.count}});
        doc["scenarios"].push_back(std::move(js));
    }
    doc["deployment"] = json::object();
    for (const auto& [c, n] : arch.deployment) doc["deployment"][c] = n;
    return doc;
}

inline json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i < upto; ++i)
            if (text[i] == '\n') ++line;
        throw ParseError("parse error at line " + std::to_string(line) + ": " + e.what());
    }
}

/// Parses, checks the schema and validates; throws ParseError, SchemaError
/// or ValidationError.
inline Architecture load(const std::string& text) {
    Architecture arch = from_json(parse_document(text));
    auto violations = validate(arch);
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return arch;
}

inline std::string save(const Architecture& arch) { return to_json(arch).dump(2) + "\n"; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Architecture load_file(const std::string& path) { return load(read_file(path)); }

/// FNV-1a over the canonical serialization; identifies a phenotype.
inline std::uint64_t digest(const Architecture& arch) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : to_json(arch).dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace archopt
