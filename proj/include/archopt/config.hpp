#pragma once

// Run configuration file (JSON). Relative paths resolve against the
// directory holding the configuration file.
//
//   { "model": "models/casestudy-small.json", "algorithm": "nsga2", "seed": 1,
//     "population": 32, "archive": 32, "sequence_length": 4,
//     "budget_seconds": 10, "max_evaluations": 5000,
//     "crossover_probability": 0.8, "mutation_probability": 0.25,
//     "pesa_divisions": 8, "use_pas_objective": true, "allow_new_nodes": true,
//     "workers": 1, "output_dir": "out",
//     "brf": { "CloneComponent": 1.23, ... },
//     "thresholds": { "util_high": 0.8, "util_low": 0.3, "blob_share": 2.0, "paf_demand_share": 0.5 },
//     "compare": { "algorithms": ["nsga2"], "budgets_seconds": [5, 10, 20],
//                  "budgets_evaluations": [], "seeds": [1, 2, 3, 4, 5] } }

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "model_io.hpp"
#include "moea/run.hpp"

namespace archopt {

class ConfigError : public Error {
public:
    using Error::Error;
};

struct CompareSettings {
    std::vector<moea::Algorithm> algorithms;
    std::vector<moea::Budget> budgets;
    std::vector<std::uint64_t> seeds;
};

struct RunConfig {
    std::string model_path;
    std::string output_dir = "out";
    moea::SearchConfig search;
    CompareSettings compare;
};

namespace detail {

inline double number_or(const json& doc, const char* key, double fallback) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return fallback;
    if (!it->is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
    return it->get<double>();
}

inline bool is_count(const json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

inline std::size_t count_or(const json& doc, const char* key, std::size_t fallback) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return fallback;
    if (!is_count(*it)) throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
    return it->get<std::size_t>();
}

inline bool bool_or(const json& doc, const char* key, bool fallback) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return fallback;
    if (!it->is_boolean()) throw ConfigError(std::string("config key '") + key + "' must be a boolean");
    return it->get<bool>();
}

inline moea::Algorithm parse_algorithm(const json& v) {
    if (!v.is_string()) throw ConfigError("algorithm must be a string");
    auto a = moea::algorithm_from_name(v.get<std::string>());
    if (!a) throw ConfigError("unknown algorithm '" + v.get<std::string>() + "' (nsga2|spea2|pesa2)");
    return *a;
}

}  // namespace detail

/// Parses a configuration document. `base_dir` anchors relative paths and
/// `env_seed` (ARCHOPT_SEED) overrides the seed when non-empty.
inline RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir, const std::string& env_seed = {}) {
    using namespace detail;
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    RunConfig cfg;
    auto& s = cfg.search;

    auto model = doc.find("model");
    if (model == doc.end() || !model->is_string()) throw ConfigError("config key 'model' (path) is required");
    cfg.model_path = (base_dir / model->get<std::string>()).lexically_normal().string();
    if (auto it = doc.find("output_dir"); it != doc.end()) {
        if (!it->is_string()) throw ConfigError("output_dir must be a string");
        cfg.output_dir = (base_dir / it->get<std::string>()).lexically_normal().string();
    } else {
        cfg.output_dir = (base_dir / "out").lexically_normal().string();
    }

    if (auto it = doc.find("algorithm"); it != doc.end()) s.algorithm = parse_algorithm(*it);
    s.seed = count_or(doc, "seed", 1);
    if (!env_seed.empty()) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env_seed.c_str(), &end, 10);
        if (end == env_seed.c_str() || *end != '\0') throw ConfigError("ARCHOPT_SEED must be an unsigned integer");
        s.seed = v;
    }
    s.population = count_or(doc, "population", 32);
    s.archive = count_or(doc, "archive", s.population);
    s.sequence_length = count_or(doc, "sequence_length", 4);
    s.pesa_divisions = count_or(doc, "pesa_divisions", 8);
    s.workers = count_or(doc, "workers", 1);
    s.use_pas_objective = bool_or(doc, "use_pas_objective", true);
    s.variation.crossover_probability = number_or(doc, "crossover_probability", 0.8);
    s.variation.mutation_probability = number_or(doc, "mutation_probability", -1.0);
    s.variation.sampling.allow_new_nodes = bool_or(doc, "allow_new_nodes", true);

    if (doc.contains("budget_seconds") && !doc["budget_seconds"].is_null())
        s.budget.seconds = number_or(doc, "budget_seconds", 0.0);
    if (doc.contains("max_evaluations") && !doc["max_evaluations"].is_null())
        s.budget.max_evaluations = count_or(doc, "max_evaluations", 0);

    if (auto it = doc.find("brf"); it != doc.end()) {
        if (!it->is_object()) throw ConfigError("brf must be an object");
        for (const auto& [name, v] : it->items()) {
            auto kind = kind_from_name(name);
            if (!kind) throw ConfigError("brf: unknown action kind '" + name + "'");
            if (!v.is_number() || !(v.get<double>() > 0.0)) throw ConfigError("brf: factors must be > 0");
            s.evaluation.brf[*kind] = v.get<double>();
        }
    }
    if (auto it = doc.find("thresholds"); it != doc.end()) {
        auto& th = s.evaluation.thresholds;
        th.util_high = number_or(*it, "util_high", th.util_high);
        th.util_low = number_or(*it, "util_low", th.util_low);
        th.blob_share = number_or(*it, "blob_share", th.blob_share);
        th.paf_demand_share = number_or(*it, "paf_demand_share", th.paf_demand_share);
        if (!th.valid()) throw ConfigError("thresholds: need 0 <= util_low < util_high <= 1 and positive shares");
    }

    if (auto it = doc.find("compare"); it != doc.end()) {
        const json& c = *it;
        for (const auto& a : c.value("algorithms", json::array())) cfg.compare.algorithms.push_back(parse_algorithm(a));
        for (const auto& b : c.value("budgets_seconds", json::array())) {
            if (!b.is_number() || b.get<double>() < 0) throw ConfigError("budgets_seconds must be non-negative numbers");
            cfg.compare.budgets.push_back({std::nullopt, b.get<double>()});
        }
        for (const auto& b : c.value("budgets_evaluations", json::array())) {
            if (!is_count(b)) throw ConfigError("budgets_evaluations must be non-negative integers");
            cfg.compare.budgets.push_back({b.get<std::size_t>(), std::nullopt});
        }
        for (const auto& v : c.value("seeds", json::array())) {
            if (!is_count(v)) throw ConfigError("seeds must be non-negative integers");
            cfg.compare.seeds.push_back(v.get<std::uint64_t>());
        }
    }

    if (!s.budget.seconds && !s.budget.max_evaluations && cfg.compare.budgets.empty())
        throw ConfigError("at least one budget (budget_seconds or max_evaluations) must be set");
    if (s.population < 4 || s.population % 2 != 0) throw ConfigError("population must be even and >= 4");
    if (s.archive < 1) throw ConfigError("archive must be >= 1");
    if (s.pesa_divisions < 1) throw ConfigError("pesa_divisions must be >= 1");
    if (s.workers < 1) throw ConfigError("workers must be >= 1");
    if (s.variation.crossover_probability < 0.0 || s.variation.crossover_probability > 1.0)
        throw ConfigError("crossover_probability must lie in [0,1]");
    if (s.variation.mutation_probability > 1.0) throw ConfigError("mutation_probability must lie in [0,1]");
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    const char* env = std::getenv("ARCHOPT_SEED");
    return parse_config(parse_document(read_file(path)), std::filesystem::path(path).parent_path(),
                        env ? std::string(env) : std::string());
}

}  // namespace archopt
