#pragma once

// Shared fixtures and random model generators for the unit and acceptance
// suites.

#include <sys/wait.h>

#include <cstdio>
#include <map>
#include <set>
#include <random>
#include <string>
#include <vector>

#include "archopt/archopt.hpp"

namespace archopt::testing {

inline std::string source_path(const std::string& rel) { return std::string(ARCHOPT_SOURCE_DIR) + "/" + rel; }

inline Architecture case_study(const std::string& name) {
    return load_file(source_path("models/casestudy-" + name + ".json"));
}

/// Two components on one node, one scenario: a calls b.
inline Architecture two_component_model() {
    Architecture a;
    a.components = {{"ca", {{"oa", 0.1}}, 0.0}, {"cb", {{"ob", 0.2}}, 0.0}};
    a.nodes = {{"n1", 1.0, 1}};
    a.scenarios = {{"s1", 1.0, 1, 0.0, {{"oa", 1.0}, {"ob", 1.0}}}};
    a.deployment = {{"ca", "n1"}, {"cb", "n1"}};
    return a;
}

struct GeneratorOptions {
    int max_components = 5;
    int max_nodes = 3;
    int max_scenarios = 2;
    int max_steps = 5;
    bool integer_counts = false;
    bool zero_failure_links = false;
};

/// Random valid architecture with a fully connected node graph.
template <class R>
Architecture random_architecture(R& rng, const GeneratorOptions& opt = {}) {
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

    Architecture a;
    int nn = uni(1, opt.max_nodes);
    for (int k = 0; k < nn; ++k) a.nodes.push_back({"n" + std::to_string(k), real(0.5, 2.0), uni(1, 2)});
    for (int x = 0; x < nn; ++x)
        for (int y = x + 1; y < nn; ++y)
            a.links.push_back({"l" + std::to_string(x) + std::to_string(y), a.nodes[x].id, a.nodes[y].id,
                               opt.zero_failure_links ? 0.0 : real(0.0, 0.02), real(0.0, 0.01)});

    int nc = uni(1, opt.max_components);
    std::vector<std::string> ops;
    for (int i = 0; i < nc; ++i) {
        Component c{"c" + std::to_string(i), {}, real(0.0, 0.05)};
        int no = uni(1, 3);
        for (int o = 0; o < no; ++o) {
            c.operations.push_back({"o" + std::to_string(i) + "_" + std::to_string(o), real(0.001, 0.05)});
            ops.push_back(c.operations.back().id);
        }
        a.deployment[c.id] = a.nodes[uni(0, nn - 1)].id;
        a.components.push_back(std::move(c));
    }

    int ns = uni(1, opt.max_scenarios);
    std::vector<double> w;
    double total = 0.0;
    for (int j = 0; j < ns; ++j) {
        w.push_back(real(0.1, 1.0));
        total += w.back();
    }
    double acc = 0.0;
    for (int j = 0; j < ns; ++j) {
        UsageScenario s{"s" + std::to_string(j), j + 1 == ns ? 1.0 - acc : w[j] / total, uni(1, 20), real(0.0, 5.0),
                        {}};
        acc += s.weight;
        int steps = uni(1, opt.max_steps);
        for (int n = 0; n < steps; ++n) {
            double count = opt.integer_counts ? uni(0, 3) : real(0.0, 3.0);
            s.steps.push_back({ops[uni(0, static_cast<int>(ops.size()) - 1)], count});
        }
        a.scenarios.push_back(std::move(s));
    }
    return a;
}

inline QnModel single_class_model(std::vector<double> demands, int population, double think) {
    QnModel qn;
    qn.classes = {{"c", population, think, 0.0}};
    qn.demand = Matrix(demands.size(), 1);
    for (std::size_t k = 0; k < demands.size(); ++k) {
        qn.stations.push_back("k" + std::to_string(k));
        qn.demand(k, 0) = demands[k];
    }
    return qn;
}

/// Runs a shell command and captures stdout.
inline std::pair<int, std::string> run_command(const std::string& cmd) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, out};
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

inline std::string cli() { return ARCHOPT_CLI; }

}  // namespace archopt::testing
