#pragma once

#include <cmath>
#include <vector>

#include "model.hpp"

namespace archopt {

struct ReliabilityResult {
    double value = 1.0;                 // R = sum_j p_j R_j
    std::vector<double> per_scenario;  // R_j
};

/// Closed-form component-based reliability: a scenario cycle succeeds when
/// every component invocation and every link message succeeds, failures
/// being independent. Expected counts are used as exponents.
inline ReliabilityResult reliability(const Architecture& arch) {
    Invocations inv = invocation_matrix(arch);
    ReliabilityResult r;
    r.value = 0.0;
    for (std::size_t j = 0; j < arch.scenarios.size(); ++j) {
        double rj = 1.0;
        for (std::size_t i = 0; i < arch.components.size(); ++i)
            rj *= std::pow(1.0 - arch.components[i].failure_prob, inv.components(i, j));
        for (std::size_t l = 0; l < arch.links.size(); ++l)
            rj *= std::pow(1.0 - arch.links[l].failure_prob, inv.links(l, j));
        r.per_scenario.push_back(rj);
        r.value += arch.scenarios[j].weight * rj;
    }
    return r;
}

}  // namespace archopt
