#pragma once

// Crisp detection rules for three performance antipatterns.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"
#include "qn.hpp"

namespace archopt {

enum class AntipatternKind { Blob, ConcurrentProcessingSystems, PipeAndFilter };

inline std::string_view antipattern_name(AntipatternKind k) {
    switch (k) {
        case AntipatternKind::Blob: return "Blob";
        case AntipatternKind::ConcurrentProcessingSystems: return "ConcurrentProcessingSystems";
        case AntipatternKind::PipeAndFilter: return "PipeAndFilter";
    }
    return "?";
}

struct Detection {
    AntipatternKind kind;
    std::vector<std::string> elements;
    std::map<std::string, double> metrics;
};

struct Thresholds {
    double util_high = 0.8;
    double util_low = 0.3;
    double blob_share = 2.0;         // multiple of the mean per-component invocations
    double paf_demand_share = 0.5;  // fraction of the scenario's total demand

    bool valid() const {
        return 0.0 <= util_low && util_low < util_high && util_high <= 1.0 && blob_share > 0.0 &&
               paf_demand_share > 0.0;
    }
};

/// Blob: a component invoked more than blob_share times the per-component
/// mean in some scenario, on a node at or above util_high.
/// ConcurrentProcessingSystems: one node at or above util_high while another
/// is at or below util_low.
/// PipeAndFilter: an operation carrying at least paf_demand_share of its
/// scenario's demand on a node at or above util_high.
///
/// Each (kind, element) is reported once, whatever the number of scenarios
/// that trigger it.
inline std::vector<Detection> detect(const Architecture& arch, const PerformanceResult& perf, const Thresholds& th) {
    std::vector<Detection> out;
    if (perf.utilization.size() != arch.nodes.size()) throw Error("detect: performance result does not match nodes");
    ArchIndex idx(arch);
    Invocations inv = invocation_matrix(arch);
    auto util_of = [&](std::size_t comp) { return perf.utilization[idx.node_of(arch, comp)]; };

    const std::size_t nc = arch.components.size();
    for (std::size_t i = 0; i < nc; ++i) {
        double u = util_of(i);
        if (u < th.util_high) continue;
        for (std::size_t j = 0; j < arch.scenarios.size(); ++j) {
            double mean = 0.0;
            for (std::size_t c = 0; c < nc; ++c) mean += inv.components(c, j);
            mean /= static_cast<double>(nc);
            if (inv.components(i, j) > th.blob_share * mean) {
                out.push_back({AntipatternKind::Blob,
                               {arch.components[i].id},
                               {{"invocations", inv.components(i, j)}, {"mean_invocations", mean}, {"utilization", u}}});
                break;
            }
        }
    }

    for (std::size_t a = 0; a < arch.nodes.size(); ++a) {
        if (perf.utilization[a] < th.util_high) continue;
        for (std::size_t b = 0; b < arch.nodes.size(); ++b) {
            if (a == b || perf.utilization[b] > th.util_low) continue;
            out.push_back({AntipatternKind::ConcurrentProcessingSystems,
                           {arch.nodes[a].id, arch.nodes[b].id},
                           {{"utilization_high", perf.utilization[a]}, {"utilization_low", perf.utilization[b]}}});
        }
    }

    std::vector<double> work = scenario_work(arch);
    for (std::size_t i = 0; i < nc; ++i) {
        double u = util_of(i);
        if (u < th.util_high) continue;
        for (const auto& o : arch.components[i].operations) {
            for (std::size_t j = 0; j < arch.scenarios.size(); ++j) {
                if (work[j] <= 0.0) continue;
                double count = 0.0;
                for (const auto& st : arch.scenarios[j].steps)
                    if (st.operation == o.id) count += st.count;
                double share = count * o.cpu_demand / work[j];
                if (share >= th.paf_demand_share) {
                    out.push_back({AntipatternKind::PipeAndFilter,
                                   {o.id},
                                   {{"demand_share", share}, {"utilization", u}}});
                    break;
                }
            }
        }
    }
    return out;
}

inline std::size_t pas_count(const Architecture& arch, const PerformanceResult& perf, const Thresholds& th) {
    return detect(arch, perf, th).size();
}

}  // namespace archopt
