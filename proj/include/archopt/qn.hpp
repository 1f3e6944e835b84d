#pragma once

// Closed multiclass queueing model over processor nodes and its mean value
// analysis solvers.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "model.hpp"

namespace archopt {

struct QnClass {
    std::string id;
    int population = 1;
    double think_time = 0.0;
    double delay = 0.0;  // pure delay per cycle (network latency), not queued
};

/// One processor-sharing station per node; demand(k, j) in seconds, already
/// divided by the node's core count.
struct QnModel {
    std::vector<QnClass> classes;
    std::vector<std::string> stations;
    Matrix demand;
};

struct PerformanceResult {
    std::vector<std::string> scenarios;
    std::vector<double> throughput;     // X_j, 1/s
    std::vector<double> response_time;  // R_j, s (queueing + network delay)
    std::vector<std::string> nodes;
    std::vector<double> utilization;  // U_k
    std::vector<bool> delay_only;     // class had zero demand at every station
    std::size_t iterations = 0;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual_ = 0.0) : Error(what), residual(residual_) {}
    double residual;
};

inline QnModel to_qn(const Architecture& arch) {
    QnModel qn;
    Matrix d = demand_matrix(arch);
    Matrix m = invocation_matrix(arch).links;
    qn.demand = Matrix(arch.nodes.size(), arch.scenarios.size());
    for (std::size_t k = 0; k < arch.nodes.size(); ++k) {
        qn.stations.push_back(arch.nodes[k].id);
        for (std::size_t j = 0; j < arch.scenarios.size(); ++j)
            qn.demand(k, j) = d(k, j) / static_cast<double>(arch.nodes[k].cores);
    }
    for (std::size_t j = 0; j < arch.scenarios.size(); ++j) {
        const auto& s = arch.scenarios[j];
        double delay = 0.0;
        for (std::size_t l = 0; l < arch.links.size(); ++l) delay += m(l, j) * arch.links[l].delay;
        qn.classes.push_back({s.id, s.population, s.think_time, delay});
    }
    return qn;
}

namespace detail {

inline PerformanceResult empty_result(const QnModel& qn) {
    PerformanceResult r;
    std::size_t c = qn.classes.size();
    for (const auto& cl : qn.classes) r.scenarios.push_back(cl.id);
    r.nodes = qn.stations;
    r.throughput.assign(c, 0.0);
    r.response_time.assign(c, 0.0);
    r.utilization.assign(qn.stations.size(), 0.0);
    r.delay_only.assign(c, false);
    for (std::size_t j = 0; j < c; ++j) {
        bool any = false;
        for (std::size_t k = 0; k < qn.stations.size(); ++k) any = any || qn.demand(k, j) > 0.0;
        r.delay_only[j] = !any;
    }
    return r;
}

inline void solve_delay_only(const QnModel& qn, PerformanceResult& r, std::size_t j) {
    const auto& cl = qn.classes[j];
    double cycle = cl.think_time + cl.delay;
    if (cycle <= 0.0) throw SolverError("class " + cl.id + " has zero demand and zero think time");
    r.throughput[j] = cl.population / cycle;
    r.response_time[j] = cl.delay;
}

inline void fill_utilization(const QnModel& qn, PerformanceResult& r) {
    for (std::size_t k = 0; k < qn.stations.size(); ++k) {
        double u = 0.0;
        for (std::size_t j = 0; j < qn.classes.size(); ++j) u += r.throughput[j] * qn.demand(k, j);
        r.utilization[k] = u;
    }
}

inline void check_model(const QnModel& qn) {
    if (qn.demand.rows != qn.stations.size() || qn.demand.cols != qn.classes.size())
        throw SolverError("demand matrix shape does not match stations x classes");
    for (double d : qn.demand.data)
        if (!(std::isfinite(d) && d >= 0.0)) throw SolverError("demands must be finite and >= 0");
    for (const auto& cl : qn.classes)
        if (cl.population < 1) throw SolverError("class " + cl.id + " population must be >= 1");
}

}  // namespace detail

/// Exact single-class MVA recursion over n = 1..N.
inline PerformanceResult solve_exact_mva(const QnModel& qn) {
    if (qn.classes.size() != 1) throw SolverError("exact MVA handles a single class; use AMVA");
    detail::check_model(qn);
    const auto& cl = qn.classes[0];
    if (cl.population > 10000) throw SolverError("population exceeds 10^4");

    PerformanceResult r = detail::empty_result(qn);
    if (r.delay_only[0]) {
        detail::solve_delay_only(qn, r, 0);
        return r;
    }
    std::size_t K = qn.stations.size();
    std::vector<double> q(K, 0.0), res(K, 0.0);
    double x = 0.0, rt = 0.0;
    for (int n = 1; n <= cl.population; ++n) {
        rt = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            res[k] = qn.demand(k, 0) * (1.0 + q[k]);
            rt += res[k];
        }
        x = n / (cl.think_time + cl.delay + rt);
        for (std::size_t k = 0; k < K; ++k) q[k] = x * res[k];
    }
    r.throughput[0] = x;
    r.response_time[0] = rt + cl.delay;
    r.iterations = static_cast<std::size_t>(cl.population);
    detail::fill_utilization(qn, r);
    return r;
}

struct AmvaOptions {
    double tolerance = 1e-6;
    std::size_t max_iterations = 100000;
};

/// Multiclass approximate MVA with the Bard-Schweitzer estimate of the queue
/// seen on arrival: Q_k(N - 1_j) ~ sum_i Q_ki - Q_kj / N_j.
inline PerformanceResult solve_amva(const QnModel& qn, const AmvaOptions& opt = {}) {
    if (qn.classes.empty()) throw SolverError("model has no classes");
    detail::check_model(qn);
    PerformanceResult r = detail::empty_result(qn);
    const std::size_t K = qn.stations.size();
    const std::size_t C = qn.classes.size();

    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < C; ++j) {
        if (r.delay_only[j]) detail::solve_delay_only(qn, r, j);
        else active.push_back(j);
    }

    Matrix q(K, C), res(K, C);
    for (std::size_t j : active) {
        std::size_t visited = 0;
        for (std::size_t k = 0; k < K; ++k) visited += qn.demand(k, j) > 0.0;
        for (std::size_t k = 0; k < K; ++k)
            if (qn.demand(k, j) > 0.0) q(k, j) = qn.classes[j].population / static_cast<double>(visited);
    }

    double residual = 0.0;
    std::size_t it = 0;
    while (!active.empty()) {
        if (++it > opt.max_iterations)
            throw SolverError("AMVA did not converge; last residual " + std::to_string(residual), residual);
        std::vector<double> total(K, 0.0);
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t j : active) total[k] += q(k, j);

        residual = 0.0;
        for (std::size_t j : active) {
            const auto& cl = qn.classes[j];
            double rt = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                double seen = total[k] - q(k, j) / cl.population;
                res(k, j) = qn.demand(k, j) * (1.0 + seen);
                rt += res(k, j);
            }
            double x = cl.population / (cl.think_time + cl.delay + rt);
            for (std::size_t k = 0; k < K; ++k) {
                double next = x * res(k, j);
                residual = std::max(residual, std::abs(next - q(k, j)));
                q(k, j) = next;
            }
            r.throughput[j] = x;
            r.response_time[j] = rt + cl.delay;
        }
        if (residual < opt.tolerance) break;
    }
    r.iterations = it;
    detail::fill_utilization(qn, r);
    return r;
}

/// Mean normalized per-scenario response-time variation, positive when the
/// refactored architecture responds faster.
inline double perfq(const PerformanceResult& initial, const PerformanceResult& refactored) {
    if (initial.scenarios != refactored.scenarios) throw Error("perfq: scenario sets differ");
    const std::size_t c = initial.scenarios.size();
    if (c == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
        double i = initial.response_time[j];
        double f = refactored.response_time[j];
        if (f + i != 0.0) sum += -(f - i) / (f + i);
    }
    return sum / static_cast<double>(c) + 0.0;
}

}  // namespace archopt
