#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "../pareto.hpp"

namespace archopt::moea {

/// Rank and crowding distance of every point, for tournament selection.
struct Nsga2Fitness {
    std::vector<std::size_t> rank;
    std::vector<double> crowding;
};

inline Nsga2Fitness nsga2_fitness(const std::vector<Point>& pts) {
    Nsga2Fitness f{std::vector<std::size_t>(pts.size(), 0), std::vector<double>(pts.size(), 0.0)};
    auto fronts = fast_nondominated_sort(pts);
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        auto cd = crowding_distance(pts, fronts[r]);
        for (std::size_t i = 0; i < fronts[r].size(); ++i) {
            f.rank[fronts[r][i]] = r;
            f.crowding[fronts[r][i]] = cd[i];
        }
    }
    return f;
}

/// Crowded comparison: lower rank wins, then larger crowding distance.
inline bool crowded_better(const Nsga2Fitness& f, std::size_t a, std::size_t b) {
    if (f.rank[a] != f.rank[b]) return f.rank[a] < f.rank[b];
    return f.crowding[a] > f.crowding[b];
}

/// Binary tournament; ties go to the lower index.
template <class R>
std::size_t nsga2_tournament(const Nsga2Fitness& f, R& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, f.rank.size() - 1);
    std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (crowded_better(f, a, b)) return a;
    if (crowded_better(f, b, a)) return b;
    return std::min(a, b);
}

/// Elitist (mu + lambda) survival over the merged pool: whole fronts in rank
/// order, the last one cut by descending crowding distance (ties: lower index).
inline std::vector<std::size_t> nsga2_survivors(const std::vector<Point>& pool, std::size_t mu) {
    std::vector<std::size_t> out;
    for (const auto& front : fast_nondominated_sort(pool)) {
        if (out.size() >= mu) break;
        if (out.size() + front.size() <= mu) {
            out.insert(out.end(), front.begin(), front.end());
            continue;
        }
        auto cd = crowding_distance(pool, front);
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
        for (std::size_t i = 0; out.size() < mu; ++i) out.push_back(front[order[i]]);
    }
    return out;
}

}  // namespace archopt::moea
