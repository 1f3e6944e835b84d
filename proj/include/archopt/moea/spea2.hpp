#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "../pareto.hpp"

namespace archopt::moea {

struct Spea2Fitness {
    std::vector<double> strength;  // S(i): points i dominates
    std::vector<double> raw;       // R(i): sum of S over i's dominators
    std::vector<double> density;   // 1 / (sigma_k + 2)
    std::vector<double> fitness;   // R + density; < 1 iff non-dominated
};

namespace detail {

/// Pairwise Euclidean distances after scaling each objective by its range
/// over the set (objectives with zero or non-finite range are ignored).
inline std::vector<std::vector<double>> normalized_distances(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    if (n == 0) return d;
    const std::size_t m = pts[0].size();
    std::vector<double> scale(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& p : pts) {
            if (!std::isfinite(p[k])) continue;
            lo = std::min(lo, p[k]);
            hi = std::max(hi, p[k]);
        }
        if (hi > lo) scale[k] = 1.0 / (hi - lo);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                if (scale[k] == 0.0) continue;
                double a = pts[i][k], b = pts[j][k];
                double diff = (std::isfinite(a) && std::isfinite(b)) ? (a - b) * scale[k]
                              : (std::isfinite(a) == std::isfinite(b)) ? 0.0
                                                                       : INFINITY;
                s += diff * diff;
            }
            d[i][j] = d[j][i] = std::sqrt(s);
        }
    }
    return d;
}

}  // namespace detail

/// SPEA2 fitness over the union of population and archive.
inline Spea2Fitness spea2_fitness(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    Spea2Fitness f{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                   std::vector<double>(n, 0.0)};
    std::vector<std::vector<bool>> dom(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && dominates(pts[i], pts[j])) {
                dom[i][j] = true;
                f.strength[i] += 1.0;
            }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (dom[j][i]) f.raw[i] += f.strength[j];

    auto dist = detail::normalized_distances(pts);
    const std::size_t k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) row.push_back(dist[i][j]);
        std::sort(row.begin(), row.end());
        double sigma = row.empty() ? 0.0 : row[std::min(k, row.size()) - 1];
        f.density[i] = 1.0 / (sigma + 2.0);
        f.fitness[i] = f.raw[i] + f.density[i];
    }
    return f;
}

/// Environmental selection: every non-dominated point (fitness < 1); if too
/// few, the best dominated ones by fitness; if too many, iterative removal
/// of the point whose sorted neighbour distances are lexicographically
/// smallest (ties: lower index). Returns selected indices, ascending.
inline std::vector<std::size_t> spea2_environmental_selection(const std::vector<Point>& pts, const Spea2Fitness& f,
                                                              std::size_t archive_size) {
    std::vector<std::size_t> sel, rest;
    for (std::size_t i = 0; i < pts.size(); ++i) (f.fitness[i] < 1.0 ? sel : rest).push_back(i);

    if (sel.size() < archive_size) {
        std::stable_sort(rest.begin(), rest.end(),
                         [&](std::size_t a, std::size_t b) { return f.fitness[a] < f.fitness[b]; });
        for (std::size_t i = 0; i < rest.size() && sel.size() < archive_size; ++i) sel.push_back(rest[i]);
        std::sort(sel.begin(), sel.end());
        return sel;
    }

    auto dist = detail::normalized_distances(pts);
    while (sel.size() > archive_size) {
        std::size_t victim = 0;
        std::vector<double> worst;
        for (std::size_t a = 0; a < sel.size(); ++a) {
            std::vector<double> row;
            for (std::size_t b = 0; b < sel.size(); ++b)
                if (a != b) row.push_back(dist[sel[a]][sel[b]]);
            std::sort(row.begin(), row.end());
            if (a == 0 || row < worst) {
                worst = std::move(row);
                victim = a;
            }
        }
        sel.erase(sel.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    return sel;
}

/// Binary tournament on fitness (lower is better; ties: lower index).
template <class R>
std::size_t spea2_tournament(const std::vector<double>& fitness, R& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, fitness.size() - 1);
    std::size_t a = pick(rng), b = pick(rng);
    if (fitness[a] < fitness[b]) return a;
    if (fitness[b] < fitness[a]) return b;
    return std::min(a, b);
}

}  // namespace archopt::moea
