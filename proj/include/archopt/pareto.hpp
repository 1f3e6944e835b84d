#pragma once

// Pareto dominance utilities over minimized objective vectors.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace archopt {

using Point = std::vector<double>;

/// a dominates b: no worse in every objective and strictly better in one.
inline bool dominates(std::span<const double> a, std::span<const double> b) {
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly = true;
    }
    return strictly;
}

/// Deb's fast non-dominated sort. Fronts hold point indices in ascending order.
inline std::vector<std::vector<std::size_t>> fast_nondominated_sort(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(pts[p], pts[q])) dominated[p].push_back(q);
            else if (dominates(pts[q], pts[p])) ++count[p];
        }
        if (count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : current)
            for (std::size_t q : dominated[p])
                if (--count[q] == 0) next.push_back(q);
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

/// Rank (0-based front index) of each point.
inline std::vector<std::size_t> pareto_ranks(const std::vector<Point>& pts) {
    std::vector<std::size_t> rank(pts.size(), 0);
    auto fronts = fast_nondominated_sort(pts);
    for (std::size_t f = 0; f < fronts.size(); ++f)
        for (std::size_t i : fronts[f]) rank[i] = f;
    return rank;
}

inline std::vector<std::size_t> nondominated_indices(const std::vector<Point>& pts) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dom = false;
        for (std::size_t j = 0; j < pts.size() && !dom; ++j) dom = j != i && dominates(pts[j], pts[i]);
        if (!dom) out.push_back(i);
    }
    return out;
}

/// Crowding distance of the points listed in `front`, in the same order.
/// Per objective, points are ordered by value with ties broken by position
/// in `front`; the first and last get +inf and inner points add the gap
/// between their neighbours divided by the objective's range. A zero range
/// adds nothing. Non-finite values are treated as extremes.
inline std::vector<double> crowding_distance(const std::vector<Point>& pts, const std::vector<std::size_t>& front) {
    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = front.size();
    std::vector<double> cd(n, 0.0);
    if (n == 0) return cd;
    if (n <= 2) return std::vector<double>(n, inf);
    const std::size_t m = pts[front[0]].size();
    std::vector<std::size_t> order(n);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return pts[front[a]][obj] < pts[front[b]][obj]; });
        cd[order.front()] = inf;
        cd[order.back()] = inf;
        double lo = pts[front[order.front()]][obj];
        double hi = pts[front[order.back()]][obj];
        double range = hi - lo;
        for (std::size_t r = 1; r + 1 < n; ++r) {
            double v = pts[front[order[r]]][obj];
            if (!std::isfinite(v)) {
                cd[order[r]] = inf;
                continue;
            }
            if (!(range > 0.0) || !std::isfinite(range)) continue;
            cd[order[r]] += (pts[front[order[r + 1]]][obj] - pts[front[order[r - 1]]][obj]) / range;
        }
    }
    return cd;
}

}  // namespace archopt
