#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "../model.hpp"
#include "../pareto.hpp"

namespace archopt::moea {

using Cell = std::vector<int>;

/// Adaptive hypergrid: the bounding box of `pts` split into `divisions`
/// equal intervals per objective. Points on the upper bound fall in the last
/// interval; a degenerate (zero-width) objective maps everything to 0.
inline std::vector<Cell> grid_cells(const std::vector<Point>& pts, std::size_t divisions) {
    std::vector<Cell> cells(pts.size());
    if (pts.empty()) return cells;
    const std::size_t m = pts[0].size();
    for (std::size_t k = 0; k < m; ++k) {
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& p : pts) {
            lo = std::min(lo, p[k]);
            hi = std::max(hi, p[k]);
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            int c = 0;
            if (hi > lo && std::isfinite(hi - lo)) {
                c = static_cast<int>(std::floor((pts[i][k] - lo) / (hi - lo) * static_cast<double>(divisions)));
                c = std::clamp(c, 0, static_cast<int>(divisions) - 1);
            }
            cells[i].push_back(c);
        }
    }
    return cells;
}

/// Bounded non-dominated archive with region-based selection.
class PesaArchive {
public:
    PesaArchive(std::size_t capacity, std::size_t divisions) : capacity_(capacity), divisions_(divisions) {}

    std::size_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }
    const std::vector<std::size_t>& ids() const { return ids_; }

    /// Admits p unless some member is at least as good everywhere; removes the
    /// members p dominates; when over capacity evicts a uniform member of the
    /// most crowded cell (ties: smallest cell). Returns whether p was admitted.
    template <class R>
    bool insert(const Point& p, std::size_t id, R& rng) {
        for (const auto& q : points_)
            if (std::equal(q.begin(), q.end(), p.begin(), [](double a, double b) { return a <= b; })) return false;
        for (std::size_t i = points_.size(); i-- > 0;) {
            if (dominates(p, points_[i])) {
                points_.erase(points_.begin() + static_cast<std::ptrdiff_t>(i));
                ids_.erase(ids_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        points_.push_back(p);
        ids_.push_back(id);
        if (points_.size() > capacity_) {
            auto cells = occupancy();
            auto crowded = cells.begin();
            for (auto it = cells.begin(); it != cells.end(); ++it)
                if (it->second.size() > crowded->second.size()) crowded = it;
            const auto& members = crowded->second;
            std::size_t victim = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
            points_.erase(points_.begin() + static_cast<std::ptrdiff_t>(victim));
            ids_.erase(ids_.begin() + static_cast<std::ptrdiff_t>(victim));
        }
        return true;
    }

    /// Region-based selection: binary tournament between two uniformly drawn
    /// non-empty cells, the less crowded winning (ties by a fair coin), then a
    /// uniform member of the winning cell. Returns a member position.
    template <class R>
    std::size_t select(R& rng) const {
        if (points_.empty()) throw Error("PESA-II selection from an empty archive");
        auto cells = occupancy();
        std::vector<const std::vector<std::size_t>*> occupied;
        for (const auto& [cell, members] : cells) occupied.push_back(&members);
        std::uniform_int_distribution<std::size_t> pick(0, occupied.size() - 1);
        const auto* a = occupied[pick(rng)];
        const auto* b = occupied[pick(rng)];
        const std::vector<std::size_t>* win = a;
        if (b->size() < a->size()) win = b;
        else if (b->size() == a->size() && std::bernoulli_distribution(0.5)(rng)) win = b;
        return (*win)[std::uniform_int_distribution<std::size_t>(0, win->size() - 1)(rng)];
    }

    /// Members per occupied cell, ordered by cell.
    std::map<Cell, std::vector<std::size_t>> occupancy() const {
        std::map<Cell, std::vector<std::size_t>> cells;
        auto grid = grid_cells(points_, divisions_);
        for (std::size_t i = 0; i < grid.size(); ++i) cells[grid[i]].push_back(i);
        return cells;
    }

private:
    std::size_t capacity_;
    std::size_t divisions_;
    std::vector<Point> points_;
    std::vector<std::size_t> ids_;
};

}  // namespace archopt::moea
