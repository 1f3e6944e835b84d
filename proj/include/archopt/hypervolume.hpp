#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "model.hpp"
#include "pareto.hpp"

namespace archopt {

namespace detail {

// Slices along the last objective: between consecutive point levels the
// dominated region is the (d-1)-dimensional volume of the points already
// swept, times the slice height.
inline double hv_slice(std::vector<Point> pts, const Point& ref, std::size_t d) {
    if (pts.empty()) return 0.0;
    if (d == 1) {
        double best = pts[0][0];
        for (const auto& p : pts) best = std::min(best, p[0]);
        return ref[0] - best;
    }
    std::sort(pts.begin(), pts.end(), [d](const Point& a, const Point& b) { return a[d - 1] < b[d - 1]; });
    double vol = 0.0;
    std::vector<Point> swept;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Point proj(pts[i].begin(), pts[i].begin() + static_cast<std::ptrdiff_t>(d - 1));
        bool covered = std::any_of(swept.begin(), swept.end(), [&](const Point& s) {
            return std::equal(s.begin(), s.end(), proj.begin(), [](double x, double y) { return x <= y; });
        });
        if (!covered) {
            std::erase_if(swept, [&](const Point& s) {
                return std::equal(proj.begin(), proj.end(), s.begin(), [](double x, double y) { return x <= y; });
            });
            swept.push_back(std::move(proj));
        }
        double upper = i + 1 < pts.size() ? pts[i + 1][d - 1] : ref[d - 1];
        double height = upper - pts[i][d - 1];
        if (height > 0.0) vol += height * hv_slice(swept, ref, d - 1);
    }
    return vol;
}

}  // namespace detail

/// Exact volume of the region dominated by `front` and bounded by `ref`.
/// Every point must be <= ref componentwise.
inline double hypervolume(const std::vector<Point>& front, const Point& ref) {
    for (const auto& p : front) {
        if (p.size() != ref.size()) throw Error("hypervolume: dimension mismatch");
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] > ref[i]) {
                std::string s = "(";
                for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
                throw Error("hypervolume: point " + s + ") does not dominate the reference point");
            }
        }
    }
    if (front.empty() || ref.empty()) return 0.0;
    return detail::hv_slice(front, ref, ref.size());
}

}  // namespace archopt
