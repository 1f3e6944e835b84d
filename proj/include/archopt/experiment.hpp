#pragma once

// Algorithm x budget x seed comparison, each cell run with and without the
// antipattern objective, scored by hypervolume against a common reference.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "config.hpp"
#include "hypervolume.hpp"
#include "report.hpp"

namespace archopt {

inline std::string budget_label(const moea::Budget& b) {
    if (b.seconds) {
        std::string s = format_double(*b.seconds);
        return s + "s";
    }
    if (b.max_evaluations) return std::to_string(*b.max_evaluations) + "ev";
    return "unbounded";
}

struct CompareRow {
    std::string algorithm;
    std::string budget;
    std::uint64_t seed = 0;
    bool with_pas = true;
    double hypervolume = 0.0;
    std::size_t front_size = 0;
    double best_perfq = 0.0;
    double best_reliability = 0.0;
    std::size_t evaluations = 0;
    double wall_seconds = 0.0;
};

struct CompareSummary {
    std::string algorithm;
    std::string budget;
    bool with_pas = true;
    double median_hypervolume = 0.0;
    double median_front_size = 0.0;
    double median_best_perfq = 0.0;
    double median_best_reliability = 0.0;
    double median_evaluations = 0.0;
};

struct CompareResult {
    std::vector<CompareRow> rows;
    std::vector<CompareSummary> summary;
    Point reference;
};

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Componentwise worst over all points, pushed out by 10% of the observed
/// span (10% of max(|worst|, 1) when the span is zero).
inline Point reference_point(const std::vector<std::vector<Point>>& fronts) {
    Point worst, best;
    for (const auto& f : fronts)
        for (const auto& p : f) {
            if (worst.empty()) worst = best = p;
            for (std::size_t k = 0; k < p.size(); ++k) {
                worst[k] = std::max(worst[k], p[k]);
                best[k] = std::min(best[k], p[k]);
            }
        }
    for (std::size_t k = 0; k < worst.size(); ++k) {
        double span = worst[k] - best[k];
        worst[k] += span > 0.0 ? 0.1 * span : 0.1 * std::max(std::abs(worst[k]), 1.0);
    }
    return worst;
}

/// Runs every cell, writes each run's front files under
/// `<output_dir>/runs/<algorithm>-<budget>-s<seed>-<pas|nopas>/`, and
/// returns per-run rows plus medians over seeds.
inline CompareResult run_compare(const Architecture& initial, const RunConfig& cfg,
                                 const std::function<void(const CompareRow&)>& progress = {}) {
    const auto& cmp = cfg.compare;
    std::vector<moea::Algorithm> algorithms = cmp.algorithms;
    if (algorithms.empty()) algorithms.push_back(cfg.search.algorithm);
    std::vector<moea::Budget> budgets = cmp.budgets;
    if (budgets.empty()) budgets.push_back(cfg.search.budget);
    std::vector<std::uint64_t> seeds = cmp.seeds;
    if (seeds.empty()) seeds.push_back(cfg.search.seed);

    CompareResult res;
    std::vector<std::vector<Point>> fronts;
    for (auto alg : algorithms)
        for (const auto& budget : budgets)
            for (bool with_pas : {true, false})
                for (auto seed : seeds) {
                    moea::SearchConfig sc = cfg.search;
                    sc.algorithm = alg;
                    sc.budget = budget;
                    sc.seed = seed;
                    sc.use_pas_objective = with_pas;
                    moea::ParetoFront pf = moea::run(initial, sc);

                    CompareRow row{std::string(moea::algorithm_name(alg)), budget_label(budget), seed, with_pas};
                    row.front_size = pf.members.size();
                    row.evaluations = pf.meta.evaluations;
                    row.wall_seconds = pf.meta.wall_seconds;
                    row.best_perfq = -INFINITY;
                    row.best_reliability = -INFINITY;
                    std::vector<Point> pts;
                    for (const auto& m : pf.members) {
                        row.best_perfq = std::max(row.best_perfq, m.objectives.perfq);
                        row.best_reliability = std::max(row.best_reliability, m.objectives.reliability);
                        pts.push_back(moea::minimized(m.objectives, true, true));
                    }
                    fronts.push_back(std::move(pts));

                    std::filesystem::path dir = std::filesystem::path(cfg.output_dir) / "runs" /
                                                (row.algorithm + "-" + row.budget + "-s" + std::to_string(seed) +
                                                 (with_pas ? "-pas" : "-nopas"));
                    std::filesystem::create_directories(dir);
                    std::ofstream(dir / "front.csv") << [&] {
                        std::ostringstream os;
                        write_front_csv(os, pf);
                        return os.str();
                    }();
                    std::ofstream(dir / "front.json") << to_json(pf).dump(2) << "\n";

                    res.rows.push_back(row);
                    if (progress) progress(row);
                }

    res.reference = reference_point(fronts);
    for (std::size_t i = 0; i < res.rows.size(); ++i)
        res.rows[i].hypervolume = fronts[i].empty() ? 0.0 : hypervolume(fronts[i], res.reference);

    std::map<std::tuple<std::string, std::string, bool>, std::vector<const CompareRow*>> cells;
    std::vector<std::tuple<std::string, std::string, bool>> order;
    for (const auto& r : res.rows) {
        auto key = std::make_tuple(r.algorithm, r.budget, r.with_pas);
        if (!cells.contains(key)) order.push_back(key);
        cells[key].push_back(&r);
    }
    for (const auto& key : order) {
        std::vector<double> hv, fs, bp, br, ev;
        for (const auto* r : cells[key]) {
            hv.push_back(r->hypervolume);
            fs.push_back(static_cast<double>(r->front_size));
            bp.push_back(r->best_perfq);
            br.push_back(r->best_reliability);
            ev.push_back(static_cast<double>(r->evaluations));
        }
        res.summary.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), median(hv), median(fs),
                               median(bp), median(br), median(ev)});
    }
    return res;
}

inline void write_compare_csv(std::ostream& os, const CompareResult& r) {
    os << "algorithm,budget,seed,pas_objective,hypervolume,front_size,best_perfQ,best_reliability,evaluations,"
          "wall_seconds\n";
    for (const auto& x : r.rows)
        os << x.algorithm << "," << x.budget << "," << x.seed << "," << (x.with_pas ? "with" : "without") << ","
           << format_double(x.hypervolume) << "," << x.front_size << "," << format_double(x.best_perfq) << ","
           << format_double(x.best_reliability) << "," << x.evaluations << "," << format_double(x.wall_seconds)
           << "\n";
}

inline void write_summary_csv(std::ostream& os, const CompareResult& r) {
    os << "algorithm,budget,pas_objective,median_hypervolume,median_front_size,median_best_perfQ,"
          "median_best_reliability,median_evaluations\n";
    for (const auto& s : r.summary)
        os << s.algorithm << "," << s.budget << "," << (s.with_pas ? "with" : "without") << ","
           << format_double(s.median_hypervolume) << "," << format_double(s.median_front_size) << ","
           << format_double(s.median_best_perfq) << "," << format_double(s.median_best_reliability) << ","
           << format_double(s.median_evaluations) << "\n";
}

/// Human-readable table of the summary with the with/without #PAs effect.
inline void print_summary_table(std::ostream& os, const CompareResult& r) {
    char line[256];
    std::snprintf(line, sizeof line, "%-7s %-10s %-8s %12s %8s %12s %12s %10s\n", "alg", "budget", "#PAs", "med.HV",
                  "med.|F|", "med.perfQ", "med.rel", "med.evals");
    os << line;
    for (const auto& s : r.summary) {
        std::snprintf(line, sizeof line, "%-7s %-10s %-8s %12.6g %8.1f %12.6g %12.8f %10.0f\n", s.algorithm.c_str(),
                      s.budget.c_str(), s.with_pas ? "with" : "without", s.median_hypervolume, s.median_front_size,
                      s.median_best_perfq, s.median_best_reliability, s.median_evaluations);
        os << line;
    }
    os << "\neffect of the #PAs objective (with - without, medians):\n";
    for (const auto& a : r.summary) {
        if (!a.with_pas) continue;
        for (const auto& b : r.summary) {
            if (b.with_pas || b.algorithm != a.algorithm || b.budget != a.budget) continue;
            std::snprintf(line, sizeof line, "%-7s %-10s dHV=%+.6g dperfQ=%+.6g dreliability=%+.3e\n",
                          a.algorithm.c_str(), a.budget.c_str(), a.median_hypervolume - b.median_hypervolume,
                          a.median_best_perfq - b.median_best_perfq,
                          a.median_best_reliability - b.median_best_reliability);
            os << line;
        }
    }
}

}  // namespace archopt
