#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <mutex>
#include <string>
#include <unordered_map>

#include "../antipatterns.hpp"
#include "../model_io.hpp"
#include "../pareto.hpp"
#include "../qn.hpp"
#include "../refactoring.hpp"
#include "../reliability.hpp"

namespace archopt::moea {

/// Raw objective values; see minimized() for the vector the search sorts on.
struct Objectives {
    double perfq = 0.0;
    double reliability = 1.0;
    std::size_t pas = 0;
    double distance = 0.0;

    bool operator==(const Objectives&) const = default;
};

/// (-perfQ, -reliability, #PAs, distance), dropping #PAs when disabled.
/// Invalid candidates map to +inf everywhere so every valid point dominates them.
inline Point minimized(const Objectives& o, bool valid, bool with_pas) {
    if (!valid) return Point(with_pas ? 4 : 3, std::numeric_limits<double>::infinity());
    Point p{-o.perfq, -o.reliability};
    if (with_pas) p.push_back(static_cast<double>(o.pas));
    p.push_back(o.distance);
    return p;
}

struct Individual {
    RefactoringSequence genotype;
    std::string key;  // textual genotype
    std::uint64_t digest = 0;
    Objectives objectives;
    bool valid = true;
    Point point;
};

struct EvaluationSettings {
    Thresholds thresholds;
    BrfTable brf;
    AmvaOptions amva;
};

struct Evaluation {
    Objectives objectives;
    std::uint64_t digest = 0;
    bool valid = true;
    std::string error;
};

/// Scores refactoring sequences against a fixed initial architecture.
/// Results are memoized by (initial digest, genotype); evaluate() may be
/// called concurrently.
class Evaluator {
public:
    Evaluator(Architecture initial, EvaluationSettings settings = {})
        : initial_(std::move(initial)),
          settings_(settings),
          initial_digest_(digest(initial_)),
          initial_perf_(solve_amva(to_qn(initial_), settings_.amva)) {}

    const Architecture& initial() const { return initial_; }
    const PerformanceResult& initial_performance() const { return initial_perf_; }
    const EvaluationSettings& settings() const { return settings_; }
    std::size_t solver_runs() const { return solver_runs_.load(); }

    /// Throws InfeasibleAction when the sequence cannot be applied.
    Evaluation evaluate(const RefactoringSequence& seq) const {
        std::string key = std::to_string(initial_digest_) + "|" + to_text(seq);
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        }
        Evaluation e = compute(apply_sequence(initial_, seq), distance(seq, settings_.brf));
        std::lock_guard lock(mutex_);
        return cache_.emplace(std::move(key), std::move(e)).first->second;
    }

    /// Scores an already folded architecture (no caching).
    Evaluation compute(const Architecture& folded, double dist) const {
        Evaluation e;
        e.digest = digest(folded);
        e.objectives.distance = dist;
        try {
            ++solver_runs_;
            PerformanceResult perf = solve_amva(to_qn(folded), settings_.amva);
            e.objectives.perfq = perfq(initial_perf_, perf);
            e.objectives.reliability = reliability(folded).value;
            e.objectives.pas = pas_count(folded, perf, settings_.thresholds);
        } catch (const SolverError& err) {
            e.valid = false;
            e.error = err.what();
        }
        return e;
    }

    /// Full performance result of a folded sequence, for reporting.
    PerformanceResult performance(const RefactoringSequence& seq) const {
        return solve_amva(to_qn(apply_sequence(initial_, seq)), settings_.amva);
    }

private:
    Architecture initial_;
    EvaluationSettings settings_;
    std::uint64_t initial_digest_;
    PerformanceResult initial_perf_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::string, Evaluation> cache_;
    mutable std::atomic<std::size_t> solver_runs_{0};
};

inline Individual make_individual(RefactoringSequence seq, const Evaluation& e, bool with_pas) {
    Individual ind;
    ind.key = to_text(seq);
    ind.genotype = std::move(seq);
    ind.digest = e.digest;
    ind.objectives = e.objectives;
    ind.valid = e.valid;
    ind.point = minimized(e.objectives, e.valid, with_pas);
    return ind;
}

}  // namespace archopt::moea
