#pragma once

// Search driver shared by the three algorithms: budget accounting, batched
// (optionally parallel) evaluation and the cumulative non-dominated set.

#include <chrono>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evaluator.hpp"
#include "nsga2.hpp"
#include "operators.hpp"
#include "pesa2.hpp"
#include "spea2.hpp"

namespace archopt::moea {

enum class Algorithm { Nsga2, Spea2, Pesa2 };

inline std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Nsga2: return "nsga2";
        case Algorithm::Spea2: return "spea2";
        case Algorithm::Pesa2: return "pesa2";
    }
    return "?";
}

inline std::optional<Algorithm> algorithm_from_name(std::string_view s) {
    for (auto a : {Algorithm::Nsga2, Algorithm::Spea2, Algorithm::Pesa2})
        if (algorithm_name(a) == s) return a;
    return std::nullopt;
}

/// Stops at whichever limit is reached first; an unset limit never stops.
struct Budget {
    std::optional<std::size_t> max_evaluations;
    std::optional<double> seconds;
};

struct SearchConfig {
    Algorithm algorithm = Algorithm::Nsga2;
    std::uint64_t seed = 1;
    std::size_t population = 32;
    std::size_t archive = 32;
    std::size_t sequence_length = 4;
    std::size_t pesa_divisions = 8;
    bool use_pas_objective = true;
    std::size_t workers = 1;
    Budget budget;
    VariationSettings variation;
    EvaluationSettings evaluation;
};

struct RunMetadata {
    std::string algorithm;
    std::uint64_t seed = 0;
    Budget budget;
    std::size_t evaluations = 0;
    std::size_t solver_runs = 0;
    std::size_t invalid = 0;
    std::size_t generations = 0;
    double wall_seconds = 0.0;
    bool budget_truncated = false;
};

struct ParetoFront {
    std::vector<Individual> members;
    RunMetadata meta;
};

/// Non-dominated set of everything evaluated so far, one entry per genotype.
class CumulativeFront {
public:
    void offer(const Individual& ind) {
        if (!ind.valid || !seen_.insert(ind.key).second) return;
        for (const auto& m : members_)
            if (dominates(m.point, ind.point)) return;
        std::erase_if(members_, [&](const Individual& m) { return dominates(ind.point, m.point); });
        members_.push_back(ind);
    }

    /// Members ordered by objective vector, then genotype text.
    std::vector<Individual> sorted() const {
        auto out = members_;
        std::sort(out.begin(), out.end(), [](const Individual& a, const Individual& b) {
            if (a.point != b.point) return a.point < b.point;
            return a.key < b.key;
        });
        return out;
    }

private:
    std::vector<Individual> members_;
    std::set<std::string> seen_;
};

namespace detail {

class Search {
public:
    Search(const Evaluator& ev, const SearchConfig& cfg, Rng& rng)
        : ev_(ev), cfg_(cfg), rng_(rng), start_(std::chrono::steady_clock::now()) {}

    const Architecture& initial() const { return ev_.initial(); }
    Rng& rng() { return rng_; }
    const SearchConfig& config() const { return cfg_; }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    bool exhausted() const {
        if (cfg_.budget.max_evaluations && evaluations_ >= *cfg_.budget.max_evaluations) return true;
        if (cfg_.budget.seconds && elapsed() >= *cfg_.budget.seconds) return true;
        return false;
    }

    std::vector<RefactoringSequence> random_population(std::size_t n) {
        std::vector<RefactoringSequence> out;
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(random_sequence(initial(), cfg_.sequence_length, rng_, cfg_.variation.sampling));
        return out;
    }

    /// Evaluates in submission order, stopping early once the budget is spent
    /// unless `force` is set.
    std::vector<Individual> evaluate(const std::vector<RefactoringSequence>& seqs, bool force = false) {
        std::vector<Individual> out;
        const std::size_t chunk = std::max<std::size_t>(1, cfg_.workers);
        for (std::size_t i = 0; i < seqs.size();) {
            if (!force && exhausted()) break;
            std::size_t n = std::min(chunk, seqs.size() - i);
            if (!force && cfg_.budget.max_evaluations) n = std::min(n, *cfg_.budget.max_evaluations - evaluations_);
            std::vector<Evaluation> results;
            if (n == 1) {
                results.push_back(ev_.evaluate(seqs[i]));
            } else {
                std::vector<std::future<Evaluation>> futs;
                for (std::size_t k = 0; k < n; ++k)
                    futs.push_back(std::async(std::launch::async, [&, k] { return ev_.evaluate(seqs[i + k]); }));
                for (auto& f : futs) results.push_back(f.get());
            }
            for (std::size_t k = 0; k < n; ++k) {
                out.push_back(make_individual(seqs[i + k], results[k], cfg_.use_pas_objective));
                ++evaluations_;
                if (!out.back().valid) ++invalid_;
                front_.offer(out.back());
            }
            i += n;
        }
        return out;
    }

    ParetoFront finish(std::size_t generations) const {
        ParetoFront pf;
        pf.members = front_.sorted();
        pf.meta.algorithm = std::string(algorithm_name(cfg_.algorithm));
        pf.meta.seed = cfg_.seed;
        pf.meta.budget = cfg_.budget;
        pf.meta.evaluations = evaluations_;
        pf.meta.solver_runs = ev_.solver_runs();
        pf.meta.invalid = invalid_;
        pf.meta.generations = generations;
        pf.meta.wall_seconds = elapsed();
        pf.meta.budget_truncated = generations == 0;
        return pf;
    }

    std::pair<RefactoringSequence, RefactoringSequence> vary(const RefactoringSequence& a,
                                                             const RefactoringSequence& b) {
        return moea::vary(initial(), a, b, rng_, cfg_.variation);
    }

private:
    const Evaluator& ev_;
    const SearchConfig& cfg_;
    Rng& rng_;
    std::chrono::steady_clock::time_point start_;
    std::size_t evaluations_ = 0;
    std::size_t invalid_ = 0;
    CumulativeFront front_;
};

inline std::vector<Point> points_of(const std::vector<Individual>& v) {
    std::vector<Point> pts;
    for (const auto& i : v) pts.push_back(i.point);
    return pts;
}

inline ParetoFront run_nsga2(Search& s) {
    const std::size_t mu = s.config().population;
    std::vector<Individual> pop = s.evaluate(s.random_population(mu), true);
    std::size_t generations = 0;
    while (!s.exhausted()) {
        auto fit = nsga2_fitness(points_of(pop));
        std::vector<RefactoringSequence> kids;
        while (kids.size() < mu) {
            const auto& a = pop[nsga2_tournament(fit, s.rng())].genotype;
            const auto& b = pop[nsga2_tournament(fit, s.rng())].genotype;
            auto [x, y] = s.vary(a, b);
            kids.push_back(std::move(x));
            if (kids.size() < mu) kids.push_back(std::move(y));
        }
        auto offspring = s.evaluate(kids);
        if (offspring.size() < kids.size()) break;
        pop.insert(pop.end(), offspring.begin(), offspring.end());
        std::vector<Individual> next;
        for (std::size_t i : nsga2_survivors(points_of(pop), mu)) next.push_back(pop[i]);
        pop = std::move(next);
        ++generations;
    }
    return s.finish(generations);
}

inline ParetoFront run_spea2(Search& s) {
    const std::size_t n = s.config().population;
    const std::size_t archive_size = s.config().archive;
    std::vector<Individual> pop = s.evaluate(s.random_population(n), true);
    std::vector<Individual> archive;
    std::size_t generations = 0;
    while (true) {
        std::vector<Individual> pool = pop;
        pool.insert(pool.end(), archive.begin(), archive.end());
        auto pts = points_of(pool);
        auto fit = spea2_fitness(pts);
        std::vector<Individual> next;
        for (std::size_t i : spea2_environmental_selection(pts, fit, archive_size)) next.push_back(pool[i]);
        archive = std::move(next);
        if (s.exhausted()) break;

        auto afit = spea2_fitness(points_of(archive));
        std::vector<RefactoringSequence> kids;
        while (kids.size() < n) {
            const auto& a = archive[spea2_tournament(afit.fitness, s.rng())].genotype;
            const auto& b = archive[spea2_tournament(afit.fitness, s.rng())].genotype;
            auto [x, y] = s.vary(a, b);
            kids.push_back(std::move(x));
            if (kids.size() < n) kids.push_back(std::move(y));
        }
        pop = s.evaluate(kids);
        if (pop.size() < kids.size()) break;
        ++generations;
    }
    return s.finish(generations);
}

inline ParetoFront run_pesa2(Search& s) {
    const std::size_t n = s.config().population;
    PesaArchive archive(s.config().archive, s.config().pesa_divisions);
    std::vector<Individual> seen;
    auto admit = [&](const std::vector<Individual>& batch) {
        for (const auto& ind : batch) {
            if (!ind.valid) continue;
            seen.push_back(ind);
            archive.insert(ind.point, seen.size() - 1, s.rng());
        }
    };
    admit(s.evaluate(s.random_population(n), true));
    std::size_t generations = 0;
    while (!s.exhausted() && archive.size() > 0) {
        std::vector<RefactoringSequence> kids;
        while (kids.size() < n) {
            const auto& a = seen[archive.ids()[archive.select(s.rng())]].genotype;
            const auto& b = seen[archive.ids()[archive.select(s.rng())]].genotype;
            auto [x, y] = s.vary(a, b);
            kids.push_back(std::move(x));
            if (kids.size() < n) kids.push_back(std::move(y));
        }
        auto offspring = s.evaluate(kids);
        admit(offspring);
        if (offspring.size() < kids.size()) break;
        ++generations;
    }
    return s.finish(generations);
}

}  // namespace detail

/// Runs one search. The initial population is always evaluated in full; the
/// budget is then checked before every evaluation. The returned front is the
/// non-dominated set of every valid individual evaluated during the run.
inline ParetoFront run(const Evaluator& ev, const SearchConfig& cfg, Rng& rng) {
    if (cfg.population < 2) throw Error("population must be at least 2");
    detail::Search s(ev, cfg, rng);
    switch (cfg.algorithm) {
        case Algorithm::Nsga2: return detail::run_nsga2(s);
        case Algorithm::Spea2: return detail::run_spea2(s);
        case Algorithm::Pesa2: return detail::run_pesa2(s);
    }
    throw Error("unknown algorithm");
}

inline ParetoFront run(const Architecture& initial, const SearchConfig& cfg) {
    Evaluator ev(initial, cfg.evaluation);
    Rng rng(cfg.seed);
    return run(ev, cfg, rng);
}

}  // namespace archopt::moea
