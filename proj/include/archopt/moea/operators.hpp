#pragma once

#include <random>
#include <utility>

#include "../refactoring.hpp"

namespace archopt::moea {

using Rng = std::mt19937_64;

struct VariationSettings {
    double crossover_probability = 0.8;
    double mutation_probability = -1.0;  // per gene; negative means 1/L
    SamplingOptions sampling;

    double gene_rate(std::size_t length) const {
        if (mutation_probability >= 0.0) return mutation_probability;
        return length ? 1.0 / static_cast<double>(length) : 0.0;
    }
};

/// Children a[0..cut)+b[cut..L) and b[0..cut)+a[cut..L), unrepaired.
inline std::pair<RefactoringSequence, RefactoringSequence> one_point_crossover(const RefactoringSequence& a,
                                                                              const RefactoringSequence& b,
                                                                              std::size_t cut) {
    if (a.actions.size() != b.actions.size()) throw Error("crossover: parents differ in length");
    RefactoringSequence x, y;
    for (std::size_t i = 0; i < a.actions.size(); ++i) {
        x.actions.push_back(i < cut ? a.actions[i] : b.actions[i]);
        y.actions.push_back(i < cut ? b.actions[i] : a.actions[i]);
    }
    return {std::move(x), std::move(y)};
}

/// Single-point crossover at a uniform cut in [1, L-1], then repair.
template <class R>
std::pair<RefactoringSequence, RefactoringSequence> crossover(const Architecture& arch, const RefactoringSequence& a,
                                                              const RefactoringSequence& b, R& rng,
                                                              const SamplingOptions& opt = {}) {
    const std::size_t len = a.actions.size();
    if (len != b.actions.size()) throw Error("crossover: parents differ in length");
    if (len < 2) return {repair(arch, a, rng, opt), repair(arch, b, rng, opt)};
    std::size_t cut = std::uniform_int_distribution<std::size_t>(1, len - 1)(rng);
    auto [x, y] = one_point_crossover(a, b, cut);
    x = repair(arch, std::move(x), rng, opt);
    y = repair(arch, std::move(y), rng, opt);
    return {std::move(x), std::move(y)};
}

/// Replaces each gene with probability `rate` by an action sampled for the
/// architecture reached by the preceding genes; genes made infeasible by
/// earlier changes are repaired in the same pass.
template <class R>
RefactoringSequence mutate(const Architecture& arch, RefactoringSequence seq, R& rng, double rate,
                           const SamplingOptions& opt = {}) {
    std::bernoulli_distribution pick(rate);
    Architecture cur = arch;
    for (std::size_t i = 0; i < seq.actions.size(); ++i) {
        auto r = pick(rng) ? detail::Applied{} : detail::try_apply(cur, seq.actions[i], i);
        if (!r.arch) {
            seq.actions[i] = random_action(cur, rng, i, opt);
            r = detail::try_apply(cur, seq.actions[i], i);
        }
        cur = std::move(*r.arch);
    }
    return seq;
}

template <class R>
RefactoringSequence mutate(const Architecture& arch, RefactoringSequence seq, R& rng,
                           const VariationSettings& vs = {}) {
    double rate = vs.gene_rate(seq.actions.size());
    return mutate(arch, std::move(seq), rng, rate, vs.sampling);
}

/// Crossover with the configured probability, then mutation of both children.
template <class R>
std::pair<RefactoringSequence, RefactoringSequence> vary(const Architecture& arch, const RefactoringSequence& a,
                                                         const RefactoringSequence& b, R& rng,
                                                         const VariationSettings& vs) {
    std::pair<RefactoringSequence, RefactoringSequence> kids{a, b};
    if (std::bernoulli_distribution(vs.crossover_probability)(rng))
        kids = crossover(arch, a, b, rng, vs.sampling);
    kids.first = mutate(arch, std::move(kids.first), rng, vs);
    kids.second = mutate(arch, std::move(kids.second), rng, vs);
    return kids;
}

}  // namespace archopt::moea
