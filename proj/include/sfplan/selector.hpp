#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sfplan/metrics.hpp"

namespace sfplan {

struct GaConfig {
    int population_size = 200;
    int generations = 60;
    double crossover_prob = 0.4;
    double mutation_prob = 0.4;
    std::uint64_t seed = 0;
    int elitism_count = 2;

    /// Settings used for the full-scale selection runs: population 6000,
    /// 100 generations, exchange crossover and mutation both at 0.4.
    static GaConfig paper_defaults() {
        GaConfig cfg;
        cfg.population_size = 6000;
        cfg.generations = 100;
        return cfg;
    }

    void validate() const;
};

/// Fixed-size index subset of {0..N-1}, kept sorted and duplicate-free.
struct Chromosome {
    std::vector<int> genes;

    static Chromosome random(int n, int k, std::mt19937_64& rng);
};

/// One GA generation: rank-normalized roulette parent selection, exchange
/// crossover, single-gene mutation, and elitism. Coplanar chromosomes score
/// a worst-fitness sentinel; they are never repaired mid-evolution.
std::vector<Chromosome> ga_step(const std::vector<Chromosome>& population,
                                const LaplacianMatrix& L,
                                const PositionSet& positions, MetricKind metric,
                                const GaConfig& cfg, std::mt19937_64& rng);

/// Genetic-algorithm solve of the base-set selection problem. Returns the
/// best selection found that satisfies the size and non-coplanarity
/// constraints; deterministic for a fixed cfg.seed. Throws
/// infeasible_selection_error when no feasible selection exists.
ScoredSelection solve_ga(const LaplacianMatrix& L, const PositionSet& positions,
                         int k, MetricKind metric, const GaConfig& cfg);

inline constexpr double kEnumerationBudget = 1e7;

/// Exhaustive enumeration over all C(N,k) subsets; the small-instance
/// oracle. Ties break toward the lexicographically smallest index set.
/// Throws enumeration_budget_error when C(N,k) exceeds the budget.
ScoredSelection solve_exhaustive(const LaplacianMatrix& L,
                                 const PositionSet& positions, int k,
                                 MetricKind metric);

}  // namespace sfplan
