#include "sfplan/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sfplan/sparsifier.hpp"

namespace sfplan {

namespace {

constexpr double kWorst = -std::numeric_limits<double>::infinity();

// Higher is better regardless of the metric's native direction.
double oriented_fitness(const LaplacianMatrix& L, const PositionSet& positions,
                        const std::vector<int>& genes, MetricKind metric) {
    if (coplanarity_check(positions, genes)) return kWorst;
    const double value = score(L, genes, metric);
    return metric_is_minimized(metric) ? -value : value;
}

double raw_value(double fitness, MetricKind metric) {
    return metric_is_minimized(metric) ? -fitness : fitness;
}

std::vector<int> unused_indices(int n, const std::vector<int>& genes) {
    std::vector<int> unused;
    unused.reserve(n - genes.size());
    for (int v = 0; v < n; ++v) {
        if (!std::binary_search(genes.begin(), genes.end(), v)) unused.push_back(v);
    }
    return unused;
}

void fill_to_size(std::vector<int>& genes, int n, int k, std::mt19937_64& rng) {
    std::sort(genes.begin(), genes.end());
    genes.erase(std::unique(genes.begin(), genes.end()), genes.end());
    while (static_cast<int>(genes.size()) < k) {
        auto unused = unused_indices(n, genes);
        std::uniform_int_distribution<std::size_t> pick(0, unused.size() - 1);
        const int chosen = unused[pick(rng)];
        genes.insert(std::upper_bound(genes.begin(), genes.end(), chosen), chosen);
    }
}

void mutate(Chromosome& c, int n, std::mt19937_64& rng) {
    auto unused = unused_indices(n, c.genes);
    if (unused.empty()) return;  // k == N, nothing to swap in
    std::uniform_int_distribution<std::size_t> gene_pick(0, c.genes.size() - 1);
    std::uniform_int_distribution<std::size_t> repl_pick(0, unused.size() - 1);
    c.genes[gene_pick(rng)] = unused[repl_pick(rng)];
    std::sort(c.genes.begin(), c.genes.end());
}

// Exchange crossover: swap a randomly sized block of genes between the two
// parents, then repair duplicates by resampling from unused indices.
std::pair<Chromosome, Chromosome> exchange_crossover(const Chromosome& a,
                                                     const Chromosome& b, int n,
                                                     std::mt19937_64& rng) {
    const int k = static_cast<int>(a.genes.size());
    if (k < 2) return {a, b};
    std::uniform_int_distribution<int> size_pick(1, k - 1);
    const int m = size_pick(rng);

    Chromosome child1 = a;
    Chromosome child2 = b;
    std::uniform_int_distribution<int> pos(0, k - 1);
    for (int t = 0; t < m; ++t) {
        std::swap(child1.genes[pos(rng)], child2.genes[pos(rng)]);
    }
    fill_to_size(child1.genes, n, k, rng);
    fill_to_size(child2.genes, n, k, rng);
    return {child1, child2};
}

struct Ranked {
    int index;
    double fitness;
};

// Sort best-first with a deterministic tie break on the gene sets.
std::vector<Ranked> rank_population(const std::vector<Chromosome>& population,
                                    const std::vector<double>& fitness) {
    std::vector<Ranked> ranked(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
        ranked[i] = {static_cast<int>(i), fitness[i]};
    }
    std::sort(ranked.begin(), ranked.end(), [&](const Ranked& x, const Ranked& y) {
        if (x.fitness != y.fitness) return x.fitness > y.fitness;
        return population[x.index].genes < population[y.index].genes;
    });
    return ranked;
}

// Roulette wheel over linear rank weights: best rank weighs P, worst 1.
int roulette_pick(const std::vector<Ranked>& ranked, std::mt19937_64& rng) {
    const std::size_t p = ranked.size();
    const double total = static_cast<double>(p) * (p + 1) / 2.0;
    std::uniform_real_distribution<double> dist(0.0, total);
    double u = dist(rng);
    for (std::size_t r = 0; r < p; ++r) {
        u -= static_cast<double>(p - r);
        if (u <= 0.0) return ranked[r].index;
    }
    return ranked.back().index;
}

}  // namespace

void GaConfig::validate() const {
    if (population_size < 2) throw invalid_input_error("population_size must be >= 2");
    if (generations < 1) throw invalid_input_error("generations must be >= 1");
    if (crossover_prob < 0.0 || crossover_prob > 1.0 || mutation_prob < 0.0 ||
        mutation_prob > 1.0) {
        throw invalid_input_error("GA probabilities must lie in [0, 1]");
    }
    if (elitism_count < 0) throw invalid_input_error("elitism_count must be >= 0");
}

Chromosome Chromosome::random(int n, int k, std::mt19937_64& rng) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    Chromosome c;
    c.genes.assign(pool.begin(), pool.begin() + k);
    std::sort(c.genes.begin(), c.genes.end());
    return c;
}

std::vector<Chromosome> ga_step(const std::vector<Chromosome>& population,
                                const LaplacianMatrix& L,
                                const PositionSet& positions, MetricKind metric,
                                const GaConfig& cfg, std::mt19937_64& rng) {
    if (population.empty()) throw invalid_input_error("population must be non-empty");
    const int n = positions.size();

    std::vector<double> fitness(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
        fitness[i] = oriented_fitness(L, positions, population[i].genes, metric);
    }
    const auto ranked = rank_population(population, fitness);

    std::vector<Chromosome> next;
    next.reserve(population.size());
    const int elites =
        std::min(cfg.elitism_count, static_cast<int>(population.size()));
    for (int e = 0; e < elites; ++e) next.push_back(population[ranked[e].index]);

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    while (next.size() < population.size()) {
        const Chromosome& p1 = population[roulette_pick(ranked, rng)];
        const Chromosome& p2 = population[roulette_pick(ranked, rng)];
        Chromosome c1 = p1;
        Chromosome c2 = p2;
        if (coin(rng) < cfg.crossover_prob) {
            std::tie(c1, c2) = exchange_crossover(p1, p2, n, rng);
        }
        if (coin(rng) < cfg.mutation_prob) mutate(c1, n, rng);
        if (coin(rng) < cfg.mutation_prob) mutate(c2, n, rng);
        next.push_back(std::move(c1));
        if (next.size() < population.size()) next.push_back(std::move(c2));
    }
    return next;
}

namespace {

// Final-answer repair: grow past coplanarity, then drop the lowest-degree
// members to get back to size k while keeping the set non-coplanar.
BaseSetSelection repair_and_truncate(const LaplacianMatrix& L,
                                     const PositionSet& positions,
                                     std::vector<int> genes, int k) {
    for (int attempt = 0; attempt < positions.size(); ++attempt) {
        BaseSetSelection grown = repair_coplanar_base(
            positions, BaseSetSelection{std::move(genes), false, 0.0});
        genes = grown.indices;
        while (static_cast<int>(genes.size()) > k) {
            int drop = -1;
            double drop_degree = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < genes.size(); ++i) {
                std::vector<int> candidate = genes;
                candidate.erase(candidate.begin() + static_cast<long>(i));
                if (coplanarity_check(positions, candidate)) continue;
                const double deg = L.entries(genes[i], genes[i]);
                if (deg < drop_degree) {
                    drop_degree = deg;
                    drop = static_cast<int>(i);
                }
            }
            if (drop < 0) break;  // any removal goes coplanar; regrow
            genes.erase(genes.begin() + drop);
        }
        if (static_cast<int>(genes.size()) == k &&
            !coplanarity_check(positions, genes)) {
            return BaseSetSelection{std::move(genes), true, 0.0};
        }
    }
    throw infeasible_selection_error(
        "no non-coplanar selection of the requested size exists");
}

void validate_instance(const LaplacianMatrix& L, const PositionSet& positions,
                       int k) {
    const int n = positions.size();
    if (L.size() != n) throw invalid_input_error("Laplacian size mismatch");
    if (k < 4 || k > n) throw invalid_input_error("k must lie in [4, N]");
}

}  // namespace

ScoredSelection solve_ga(const LaplacianMatrix& L, const PositionSet& positions,
                         int k, MetricKind metric, const GaConfig& cfg) {
    validate_instance(L, positions, k);
    cfg.validate();
    const int n = positions.size();

    if (k == n) {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        if (coplanarity_check(positions, all)) {
            throw infeasible_selection_error("all vertices are coplanar");
        }
        BaseSetSelection sel{std::move(all), true, 0.0};
        sel.score = score(L, sel, metric);
        const double value = sel.score;
        return ScoredSelection{std::move(sel), metric, value};
    }

    std::mt19937_64 rng(cfg.seed);
    std::vector<Chromosome> population;
    population.reserve(cfg.population_size);
    for (int i = 0; i < cfg.population_size; ++i) {
        population.push_back(Chromosome::random(n, k, rng));
    }

    Chromosome best;
    double best_fitness = kWorst;
    auto track_best = [&](const std::vector<Chromosome>& pop) {
        for (const auto& c : pop) {
            const double f = oriented_fitness(L, positions, c.genes, metric);
            if (f > best_fitness || (f == best_fitness && best_fitness > kWorst &&
                                     c.genes < best.genes)) {
                best_fitness = f;
                best = c;
            }
        }
    };

    track_best(population);
    for (int g = 0; g < cfg.generations; ++g) {
        population = ga_step(population, L, positions, metric, cfg, rng);
        track_best(population);
    }

    if (best_fitness > kWorst) {
        BaseSetSelection sel{best.genes, true, raw_value(best_fitness, metric)};
        return ScoredSelection{sel, metric, sel.score};
    }

    // Every chromosome was coplanar; repair the first one deterministically.
    BaseSetSelection sel = repair_and_truncate(L, positions, population.front().genes, k);
    sel.score = score(L, sel, metric);
    return ScoredSelection{sel, metric, sel.score};
}

ScoredSelection solve_exhaustive(const LaplacianMatrix& L,
                                 const PositionSet& positions, int k,
                                 MetricKind metric) {
    validate_instance(L, positions, k);
    const int n = positions.size();

    double count = 1.0;
    for (int i = 0; i < k; ++i) count *= static_cast<double>(n - i) / (i + 1);
    if (count > kEnumerationBudget) {
        throw enumeration_budget_error(
            "C(N,k) exceeds the enumeration budget; use solve_ga instead");
    }

    std::vector<int> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    bool found = false;
    std::vector<int> best_set;
    double best_fitness = kWorst;

    while (true) {
        if (!coplanarity_check(positions, comb)) {
            const double f = oriented_fitness(L, positions, comb, metric);
            if (f > best_fitness) {  // first-found wins ties: lexicographic order
                best_fitness = f;
                best_set = comb;
                found = true;
            }
        }
        // next combination in lexicographic order
        int i = k - 1;
        while (i >= 0 && comb[i] == n - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }

    if (!found) throw infeasible_selection_error("all size-k subsets are coplanar");
    BaseSetSelection sel{std::move(best_set), true, raw_value(best_fitness, metric)};
    return ScoredSelection{sel, metric, sel.score};
}

}  // namespace sfplan
