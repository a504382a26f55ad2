#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "smplace/cost.hpp"
#include "smplace/rng.hpp"

namespace smplace {

/// Solver knobs. The loop keeps the two best feasible individuals as the
/// only parents of the next generation and carries them forward unchanged.
/// mutation_probability defaults to 1/node_count when unset. Identical
/// config (seed included) always reproduces the identical run.
struct GaConfig {
    int population_size = 50;
    int evolutions = 5;
    double crossover_probability = 0.7;
    std::optional<double> mutation_probability;
    std::uint64_t seed = 0;
    std::optional<double> target_fitness;
};

inline void validate_ga_config(const GaConfig& config) {
    if (config.population_size < 2)
        throw std::invalid_argument("population size must be at least 2");
    if (config.evolutions < 1) throw std::invalid_argument("evolutions must be at least 1");
    if (config.crossover_probability < 0.0 || config.crossover_probability > 1.0)
        throw std::invalid_argument("crossover probability must be in [0, 1]");
    if (config.mutation_probability &&
        (*config.mutation_probability < 0.0 || *config.mutation_probability > 1.0))
        throw std::invalid_argument("mutation probability must be in [0, 1]");
}

enum class SolveStatus { Solved, NoFeasibleSolution };

/// Solver outcome. When status is NoFeasibleSolution, best_placement and
/// best_evaluation describe the lowest-fitness (infeasible) individual
/// encountered, for diagnostics only. history[i] holds the best feasible
/// fitness seen up to and including evolution i+1 (+infinity while none
/// exists); elitism makes it non-increasing.
struct SolveResult {
    Placement best_placement;
    Evaluation best_evaluation;
    SolveStatus status = SolveStatus::NoFeasibleSolution;
    int generations_run = 0;
    std::vector<double> history;
};

namespace detail {

inline void fill_random_genes(std::vector<int>& genes, const Topology& topo, int num_types,
                              Rng& rng) {
    genes.assign(static_cast<std::size_t>(topo.node_count), 0);
    for (int i = 0; i < topo.node_count; ++i)
        if (topo.is_eligible(i)) genes[i] = static_cast<int>(rng.uniform_below(num_types + 1));
}

}  // namespace detail

/// population_size placements with every eligible gene drawn uniformly from
/// [0, num_types]; ineligible nodes stay 0 and consume no draws.
inline std::vector<Placement> initialize_population(const Topology& topo, int num_types,
                                                    const GaConfig& config) {
    if (num_types < 1) throw std::invalid_argument("num_types must be at least 1");
    validate_ga_config(config);
    Rng rng(config.seed);
    std::vector<Placement> population(static_cast<std::size_t>(config.population_size));
    for (Placement& p : population)
        detail::fill_random_genes(p.genes, topo, num_types, rng);
    return population;
}

/// The two feasible individuals with the lowest fitness (ties broken by the
/// lexicographically smaller gene array). nullopt when fewer than two
/// feasible individuals exist, which tells the caller to re-randomize or
/// give up.
inline std::optional<std::pair<Placement, Placement>> select_parents(
    const std::vector<std::pair<Placement, Evaluation>>& population) {
    const std::pair<Placement, Evaluation>* first = nullptr;
    const std::pair<Placement, Evaluation>* second = nullptr;
    auto better = [](const std::pair<Placement, Evaluation>* a,
                     const std::pair<Placement, Evaluation>* b) {
        if (a->second.fitness != b->second.fitness) return a->second.fitness < b->second.fitness;
        return a->first < b->first;
    };
    for (const auto& individual : population) {
        if (!individual.second.feasible) continue;
        if (first == nullptr || better(&individual, first)) {
            second = first;
            first = &individual;
        } else if (second == nullptr || better(&individual, second)) {
            second = &individual;
        }
    }
    if (second == nullptr) return std::nullopt;
    return std::make_pair(first->first, second->first);
}

/// One-point prefix crossover: with crossover_probability, pick a cut k in
/// [1, n-1] and exchange the first k genes; otherwise the offspring are
/// plain copies. Draw order: the probability check first, then (only on
/// success) the cut point.
inline std::pair<Placement, Placement> crossover(const Placement& parent_a,
                                                 const Placement& parent_b,
                                                 const GaConfig& config, Rng& rng) {
    if (parent_a.genes.size() != parent_b.genes.size())
        throw std::invalid_argument("crossover parents must have equal length");
    const int n = static_cast<int>(parent_a.genes.size());
    if (!rng.bernoulli(config.crossover_probability) || n < 2)
        return {parent_a, parent_b};
    const int k = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n) - 1));
    Placement child_a = parent_a;
    Placement child_b = parent_b;
    for (int i = 0; i < k; ++i) {
        child_a.genes[i] = parent_b.genes[i];
        child_b.genes[i] = parent_a.genes[i];
    }
    return {std::move(child_a), std::move(child_b)};
}

/// Per-gene mutation: each gene is redrawn uniformly from [0, num_types]
/// with the configured probability. The hit check consumes one draw per
/// gene; the replacement value is drawn only for hits on eligible nodes,
/// so ineligible nodes always keep gene 0.
inline Placement mutate(const Placement& placement, const Topology& topo, int num_types,
                        const GaConfig& config, Rng& rng) {
    const double prob =
        config.mutation_probability
            ? *config.mutation_probability
            : (topo.node_count > 0 ? 1.0 / static_cast<double>(topo.node_count) : 0.0);
    Placement out = placement;
    for (std::size_t i = 0; i < out.genes.size(); ++i) {
        if (!rng.bernoulli(prob)) continue;
        if (!topo.is_eligible(static_cast<int>(i))) continue;
        out.genes[i] = static_cast<int>(rng.uniform_below(num_types + 1));
    }
    return out;
}

/// Runs the evolutionary loop: evaluate, keep the two best feasible
/// individuals as parents, refill the population with mutated crossover
/// offspring of the two (parents carried forward unchanged), repeat for
/// `evolutions` generations or until the best feasible fitness reaches
/// target_fitness. Generations with fewer than two feasible individuals are
/// replaced by a fresh random population; the best individual ever seen is
/// tracked outside the population and returned.
inline SolveResult solve(const Topology& topo, const DemandSet& demands, const CostModel& model,
                         int num_types, const GaConfig& config) {
    if (num_types < 1) throw std::invalid_argument("num_types must be at least 1");
    validate_ga_config(config);
    validate_cost_model(model, num_types);
    if (auto violations = validate(topo); !violations.empty())
        throw std::invalid_argument("invalid topology: " + violations.front().message);
    const auto flows = demands.flows();
    detail::validate_flows(topo, flows);

    const detail::Adjacency adj(topo);
    Rng rng(config.seed);

    std::vector<Placement> population(static_cast<std::size_t>(config.population_size));
    for (Placement& p : population) detail::fill_random_genes(p.genes, topo, num_types, rng);

    std::vector<Evaluation> evals(population.size());
    std::optional<std::size_t> parent_a, parent_b;  // indices of the two best feasible
    std::optional<Placement> best_feasible;
    double best_feasible_fitness = detail::kInf;
    Placement best_any;
    double best_any_fitness = detail::kInf;

    auto evaluate_population = [&] {
        parent_a.reset();
        parent_b.reset();
        auto better = [&](std::size_t a, std::size_t b) {
            if (evals[a].fitness != evals[b].fitness) return evals[a].fitness < evals[b].fitness;
            return population[a] < population[b];
        };
        for (std::size_t i = 0; i < population.size(); ++i) {
            evals[i] = detail::evaluate_light(adj, population[i].genes, flows, model, num_types);
            if (evals[i].fitness < best_any_fitness ||
                (evals[i].fitness == best_any_fitness && population[i] < best_any)) {
                best_any_fitness = evals[i].fitness;
                best_any = population[i];
            }
            if (evals[i].feasible) {
                if (evals[i].fitness < best_feasible_fitness ||
                    (evals[i].fitness == best_feasible_fitness &&
                     (!best_feasible || population[i] < *best_feasible))) {
                    best_feasible_fitness = evals[i].fitness;
                    best_feasible = population[i];
                }
                if (!parent_a || better(i, *parent_a)) {
                    parent_b = parent_a;
                    parent_a = i;
                } else if (!parent_b || better(i, *parent_b)) {
                    parent_b = i;
                }
            }
        }
    };
    auto target_reached = [&] {
        return config.target_fitness && best_feasible &&
               best_feasible_fitness <= *config.target_fitness;
    };

    SolveResult result;
    evaluate_population();
    if (!target_reached()) {
        for (int evolution = 1; evolution <= config.evolutions; ++evolution) {
            if (parent_b) {
                const Placement mother = population[*parent_a];
                const Placement father = population[*parent_b];
                std::vector<Placement> next;
                next.reserve(population.size());
                next.push_back(mother);
                next.push_back(father);
                while (next.size() < population.size()) {
                    auto [child_a, child_b] = crossover(mother, father, config, rng);
                    next.push_back(mutate(child_a, topo, num_types, config, rng));
                    if (next.size() < population.size())
                        next.push_back(mutate(child_b, topo, num_types, config, rng));
                }
                population = std::move(next);
            } else {
                // fewer than two feasible individuals: start over from fresh
                // random material, keeping the best-ever tracking intact
                for (Placement& p : population)
                    detail::fill_random_genes(p.genes, topo, num_types, rng);
            }
            evaluate_population();
            result.history.push_back(best_feasible ? best_feasible_fitness : detail::kInf);
            result.generations_run = evolution;
            if (target_reached()) break;
        }
    }

    if (best_feasible) {
        result.status = SolveStatus::Solved;
        result.best_placement = *best_feasible;
    } else {
        result.status = SolveStatus::NoFeasibleSolution;
        result.best_placement = best_any;
    }
    result.best_evaluation =
        evaluate(topo, result.best_placement, demands, model, num_types, /*with_paths=*/true);
    return result;
}

}  // namespace smplace
