#include <gtest/gtest.h>

#include <cmath>

#include "smplace/ga.hpp"
#include "smplace/oracle.hpp"
#include "test_support.hpp"

using namespace smplace;
using smplace::test::chain_topology;
using smplace::test::make_placement;

namespace {

std::pair<Placement, Evaluation> individual(std::vector<int> genes, double fitness,
                                            bool feasible) {
    Evaluation eval;
    eval.fitness = fitness;
    eval.feasible = feasible;
    return {Placement{std::move(genes)}, eval};
}

}  // namespace

TEST(InitializePopulation, GenesStayInRangeAndRespectEligibility) {
    Topology topo = chain_topology(10);
    topo.eligible[3] = 0;
    GaConfig config;
    config.seed = 1;
    const auto population = initialize_population(topo, 2, config);
    ASSERT_EQ(population.size(), 50u);
    bool saw_nonzero = false;
    for (const Placement& p : population) {
        ASSERT_EQ(p.genes.size(), 10u);
        EXPECT_EQ(p.genes[3], 0);
        for (int g : p.genes) {
            EXPECT_GE(g, 0);
            EXPECT_LE(g, 2);
            saw_nonzero |= g != 0;
        }
    }
    EXPECT_TRUE(saw_nonzero);
}

TEST(InitializePopulation, DeterministicUnderSeed) {
    const Topology topo = chain_topology(10);
    GaConfig config;
    config.seed = 42;
    EXPECT_EQ(initialize_population(topo, 1, config), initialize_population(topo, 1, config));
    config.seed = 43;
    EXPECT_NE(initialize_population(topo, 1, config),
              initialize_population(topo, 1, GaConfig{.seed = 42}));
}

TEST(InitializePopulation, AllIneligibleYieldsAllZero) {
    Topology topo = chain_topology(5);
    topo.eligible.assign(5, 0);
    for (const Placement& p : initialize_population(topo, 3, GaConfig{}))
        EXPECT_EQ(p, make_placement(5));
}

TEST(SelectParents, PicksTwoBestFeasible) {
    const std::vector<std::pair<Placement, Evaluation>> population{
        individual({1, 0}, 884.0, true),
        individual({0, 1}, 902.0, true),
        individual({1, 1}, 3000.0, false),
        individual({0, 2}, 890.0, true),
    };
    const auto parents = select_parents(population);
    ASSERT_TRUE(parents.has_value());
    EXPECT_EQ(parents->first.genes, (std::vector<int>{1, 0}));
    EXPECT_EQ(parents->second.genes, (std::vector<int>{0, 2}));
}

TEST(SelectParents, AllInfeasibleSignalsCaller) {
    const std::vector<std::pair<Placement, Evaluation>> population{
        individual({1, 0}, 10.0, false),
        individual({0, 1}, 20.0, false),
    };
    EXPECT_FALSE(select_parents(population).has_value());
}

TEST(SelectParents, FitnessTiesBreakLexicographically) {
    const std::vector<std::pair<Placement, Evaluation>> population{
        individual({1, 0, 0}, 500.0, true),
        individual({0, 0, 1}, 500.0, true),
        individual({0, 1, 0}, 500.0, true),
    };
    const auto parents = select_parents(population);
    ASSERT_TRUE(parents.has_value());
    EXPECT_EQ(parents->first.genes, (std::vector<int>{0, 0, 1}));
    EXPECT_EQ(parents->second.genes, (std::vector<int>{0, 1, 0}));
}

TEST(Crossover, ZeroProbabilityCopiesParents) {
    GaConfig config;
    config.crossover_probability = 0.0;
    Rng rng(5);
    const Placement a = make_placement(3, {{0, 1}});
    const Placement b = make_placement(3, {{2, 1}});
    const auto [c1, c2] = crossover(a, b, config, rng);
    EXPECT_EQ(c1, a);
    EXPECT_EQ(c2, b);
}

TEST(Crossover, TwoGeneParentsForceCutAtOne) {
    GaConfig config;
    config.crossover_probability = 1.0;
    Rng rng(5);
    const auto [c1, c2] = crossover(Placement{{1, 0}}, Placement{{0, 1}}, config, rng);
    EXPECT_EQ(c1.genes, (std::vector<int>{0, 0}));
    EXPECT_EQ(c2.genes, (std::vector<int>{1, 1}));
}

TEST(Crossover, ExchangesAPrefixStrictlyInsideTheChromosome) {
    GaConfig config;
    config.crossover_probability = 1.0;
    const Placement a{{1, 1, 1, 1}};
    const Placement b{{0, 0, 0, 0}};
    bool saw_k1 = false, saw_k3 = false;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        Rng rng(seed);
        const auto [c1, c2] = crossover(a, b, config, rng);
        // c1 must be 0^k 1^(n-k) for some k in [1, n-1]
        int k = 0;
        while (k < 4 && c1.genes[k] == 0) ++k;
        EXPECT_GE(k, 1);
        EXPECT_LE(k, 3);
        for (int i = k; i < 4; ++i) EXPECT_EQ(c1.genes[i], 1);
        for (int i = 0; i < 4; ++i) EXPECT_EQ(c2.genes[i], 1 - c1.genes[i]);
        saw_k1 |= k == 1;
        saw_k3 |= k == 3;
    }
    EXPECT_TRUE(saw_k1);
    EXPECT_TRUE(saw_k3);
}

TEST(Crossover, IdenticalParentsAreFixedPoint) {
    GaConfig config;
    config.crossover_probability = 1.0;
    Rng rng(9);
    const Placement a = make_placement(5, {{1, 2}, {3, 1}});
    const auto [c1, c2] = crossover(a, a, config, rng);
    EXPECT_EQ(c1, a);
    EXPECT_EQ(c2, a);
}

TEST(Mutate, ZeroProbabilityIsIdentity) {
    GaConfig config;
    config.mutation_probability = 0.0;
    Rng rng(3);
    const Placement p = make_placement(6, {{2, 1}});
    EXPECT_EQ(mutate(p, chain_topology(6), 1, config, rng), p);
}

TEST(Mutate, FullProbabilityRedrawsEveryEligibleGene) {
    Topology topo = chain_topology(8);
    topo.eligible[0] = 0;
    GaConfig config;
    config.mutation_probability = 1.0;
    Rng rng(3);
    const Placement p = make_placement(8, {{0, 0}, {1, 1}});
    const Placement mutated = mutate(p, topo, 1, config, rng);
    EXPECT_EQ(mutated.genes[0], 0);  // ineligible stays empty
    for (int g : mutated.genes) {
        EXPECT_GE(g, 0);
        EXPECT_LE(g, 1);
    }
    Rng rng_again(3);
    EXPECT_EQ(mutate(p, topo, 1, config, rng_again), mutated);
}

TEST(Solve, TwoTypesOnThreeNodeChainIsInfeasible) {
    GaConfig config;
    config.population_size = 20;
    config.evolutions = 10;
    config.seed = 1;
    const SolveResult result = solve(chain_topology(3), DemandSet{{0}, {2}},
                                     CostModel::uniform(2), 2, config);
    EXPECT_EQ(result.status, SolveStatus::NoFeasibleSolution);
    for (double h : result.history) EXPECT_TRUE(std::isinf(h));
}

TEST(Solve, DeterministicUnderIdenticalConfig) {
    const Topology topo = generate_random(10, 0.3, 1, 10, 5);
    const DemandSet demands{{0, 1}, {8, 9}};
    const CostModel model = CostModel::uniform(1);
    GaConfig config;
    config.population_size = 30;
    config.evolutions = 8;
    config.seed = 77;
    const SolveResult a = solve(topo, demands, model, 1, config);
    const SolveResult b = solve(topo, demands, model, 1, config);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.best_placement, b.best_placement);
    EXPECT_EQ(a.best_evaluation.fitness, b.best_evaluation.fitness);
    EXPECT_EQ(a.history, b.history);
    EXPECT_EQ(a.generations_run, b.generations_run);
}

TEST(Solve, BestEverFitnessIsNonIncreasing) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Topology topo = generate_random(12, 0.3, 1, 10, seed);
        const DemandSet demands{{0, 1}, {10, 11}};
        GaConfig config;
        config.population_size = 24;
        config.evolutions = 12;
        config.seed = seed;
        const SolveResult result = solve(topo, demands, CostModel::uniform(1), 1, config);
        EXPECT_EQ(result.history.size(), static_cast<std::size_t>(result.generations_run));
        for (std::size_t i = 1; i < result.history.size(); ++i)
            EXPECT_LE(result.history[i], result.history[i - 1]);
    }
}

TEST(Solve, SolvedResultReEvaluatesExactly) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Topology topo = generate_random(9, 0.35, 1, 10, seed + 20);
        const DemandSet demands{{0}, {8}};
        const CostModel model = CostModel::uniform(1);
        GaConfig config;
        config.population_size = 20;
        config.evolutions = 6;
        config.seed = seed;
        const SolveResult result = solve(topo, demands, model, 1, config);
        if (result.status != SolveStatus::Solved) continue;
        EXPECT_TRUE(result.best_evaluation.feasible);
        const Evaluation again = evaluate(topo, result.best_placement, demands, model, 1);
        EXPECT_EQ(again.fitness, result.best_evaluation.fitness);
        if (!result.history.empty()) EXPECT_EQ(result.history.back(), again.fitness);
    }
}

TEST(Solve, TargetFitnessStopsTheRunEarly) {
    const FatTree ft = generate_fat_tree(4, 1.0, false);
    GaConfig config;
    config.seed = 1;
    config.evolutions = 5;
    config.target_fitness = 1e9;  // any feasible individual qualifies
    const SolveResult result = solve(ft.topology, ft.demands, CostModel::uniform(1), 1, config);
    EXPECT_EQ(result.status, SolveStatus::Solved);
    EXPECT_EQ(result.generations_run, 0);
    EXPECT_TRUE(result.history.empty());
}

TEST(Solve, RecoversViaRerandomizationWhenFeasibilityIsRare) {
    // only gene pattern [_,1,2,_] is feasible; with a tiny population most
    // early generations lack two feasible parents and must re-randomize
    const Topology topo = chain_topology(4);
    const DemandSet demands{{0}, {3}};
    GaConfig config;
    config.population_size = 4;
    config.evolutions = 120;
    config.seed = 1;
    const SolveResult result = solve(topo, demands, CostModel::uniform(2), 2, config);
    ASSERT_EQ(result.status, SolveStatus::Solved);
    EXPECT_EQ(result.best_placement.genes[1], 1);
    EXPECT_EQ(result.best_placement.genes[2], 2);
    ASSERT_FALSE(result.history.empty());
    EXPECT_TRUE(std::isinf(result.history.front()));   // started with no feasible material
    EXPECT_FALSE(std::isinf(result.history.back()));   // and recovered
}

TEST(Solve, MatchesOracleOnSmallInstances) {
    int solved = 0, matched = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Topology topo = generate_random(6, 0.4, 1, 10, seed + 300);
        const DemandSet demands{{0}, {5}};
        const CostModel model = CostModel::uniform(1);
        const auto oracle = exhaustive_solve(topo, demands, model, 1);
        ASSERT_TRUE(oracle.has_value());
        GaConfig config;
        config.population_size = 64;
        config.evolutions = 20;
        config.seed = seed;
        const SolveResult ga = solve(topo, demands, model, 1, config);
        if (!oracle->found()) {
            EXPECT_EQ(ga.status, SolveStatus::NoFeasibleSolution);
            continue;
        }
        ++solved;
        if (ga.status == SolveStatus::Solved &&
            ga.best_evaluation.fitness == oracle->best_fitness)
            ++matched;
    }
    EXPECT_GE(matched * 10, solved * 9) << matched << "/" << solved;
}

TEST(Solve, RejectsBadConfig) {
    const Topology topo = chain_topology(3);
    const DemandSet demands{{0}, {2}};
    const CostModel model = CostModel::uniform(1);
    GaConfig config;
    config.population_size = 1;
    EXPECT_THROW(solve(topo, demands, model, 1, config), std::invalid_argument);
    config = GaConfig{};
    config.crossover_probability = 1.5;
    EXPECT_THROW(solve(topo, demands, model, 1, config), std::invalid_argument);
    config = GaConfig{};
    EXPECT_THROW(solve(topo, demands, model, 0, config), std::invalid_argument);
    Topology broken = chain_topology(3);
    broken.edges.push_back(Edge{0, 0, 1.0});
    EXPECT_THROW(solve(broken, demands, model, 1, config), std::invalid_argument);
}
