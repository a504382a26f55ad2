#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "smplace/ga.hpp"
#include "smplace/io.hpp"
#include "smplace/oracle.hpp"
#include "smplace/topology.hpp"

namespace smplace {

/// One grid cell: a topology family at a fixed type count, run once per seed.
struct BenchCase {
    enum class Kind { Random, FatTree };

    Kind kind = Kind::Random;
    std::string label;  // CSV topology column
    int n = 0;          // node count (random) or fat-tree node count
    int num_types = 1;
    int evolutions = 5;
    bool reverse = false;           // fat-tree direction
    double edge_probability = 0.3;  // random-graph parameters
    int weight_min = 1;
    int weight_max = 10;
};

struct BenchConfig {
    int seeds = 10;
    std::uint64_t base_seed = 1;
    int population = 50;
    double appliance_cost = 500.0;
    double penalty = 1000.0;
    std::vector<BenchCase> cases;

    /// The standard grid: random graphs of 10, 20 and 50 nodes for 1..5
    /// appliance types at 5 evolutions (10 for the 10-node 5-type cell),
    /// plus the k=4 fat tree in both directions.
    static BenchConfig standard_grid() {
        BenchConfig config;
        for (int n : {10, 20, 50}) {
            for (int t = 1; t <= 5; ++t) {
                BenchCase c;
                c.kind = BenchCase::Kind::Random;
                c.label = "random";
                c.n = n;
                c.num_types = t;
                c.evolutions = (n == 10 && t == 5) ? 10 : 5;
                config.cases.push_back(c);
            }
        }
        for (bool reverse : {false, true}) {
            for (int t = 1; t <= 5; ++t) {
                BenchCase c;
                c.kind = BenchCase::Kind::FatTree;
                c.label = reverse ? "fat-tree-reverse" : "fat-tree";
                c.n = 36;
                c.num_types = t;
                c.evolutions = 5;
                c.reverse = reverse;
                config.cases.push_back(c);
            }
        }
        return config;
    }
};

/// One run. gen_of_best and generations_run are in-memory extras for
/// analysis; the CSV report carries the columns named in bench_csv.
struct BenchRow {
    std::string topology;
    int n = 0;
    int num_types = 0;
    int evolutions = 0;
    std::uint64_t seed = 0;
    std::string status;
    double best_fitness = 0.0;
    double wall_ms = 0.0;
    int generations_run = 0;
    int gen_of_best = 0;  // first 1-based evolution whose best-ever fitness is final
};

/// Runs the solver once and folds the outcome into a CSV-ready row.
inline BenchRow run_bench_case(const Topology& topo, const DemandSet& demands,
                               const CostModel& model, int num_types, const GaConfig& config,
                               const std::string& label, int evolutions_label) {
    const auto start = std::chrono::steady_clock::now();
    const SolveResult result = solve(topo, demands, model, num_types, config);
    const auto stop = std::chrono::steady_clock::now();

    BenchRow row;
    row.topology = label;
    row.n = topo.node_count;
    row.num_types = num_types;
    row.evolutions = evolutions_label;
    row.seed = config.seed;
    row.status = result.status == SolveStatus::Solved ? kStatusSolved : kStatusNoFeasible;
    row.best_fitness = result.best_evaluation.fitness;
    row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    row.generations_run = result.generations_run;
    if (result.status == SolveStatus::Solved) {
        row.gen_of_best = static_cast<int>(result.history.size()) + 1;
        for (std::size_t i = 0; i < result.history.size(); ++i) {
            if (result.history[i] == result.best_evaluation.fitness) {
                row.gen_of_best = static_cast<int>(i) + 1;
                break;
            }
        }
        if (result.history.empty()) row.gen_of_best = 0;  // target hit by the initial population
    } else {
        row.gen_of_best = result.generations_run + 1;  // never attained
    }
    return row;
}

inline std::vector<BenchRow> bench_run(const BenchConfig& config) {
    std::vector<BenchRow> rows;
    for (const BenchCase& c : config.cases) {
        for (int s = 0; s < config.seeds; ++s) {
            const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(s);
            Topology topo;
            DemandSet demands;
            if (c.kind == BenchCase::Kind::Random) {
                topo = generate_random(c.n, c.edge_probability, c.weight_min, c.weight_max, seed);
                demands.sources = {0, 1};
                demands.destinations = {c.n - 2, c.n - 1};
            } else {
                FatTree ft = generate_fat_tree(4, 1.0, c.reverse);
                topo = std::move(ft.topology);
                demands = std::move(ft.demands);
            }
            const CostModel model =
                CostModel::uniform(c.num_types, config.appliance_cost, config.penalty);
            GaConfig ga;
            ga.population_size = config.population;
            ga.evolutions = c.evolutions;
            ga.seed = seed;
            rows.push_back(
                run_bench_case(topo, demands, model, c.num_types, ga, c.label, c.evolutions));
        }
    }
    return rows;
}

/// CSV report, one row per run:
/// topology,n,T,evolutions,seed,status,best_fitness,wall_ms
/// best_fitness is NA for runs without a feasible solution.
inline std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "topology,n,T,evolutions,seed,status,best_fitness,wall_ms\n";
    for (const BenchRow& r : rows) {
        out += r.topology + ',' + std::to_string(r.n) + ',' + std::to_string(r.num_types) + ',' +
               std::to_string(r.evolutions) + ',' + std::to_string(r.seed) + ',' + r.status + ',';
        out += r.status == kStatusSolved ? detail::fmt_num(r.best_fitness) : std::string("NA");
        out += ',' + detail::fmt_num(r.wall_ms) + '\n';
    }
    return out;
}

}  // namespace smplace
