#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smplace/bench.hpp"
#include "smplace/ga.hpp"
#include "smplace/io.hpp"
#include "smplace/oracle.hpp"

namespace smplace {

namespace cli_detail {

constexpr int kExitSolved = 0;
constexpr int kExitError = 1;
constexpr int kExitNoFeasible = 2;

struct CostFlags {
    std::vector<double> sm_cost{500.0};
    double penalty = 1000.0;
    int max_sm = 0;  // 0 = unlimited
    int max_unanalyzed = 0;
    bool strict_order = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--sm-cost", sm_cost,
                        "Appliance cost; give once for all types or once per type")
            ->expected(-1);
        cmd->add_option("--penalty", penalty, "Cost per unanalyzed flow");
        cmd->add_option("--max-sm", max_sm, "Max deployed appliances (0 = unlimited)");
        cmd->add_option("--max-unanalyzed", max_unanalyzed, "Max unanalyzed flows allowed");
        cmd->add_flag("--strict-order", strict_order,
                      "Forbid passing an appliance of a later type before its turn");
    }

    CostModel build(int num_types) const {
        CostModel model;
        if (sm_cost.size() == 1)
            model.sm_cost.assign(static_cast<std::size_t>(num_types), sm_cost.front());
        else if (static_cast<int>(sm_cost.size()) == num_types)
            model.sm_cost = sm_cost;
        else
            throw std::invalid_argument("--sm-cost takes 1 value or exactly one per type (" +
                                        std::to_string(num_types) + ")");
        model.penalty = penalty;
        if (max_sm < 0) throw std::invalid_argument("--max-sm must be non-negative");
        if (max_sm > 0) model.max_sm = max_sm;
        model.max_unanalyzed = max_unanalyzed;
        model.strict_order = strict_order;
        return model;
    }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void emit(const std::string& payload, const std::string& out_path, std::ostream& out) {
    if (out_path.empty() || out_path == "-") {
        out << payload;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
    file << payload;
}

}  // namespace cli_detail

/// Command-line front end; testable in-process. Returns 0 when a feasible
/// plan was produced, 2 when the instance has no feasible solution, 1 on
/// any error.
inline int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;

    CLI::App app{"Optimal placement of ordered virtual security appliances", "smplace"};
    app.require_subcommand(1);

    // --- solve ---------------------------------------------------------
    auto* solve_cmd = app.add_subcommand("solve", "Run the genetic solver on a problem file");
    std::string solve_path;
    solve_cmd->add_option("problem", solve_path, "Problem file")->required();
    GaConfig ga;
    double mutation_prob = -1.0;
    int evolutions_override = 0;
    double target_fitness = 0.0;
    bool has_target = false;
    solve_cmd->add_option("--seed", ga.seed, "Random seed");
    solve_cmd->add_option("--population", ga.population_size, "Population size");
    solve_cmd->add_option("--evolutions", evolutions_override,
                          "Override the evolution count from the problem file");
    solve_cmd->add_option("--crossover-prob", ga.crossover_probability,
                          "Crossover probability in [0,1]");
    solve_cmd->add_option("--mutation-prob", mutation_prob,
                          "Per-gene mutation probability (default 1/nodes)");
    auto* target_opt =
        solve_cmd->add_option("--target-fitness", target_fitness, "Stop early at this fitness");
    CostFlags solve_cost;
    solve_cost.attach(solve_cmd);
    std::string solve_out, solve_format = "text";
    solve_cmd->add_option("--out", solve_out, "Output path (default stdout)");
    solve_cmd->add_option("--format", solve_format, "Plan format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // --- oracle --------------------------------------------------------
    auto* oracle_cmd =
        app.add_subcommand("oracle", "Exhaustive exact solver for small instances");
    std::string oracle_path;
    oracle_cmd->add_option("problem", oracle_path, "Problem file")->required();
    std::int64_t budget = 10'000'000;
    oracle_cmd->add_option("--budget", budget, "Max placements to enumerate");
    CostFlags oracle_cost;
    oracle_cost.attach(oracle_cmd);
    std::string oracle_out, oracle_format = "text";
    oracle_cmd->add_option("--out", oracle_out, "Output path (default stdout)");
    oracle_cmd->add_option("--format", oracle_format, "Plan format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // --- gen -----------------------------------------------------------
    auto* gen_cmd = app.add_subcommand("gen", "Emit a generated problem file");
    gen_cmd->require_subcommand(1);
    auto* random_cmd = gen_cmd->add_subcommand("random", "Seeded directed Erdos-Renyi graph");
    int rnd_nodes = 10;
    double rnd_prob = 0.3;
    int rnd_wmin = 1, rnd_wmax = 10, rnd_types = 1, rnd_evolutions = 5;
    std::uint64_t rnd_seed = 1;
    std::vector<int> rnd_sources, rnd_destinations;
    random_cmd->add_option("--nodes", rnd_nodes, "Node count")->required();
    random_cmd->add_option("--edge-prob", rnd_prob, "Edge probability in (0,1]");
    random_cmd->add_option("--weight-min", rnd_wmin, "Minimum edge weight");
    random_cmd->add_option("--weight-max", rnd_wmax, "Maximum edge weight");
    random_cmd->add_option("--seed", rnd_seed, "Generator seed");
    random_cmd->add_option("--sm-types", rnd_types, "Appliance type count");
    random_cmd->add_option("--evolutions", rnd_evolutions, "Evolutions stored in the file");
    random_cmd->add_option("--sources", rnd_sources, "Source nodes (default: 0)")->expected(-1);
    random_cmd
        ->add_option("--destinations", rnd_destinations, "Destination nodes (default: last node)")
        ->expected(-1);
    std::string random_out;
    random_cmd->add_option("--out", random_out, "Output path (default stdout)");

    auto* fat_cmd = gen_cmd->add_subcommand("fat-tree", "Directed fat-tree fabric");
    int ft_k = 4;
    double ft_weight = 1.0;
    bool ft_reverse = false;
    int ft_types = 1, ft_evolutions = 5;
    fat_cmd->add_option("--k", ft_k, "Switch port count (even)")->required();
    fat_cmd->add_option("--weight", ft_weight, "Uniform edge weight");
    fat_cmd->add_flag("--reverse", ft_reverse, "Flip every edge and swap demand lists");
    fat_cmd->add_option("--sm-types", ft_types, "Appliance type count");
    fat_cmd->add_option("--evolutions", ft_evolutions, "Evolutions stored in the file");
    std::string fat_out;
    fat_cmd->add_option("--out", fat_out, "Output path (default stdout)");

    // --- bench ---------------------------------------------------------
    auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark grid, emit CSV");
    BenchConfig bench_config = BenchConfig::standard_grid();
    std::string bench_out;
    bench_cmd->add_option("--seeds", bench_config.seeds, "Seeds per grid cell");
    bench_cmd->add_option("--base-seed", bench_config.base_seed, "First seed value");
    bench_cmd->add_option("--population", bench_config.population, "GA population size");
    bench_cmd->add_option("--out", bench_out, "Output path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (solve_cmd->parsed()) {
            const ProblemFile pf = parse_problem(read_file(solve_path));
            if (pf.num_types < 1) throw std::invalid_argument("problem needs at least 1 type");
            ga.evolutions = evolutions_override > 0 ? evolutions_override : pf.evolutions;
            if (mutation_prob >= 0.0) ga.mutation_probability = mutation_prob;
            has_target = target_opt->count() > 0;
            if (has_target) ga.target_fitness = target_fitness;
            const CostModel model = solve_cost.build(pf.num_types);
            const Topology topo = pf.topology();
            const DemandSet demands = pf.demands();

            const auto start = std::chrono::steady_clock::now();
            const SolveResult result = solve(topo, demands, model, pf.num_types, ga);
            const auto stop = std::chrono::steady_clock::now();

            PlanMetadata meta;
            meta.method = "ga";
            meta.seed = ga.seed;
            meta.population = ga.population_size;
            meta.evolutions = ga.evolutions;
            meta.crossover_probability = ga.crossover_probability;
            meta.mutation_probability = ga.mutation_probability;
            meta.sm_cost = model.sm_cost;
            meta.penalty = model.penalty;
            meta.max_sm = model.max_sm;
            meta.max_unanalyzed = model.max_unanalyzed;
            meta.strict_order = model.strict_order;
            meta.target_fitness = ga.target_fitness;
            meta.generations_run = result.generations_run;
            meta.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();

            const bool solved = result.status == SolveStatus::Solved;
            const PlacementPlan plan =
                solved ? make_plan(result.best_placement, result.best_evaluation, meta)
                       : make_infeasible_plan(meta);
            emit(write_plan(plan, solve_format == "json" ? PlanFormat::Json : PlanFormat::Text),
                 solve_out, out);
            return solved ? kExitSolved : kExitNoFeasible;
        }

        if (oracle_cmd->parsed()) {
            const ProblemFile pf = parse_problem(read_file(oracle_path));
            const CostModel model = oracle_cost.build(pf.num_types);
            const Topology topo = pf.topology();
            const DemandSet demands = pf.demands();

            const auto start = std::chrono::steady_clock::now();
            const auto result = exhaustive_solve(topo, demands, model, pf.num_types, budget);
            const auto stop = std::chrono::steady_clock::now();
            if (!result)
                throw std::runtime_error("enumeration would exceed the budget of " +
                                         std::to_string(budget) + " placements");

            PlanMetadata meta;
            meta.method = "oracle";
            meta.sm_cost = model.sm_cost;
            meta.penalty = model.penalty;
            meta.max_sm = model.max_sm;
            meta.max_unanalyzed = model.max_unanalyzed;
            meta.strict_order = model.strict_order;
            meta.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();

            PlacementPlan plan;
            if (result->found()) {
                const Evaluation eval = evaluate(topo, *result->best_placement, demands, model,
                                                 pf.num_types, /*with_paths=*/true);
                plan = make_plan(*result->best_placement, eval, meta);
            } else {
                plan = make_infeasible_plan(meta);
            }
            emit(write_plan(plan, oracle_format == "json" ? PlanFormat::Json : PlanFormat::Text),
                 oracle_out, out);
            return result->found() ? kExitSolved : kExitNoFeasible;
        }

        if (random_cmd->parsed()) {
            const Topology topo = generate_random(rnd_nodes, rnd_prob, rnd_wmin, rnd_wmax, rnd_seed);
            ProblemFile pf;
            pf.node_count = topo.node_count;
            pf.num_types = rnd_types;
            pf.evolutions = rnd_evolutions;
            pf.sources = rnd_sources.empty() ? std::vector<int>{0} : rnd_sources;
            pf.destinations = rnd_destinations.empty() ? std::vector<int>{rnd_nodes - 1}
                                                       : rnd_destinations;
            pf.edges = topo.edges;
            const std::string text = write_problem(pf);
            parse_problem(text);  // reject bad flag combinations before emitting
            emit(text, random_out, out);
            return kExitSolved;
        }

        if (fat_cmd->parsed()) {
            const FatTree ft = generate_fat_tree(ft_k, ft_weight, ft_reverse);
            ProblemFile pf;
            pf.node_count = ft.topology.node_count;
            pf.num_types = ft_types;
            pf.evolutions = ft_evolutions;
            pf.sources = ft.demands.sources;
            pf.destinations = ft.demands.destinations;
            pf.edges = ft.topology.edges;
            const std::string text = write_problem(pf);
            parse_problem(text);
            emit(text, fat_out, out);
            return kExitSolved;
        }

        if (bench_cmd->parsed()) {
            emit(bench_csv(bench_run(bench_config)), bench_out, out);
            return kExitSolved;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    err << "error: no subcommand\n";
    return kExitError;
}

}  // namespace smplace
