#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smplace/cost.hpp"

namespace smplace {

/// Outcome of the exhaustive search. best_placement is empty when no
/// enumerated placement was feasible.
struct OracleResult {
    std::optional<Placement> best_placement;
    double best_fitness = detail::kInf;
    std::int64_t feasible_count = 0;
    std::int64_t searched_count = 0;

    bool found() const { return best_placement.has_value(); }
};

/// Enumerates every placement over the eligible nodes ((T+1)^eligible of
/// them, ineligible genes fixed at 0) in lexicographic gene order and keeps
/// the feasible one with minimum fitness; the lexicographically smallest
/// wins ties. Returns nullopt when the enumeration would exceed `budget`
/// evaluations. Exact but exponential: meant for verification at small
/// scale, not production solving.
inline std::optional<OracleResult> exhaustive_solve(const Topology& topo,
                                                    const DemandSet& demands,
                                                    const CostModel& model, int num_types,
                                                    std::int64_t budget = 10'000'000) {
    if (num_types < 0) throw std::invalid_argument("num_types must be non-negative");
    if (budget < 1) throw std::invalid_argument("budget must be positive");
    detail::check_topology(topo);
    validate_cost_model(model, num_types);
    const auto flows = demands.flows();
    detail::validate_flows(topo, flows);

    std::vector<int> eligible_nodes;
    for (int i = 0; i < topo.node_count; ++i)
        if (topo.is_eligible(i)) eligible_nodes.push_back(i);

    std::int64_t total = 1;
    for (std::size_t i = 0; i < eligible_nodes.size(); ++i) {
        if (total > budget / (num_types + 1)) return std::nullopt;
        total *= num_types + 1;
    }
    if (total > budget) return std::nullopt;

    detail::Adjacency adj(topo);
    OracleResult result;
    result.searched_count = total;

    std::vector<int> genes(static_cast<std::size_t>(topo.node_count), 0);
    while (true) {
        const Evaluation eval = detail::evaluate_light(adj, genes, flows, model, num_types);
        if (eval.feasible) {
            result.feasible_count++;
            if (eval.fitness < result.best_fitness) {
                result.best_fitness = eval.fitness;
                result.best_placement = Placement{genes};
            }
        }
        // lexicographic odometer over the eligible positions
        int pos = static_cast<int>(eligible_nodes.size()) - 1;
        while (pos >= 0 && genes[eligible_nodes[pos]] == num_types)
            genes[eligible_nodes[pos--]] = 0;
        if (pos < 0) break;
        genes[eligible_nodes[pos]]++;
    }
    return result;
}

}  // namespace smplace
