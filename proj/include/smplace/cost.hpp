#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "smplace/routing.hpp"
#include "smplace/topology.hpp"

namespace smplace {

/// Cost structure for the global fitness: per-type appliance costs, the
/// penalty charged for every flow that cannot be analyzed, and the two
/// feasibility thresholds. max_sm unset means unlimited.
struct CostModel {
    std::vector<double> sm_cost;
    double penalty = 1000.0;
    std::optional<int> max_sm;
    int max_unanalyzed = 0;
    bool strict_order = false;

    static CostModel uniform(int num_types, double appliance_cost = 500.0,
                             double penalty = 1000.0) {
        CostModel m;
        m.sm_cost.assign(static_cast<std::size_t>(num_types), appliance_cost);
        m.penalty = penalty;
        return m;
    }

    friend bool operator==(const CostModel&, const CostModel&) = default;
};

inline void validate_cost_model(const CostModel& model, int num_types) {
    if (static_cast<int>(model.sm_cost.size()) != num_types)
        throw std::invalid_argument("cost model has " + std::to_string(model.sm_cost.size()) +
                                    " appliance costs, expected one per type (" +
                                    std::to_string(num_types) + ")");
    for (double c : model.sm_cost)
        if (!(c > 0.0)) throw std::invalid_argument("appliance costs must be positive");
    if (!(model.penalty > 0.0)) throw std::invalid_argument("penalty must be positive");
    if (model.max_sm && *model.max_sm < 1)
        throw std::invalid_argument("max appliance threshold must be at least 1");
    if (model.max_unanalyzed < 0)
        throw std::invalid_argument("max unanalyzed threshold must be non-negative");
}

/// Fitness breakdown for one placement. fitness is always the exact sum of
/// the three terms; unallocated flows contribute the penalty term only.
struct Evaluation {
    double f_sm = 0.0;
    double f_path = 0.0;
    double f_unalloc = 0.0;
    double fitness = 0.0;
    int sm_count = 0;
    int unanalyzed_count = 0;
    bool feasible = false;
    std::vector<FlowRouting> flow_results;  // empty when evaluated without paths
};

inline bool is_feasible(const Evaluation& eval, const CostModel& model) {
    if (model.max_sm && eval.sm_count > *model.max_sm) return false;
    return eval.unanalyzed_count <= model.max_unanalyzed;
}

namespace detail {

/// Fitness terms without path materialization; the hot loop for the solver
/// and the exhaustive search. Callers guarantee a validated placement.
inline Evaluation evaluate_light(const Adjacency& adj, const std::vector<int>& genes,
                                 const std::vector<Flow>& flows, const CostModel& model,
                                 int num_types) {
    Evaluation eval;
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (genes[i] > 0) {
            eval.sm_count++;
            eval.f_sm += model.sm_cost[static_cast<std::size_t>(genes[i]) - 1];
        }
    }
    for (const Flow& f : flows) {
        FlowGenes view{&genes, f.source, f.destination};
        const auto dur =
            ordered_duration(adj, view, f.source, f.destination, num_types, model.strict_order);
        if (dur)
            eval.f_path += *dur;
        else
            eval.unanalyzed_count++;
    }
    eval.f_unalloc = model.penalty * eval.unanalyzed_count;
    eval.fitness = eval.f_sm + eval.f_path + eval.f_unalloc;
    eval.feasible = is_feasible(eval, model);
    return eval;
}

inline void validate_flows(const Topology& topo, const std::vector<Flow>& flows) {
    for (const Flow& f : flows) {
        if (f.source < 0 || f.source >= topo.node_count || f.destination < 0 ||
            f.destination >= topo.node_count)
            throw std::invalid_argument("flow endpoint out of range");
        if (f.source == f.destination)
            throw std::invalid_argument("flow source and destination must differ");
    }
}

}  // namespace detail

/// Global fitness F = f_sm + f_path + f_unalloc for one placement.
/// f_path sums the ordered-path durations of allocated flows only; every
/// unallocated flow adds the penalty instead. Pass with_paths = false to
/// skip materializing per-flow node sequences (flow_results stays empty,
/// all numeric fields are identical either way).
inline Evaluation evaluate(const Topology& topo, const Placement& placement,
                           const DemandSet& demands, const CostModel& model, int num_types,
                           bool with_paths = true) {
    detail::check_topology(topo);
    validate_placement(topo, placement, num_types);
    validate_cost_model(model, num_types);
    const auto flows = demands.flows();
    detail::validate_flows(topo, flows);
    detail::Adjacency adj(topo);
    if (!with_paths) return detail::evaluate_light(adj, placement.genes, flows, model, num_types);

    Evaluation eval;
    for (std::size_t i = 0; i < placement.genes.size(); ++i) {
        if (placement.genes[i] > 0) {
            eval.sm_count++;
            eval.f_sm += model.sm_cost[static_cast<std::size_t>(placement.genes[i]) - 1];
        }
    }
    eval.flow_results.reserve(flows.size());
    for (const Flow& f : flows) {
        detail::FlowGenes view{&placement.genes, f.source, f.destination};
        auto path = detail::ordered_walk(adj, view, f.source, f.destination, num_types,
                                         model.strict_order);
        if (path)
            eval.f_path += path->duration;
        else
            eval.unanalyzed_count++;
        eval.flow_results.push_back(FlowRouting{f, std::move(path)});
    }
    eval.f_unalloc = model.penalty * eval.unanalyzed_count;
    eval.fitness = eval.f_sm + eval.f_path + eval.f_unalloc;
    eval.feasible = is_feasible(eval, model);
    return eval;
}

}  // namespace smplace
