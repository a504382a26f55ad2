#pragma once

#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smplace/topology.hpp"

namespace smplace {

/// Appliance placement: genes[i] is the appliance type at node i, 0 = none.
struct Placement {
    std::vector<int> genes;

    int appliance_count() const {
        int n = 0;
        for (int g : genes) n += g != 0;
        return n;
    }

    friend bool operator==(const Placement&, const Placement&) = default;
    friend auto operator<=>(const Placement&, const Placement&) = default;
};

/// A directed walk from source to destination together with the appliance
/// progress level after each node. The level starts at 0, advances by one
/// whenever the walk enters an intermediate node carrying the next required
/// type, and must end at the full type count. Appliances placed on the
/// source or destination node of a flow do not take part in that flow's
/// ordering; the traversal requirement is satisfied strictly between the
/// endpoints.
struct OrderedPath {
    std::vector<int> nodes;
    double duration = 0.0;
    std::vector<int> level_trace;

    friend bool operator==(const OrderedPath&, const OrderedPath&) = default;
};

inline void validate_placement(const Topology& topo, const Placement& placement, int num_types) {
    if (static_cast<int>(placement.genes.size()) != topo.node_count)
        throw std::invalid_argument("placement length " + std::to_string(placement.genes.size()) +
                                    " does not match node count " +
                                    std::to_string(topo.node_count));
    for (int i = 0; i < topo.node_count; ++i) {
        const int g = placement.genes[i];
        if (g < 0 || g > num_types)
            throw std::invalid_argument("gene at node " + std::to_string(i) + " is " +
                                        std::to_string(g) + ", outside [0, " +
                                        std::to_string(num_types) + "]");
        if (g > 0 && !topo.is_eligible(i))
            throw std::invalid_argument("node " + std::to_string(i) +
                                        " hosts an appliance but is not eligible");
    }
}

namespace detail {

/// Structural guard for public entry points: edge endpoints must index real
/// nodes before an adjacency can be built.
inline void check_topology(const Topology& topo) {
    if (topo.node_count < 0) throw std::invalid_argument("negative node count");
    for (const Edge& e : topo.edges)
        if (e.from < 0 || e.from >= topo.node_count || e.to < 0 || e.to >= topo.node_count)
            throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.from) +
                                        " -> " + std::to_string(e.to));
}

/// CSR adjacency with arcs sorted by (from, to); the fixed neighbor order
/// makes every search in this library deterministic.
struct Adjacency {
    int node_count = 0;
    std::vector<int> offsets;                    // node_count + 1
    std::vector<std::pair<int, double>> arcs;    // (to, weight)

    explicit Adjacency(const Topology& topo) : node_count(topo.node_count) {
        std::vector<Edge> sorted = topo.edges;
        std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
            return a.from != b.from ? a.from < b.from : a.to < b.to;
        });
        offsets.assign(static_cast<std::size_t>(node_count) + 1, 0);
        arcs.reserve(sorted.size());
        for (const Edge& e : sorted) {
            offsets[static_cast<std::size_t>(e.from) + 1]++;
            arcs.emplace_back(e.to, e.weight);
        }
        for (int v = 0; v < node_count; ++v) offsets[v + 1] += offsets[v];
    }
};

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Level transition on entering a node whose effective gene is `gene`.
/// Returns the new level, or -1 when strict ordering forbids the arrival.
inline int step_level(int level, int gene, int num_types, bool strict_order) {
    if (strict_order && gene > level + 1) return -1;
    if (level < num_types && gene == level + 1) return level + 1;
    return level;
}

/// Per-flow gene view: the endpoints of the flow are masked to 0.
struct FlowGenes {
    const std::vector<int>* genes;
    int source;
    int destination;

    int operator()(int node) const {
        if (node == source || node == destination) return 0;
        return (*genes)[node];
    }
};

/// Minimum duration of a qualifying walk, or nullopt when none exists.
/// Dijkstra over (node, level) states; levels never decrease, arriving at a
/// node typed level+1 advances, the destination is accepted at full level.
inline std::optional<double> ordered_duration(const Adjacency& adj, const FlowGenes& genes,
                                              int source, int destination, int num_types,
                                              bool strict_order) {
    const int n = adj.node_count;
    const int levels = num_types + 1;
    const auto state_of = [n](int node, int level) { return level * n + node; };

    std::vector<double> dist(static_cast<std::size_t>(n) * levels, kInf);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;

    const int start = state_of(source, 0);
    const int accept = state_of(destination, num_types);
    dist[start] = 0.0;
    pq.push({0.0, start});
    while (!pq.empty()) {
        const auto [du, state] = pq.top();
        pq.pop();
        if (du > dist[state]) continue;
        if (state == accept) return du;
        const int u = state % n;
        const int level = state / n;
        for (int a = adj.offsets[u]; a < adj.offsets[u + 1]; ++a) {
            const auto [v, w] = adj.arcs[a];
            const int next_level = step_level(level, genes(v), num_types, strict_order);
            if (next_level < 0) continue;
            const int next = state_of(v, next_level);
            if (du + w < dist[next]) {
                dist[next] = du + w;
                pq.push({dist[next], next});
            }
        }
    }
    return std::nullopt;
}

/// Full search keeping the node sequence per state so that equal-duration
/// ties resolve to the lexicographically smallest walk. Used for reporting;
/// the duration it returns always matches ordered_duration. The lexicographic
/// guarantee assumes positive edge weights (zero-weight cycles could hide a
/// smaller walk behind an already-settled state).
inline std::optional<OrderedPath> ordered_walk(const Adjacency& adj, const FlowGenes& genes,
                                               int source, int destination, int num_types,
                                               bool strict_order) {
    const int n = adj.node_count;
    const int levels = num_types + 1;
    const auto state_of = [n](int node, int level) { return level * n + node; };

    struct Label {
        double dur;
        std::vector<int> nodes;
        int state;
    };
    struct Worse {
        bool operator()(const Label& a, const Label& b) const {
            if (a.dur != b.dur) return a.dur > b.dur;
            return a.nodes > b.nodes;
        }
    };

    std::vector<double> dist(static_cast<std::size_t>(n) * levels, kInf);
    std::vector<std::vector<int>> best(static_cast<std::size_t>(n) * levels);
    std::vector<char> settled(static_cast<std::size_t>(n) * levels, 0);
    std::priority_queue<Label, std::vector<Label>, Worse> pq;

    const int start = state_of(source, 0);
    const int accept = state_of(destination, num_types);
    dist[start] = 0.0;
    best[start] = {source};
    pq.push(Label{0.0, {source}, start});
    while (!pq.empty()) {
        Label top = pq.top();
        pq.pop();
        if (settled[top.state]) continue;
        if (top.dur != dist[top.state] || top.nodes != best[top.state]) continue;  // stale
        settled[top.state] = 1;
        if (top.state == accept) {
            OrderedPath path;
            path.nodes = std::move(top.nodes);
            path.duration = top.dur;
            path.level_trace.reserve(path.nodes.size());
            int level = 0;
            for (std::size_t i = 0; i < path.nodes.size(); ++i) {
                if (i > 0) level = step_level(level, genes(path.nodes[i]), num_types, strict_order);
                path.level_trace.push_back(level);
            }
            return path;
        }
        const int u = top.state % n;
        const int level = top.state / n;
        for (int a = adj.offsets[u]; a < adj.offsets[u + 1]; ++a) {
            const auto [v, w] = adj.arcs[a];
            const int next_level = step_level(level, genes(v), num_types, strict_order);
            if (next_level < 0) continue;
            const int next = state_of(v, next_level);
            if (settled[next]) continue;
            const double nd = top.dur + w;
            if (nd > dist[next]) continue;
            std::vector<int> cand = top.nodes;
            cand.push_back(v);
            if (nd < dist[next] || cand < best[next]) {
                dist[next] = nd;
                best[next] = std::move(cand);
                pq.push(Label{nd, best[next], next});
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Minimum-duration directed path from `source` to `destination` that
/// traverses appliance types 1..num_types in order, each at least once, at
/// intermediate nodes. Returns nullopt when the flow cannot be allocated.
/// With strict_order, entering an intermediate node whose type is further
/// ahead than the next required one is forbidden instead of merely
/// non-advancing. num_types = 0 degenerates to a plain shortest path. Ties
/// between equal-duration walks resolve to the lexicographically smallest
/// node sequence.
inline std::optional<OrderedPath> ordered_shortest_path(const Topology& topo,
                                                        const Placement& placement, int source,
                                                        int destination, int num_types,
                                                        bool strict_order = false) {
    if (num_types < 0) throw std::invalid_argument("num_types must be non-negative");
    if (source < 0 || source >= topo.node_count || destination < 0 ||
        destination >= topo.node_count)
        throw std::invalid_argument("flow endpoint out of range");
    if (source == destination)
        throw std::invalid_argument("flow source and destination must differ");
    detail::check_topology(topo);
    validate_placement(topo, placement, num_types);
    detail::Adjacency adj(topo);
    detail::FlowGenes genes{&placement.genes, source, destination};
    return detail::ordered_walk(adj, genes, source, destination, num_types, strict_order);
}

struct FlowRouting {
    Flow flow;
    std::optional<OrderedPath> path;
};

/// Routes every demand flow independently; one result per flow, in the
/// demand set's (source, destination) order.
inline std::vector<FlowRouting> all_flow_paths(const Topology& topo, const Placement& placement,
                                               const DemandSet& demands, int num_types,
                                               bool strict_order = false) {
    if (num_types < 0) throw std::invalid_argument("num_types must be non-negative");
    detail::check_topology(topo);
    validate_placement(topo, placement, num_types);
    detail::Adjacency adj(topo);
    std::vector<FlowRouting> out;
    const auto flows = demands.flows();
    out.reserve(flows.size());
    for (const Flow& f : flows) {
        if (f.source < 0 || f.source >= topo.node_count || f.destination < 0 ||
            f.destination >= topo.node_count)
            throw std::invalid_argument("flow endpoint out of range");
        if (f.source == f.destination)
            throw std::invalid_argument("flow source and destination must differ");
        detail::FlowGenes genes{&placement.genes, f.source, f.destination};
        out.push_back(FlowRouting{
            f, detail::ordered_walk(adj, genes, f.source, f.destination, num_types, strict_order)});
    }
    return out;
}

}  // namespace smplace
