#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smplace/rng.hpp"

namespace smplace {

/// Directed link with a traversal duration in milliseconds.
struct Edge {
    int from = 0;
    int to = 0;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed weighted graph. Nodes are dense indices in [0, node_count).
/// `eligible[i]` marks whether node i may host a security appliance.
/// Instances are treated as immutable once built; nothing in the library
/// mutates a Topology after construction.
struct Topology {
    int node_count = 0;
    std::vector<Edge> edges;
    std::vector<char> eligible;

    Topology() = default;
    Topology(int n, std::vector<Edge> e)
        : node_count(n), edges(std::move(e)), eligible(static_cast<std::size_t>(n), 1) {}
    Topology(int n, std::vector<Edge> e, std::vector<char> elig)
        : node_count(n), edges(std::move(e)), eligible(std::move(elig)) {}

    bool is_eligible(int node) const {
        return node >= 0 && node < static_cast<int>(eligible.size()) && eligible[node] != 0;
    }
};

/// One source->destination traffic demand.
struct Flow {
    int source = 0;
    int destination = 0;

    friend bool operator==(const Flow&, const Flow&) = default;
    friend auto operator<=>(const Flow&, const Flow&) = default;
};

/// Demand lists; the flow set is the full sources x destinations cross
/// product, ordered by (source, destination).
struct DemandSet {
    std::vector<int> sources;
    std::vector<int> destinations;

    std::vector<Flow> flows() const {
        std::vector<Flow> out;
        out.reserve(sources.size() * destinations.size());
        for (int s : sources)
            for (int d : destinations) out.push_back(Flow{s, d});
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t flow_count() const { return sources.size() * destinations.size(); }

    friend bool operator==(const DemandSet&, const DemandSet&) = default;
};

enum class ViolationKind {
    EndpointOutOfRange,
    SelfLoop,
    NegativeWeight,
    DuplicateEdge,
    EligibilitySizeMismatch,
};

struct Violation {
    ViolationKind kind;
    std::string message;
};

/// Report-style validation: returns every violation found, empty means valid.
inline std::vector<Violation> validate(const Topology& topo) {
    std::vector<Violation> out;
    auto add = [&out](ViolationKind kind, std::string msg) {
        out.push_back(Violation{kind, std::move(msg)});
    };
    if (static_cast<int>(topo.eligible.size()) != topo.node_count) {
        add(ViolationKind::EligibilitySizeMismatch,
            "eligibility vector size " + std::to_string(topo.eligible.size()) +
                " does not match node count " + std::to_string(topo.node_count));
    }
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < topo.edges.size(); ++i) {
        const Edge& e = topo.edges[i];
        const std::string at = "edge #" + std::to_string(i) + " (" + std::to_string(e.from) +
                               " -> " + std::to_string(e.to) + ")";
        if (e.from < 0 || e.from >= topo.node_count || e.to < 0 || e.to >= topo.node_count)
            add(ViolationKind::EndpointOutOfRange, at + ": endpoint out of range");
        if (e.from == e.to) add(ViolationKind::SelfLoop, at + ": self-loop");
        if (e.weight < 0.0 || std::isnan(e.weight))
            add(ViolationKind::NegativeWeight, at + ": negative weight");
        if (!seen.insert({e.from, e.to}).second)
            add(ViolationKind::DuplicateEdge, at + ": duplicate edge");
    }
    return out;
}

/// Seeded directed Erdos-Renyi graph: every ordered pair (u,v), u != v,
/// receives an edge with probability `edge_probability`; weights are drawn
/// uniformly from the integers in [weight_min, weight_max]. Byte-identical
/// output for identical arguments.
inline Topology generate_random(int n, double edge_probability, double weight_min,
                                double weight_max, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate_random: need at least 2 nodes");
    if (!(edge_probability > 0.0) || edge_probability > 1.0)
        throw std::invalid_argument("generate_random: edge probability must be in (0, 1]");
    const double lo = std::ceil(weight_min);
    const double hi = std::floor(weight_max);
    if (weight_min > weight_max || lo > hi || weight_min < 0.0)
        throw std::invalid_argument("generate_random: weight range holds no usable integer");

    Rng rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            if (!rng.bernoulli(edge_probability)) continue;
            const int w = rng.uniform_int(static_cast<int>(lo), static_cast<int>(hi));
            edges.push_back(Edge{u, v, static_cast<double>(w)});
        }
    }
    return Topology(n, std::move(edges));
}

/// Fat-tree topology plus the cross-half demand set used with it.
struct FatTree {
    Topology topology;
    DemandSet demands;
};

/// Three-layer fat-tree built from k-port switches, numbered hosts first:
/// hosts [0, k^3/4), edge switches, aggregation switches, then core switches
/// in ascending blocks. Every physical link is emitted as one directed edge
/// oriented along the source-half -> destination-half flow direction, so the
/// graph is a DAG from the first-half hosts (sources) to the second-half
/// hosts (destinations). `reverse` flips every edge and swaps the demand
/// lists, giving the mirrored run of the same fabric.
inline FatTree generate_fat_tree(int k, double weight, bool reverse) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("generate_fat_tree: k must be even and >= 2");
    if (!(weight > 0.0)) throw std::invalid_argument("generate_fat_tree: weight must be positive");

    const int half = k / 2;
    const int hosts = k * k * k / 4;
    const int hosts_per_pod = hosts / k;   // (k/2)^2
    const int edge_base = hosts;
    const int agg_base = edge_base + k * half;
    const int core_base = agg_base + k * half;
    const int node_count = core_base + half * half;

    auto edge_sw = [&](int pod, int i) { return edge_base + pod * half + i; };
    auto agg_sw = [&](int pod, int i) { return agg_base + pod * half + i; };
    auto core_sw = [&](int i, int j) { return core_base + i * half + j; };

    // Pods [0, k/2) hold the source-half hosts, pods [k/2, k) the
    // destination-half hosts. Links in source pods point upward
    // (host -> edge -> agg -> core), links in destination pods downward.
    std::vector<Edge> edges;
    auto emit = [&](int up_node, int down_node, bool source_side) {
        if (source_side)
            edges.push_back(Edge{up_node, down_node, weight});
        else
            edges.push_back(Edge{down_node, up_node, weight});
    };
    for (int pod = 0; pod < k; ++pod) {
        const bool source_side = pod < half;
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j)
                emit(pod * hosts_per_pod + i * half + j, edge_sw(pod, i), source_side);
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j) emit(edge_sw(pod, i), agg_sw(pod, j), source_side);
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j) emit(agg_sw(pod, i), core_sw(i, j), source_side);
    }

    DemandSet demands;
    for (int h = 0; h < hosts / 2; ++h) demands.sources.push_back(h);
    for (int h = hosts / 2; h < hosts; ++h) demands.destinations.push_back(h);

    if (reverse) {
        for (Edge& e : edges) std::swap(e.from, e.to);
        std::swap(demands.sources, demands.destinations);
    }
    return FatTree{Topology(node_count, std::move(edges)), std::move(demands)};
}

}  // namespace smplace
