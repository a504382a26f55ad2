#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "smplace/cost.hpp"
#include "smplace/routing.hpp"
#include "smplace/topology.hpp"

namespace smplace {

namespace detail {

/// Numbers in the text formats: integral values print without a decimal
/// point, everything else in shortest round-trip form.
inline std::string fmt_num(double x) {
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.007199254740992e15)
        return std::to_string(static_cast<long long>(x));
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace detail

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& reason)
        : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// In-memory form of the problem input file. Line-oriented ASCII, '#' starts
/// a comment, blank lines are ignored:
///
///     <node_count> <num_types> <evolutions>
///     sources: s1 s2 ...
///     destinations: d1 d2 ...
///     <from> <to> <weight>          (one directed edge per line)
struct ProblemFile {
    int node_count = 0;
    int num_types = 0;
    int evolutions = 0;
    std::vector<int> sources;
    std::vector<int> destinations;
    std::vector<Edge> edges;

    Topology topology() const { return Topology(node_count, edges); }
    DemandSet demands() const { return DemandSet{sources, destinations}; }

    friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

inline ProblemFile parse_problem(const std::string& text) {
    ProblemFile pf;
    enum Stage { Header, Sources, Destinations, Edges } stage = Header;
    std::set<std::pair<int, int>> seen_edges;
    int line_no = 0;

    auto parse_endpoint_list = [&](std::istringstream& in, const char* what,
                                   std::vector<int>& out) {
        std::set<int> seen;
        int v = 0;
        while (in >> v) {
            if (v < 0 || v >= pf.node_count)
                throw ParseError(line_no, std::string(what) + " node " + std::to_string(v) +
                                              " out of range [0, " +
                                              std::to_string(pf.node_count) + ")");
            if (!seen.insert(v).second)
                throw ParseError(line_no, std::string("duplicate ") + what + " node " +
                                              std::to_string(v));
            out.push_back(v);
        }
        if (!in.eof()) throw ParseError(line_no, std::string(what) + " list holds a non-integer");
        if (out.empty()) throw ParseError(line_no, std::string(what) + " list is empty");
    };

    std::istringstream lines(text);
    std::string raw;
    while (std::getline(lines, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
            raw.pop_back();
        std::istringstream in(raw);
        std::string first;
        if (!(in >> first)) continue;  // blank or comment-only line

        switch (stage) {
            case Header: {
                std::istringstream header(raw);
                std::string extra;
                if (!(header >> pf.node_count >> pf.num_types >> pf.evolutions) ||
                    (header >> extra))
                    throw ParseError(line_no, "expected header '<nodes> <types> <evolutions>'");
                if (pf.node_count < 1) throw ParseError(line_no, "node count must be positive");
                if (pf.num_types < 0)
                    throw ParseError(line_no, "security machine type count must be non-negative");
                if (pf.evolutions < 1) throw ParseError(line_no, "evolutions must be positive");
                stage = Sources;
                break;
            }
            case Sources: {
                if (first != "sources:")
                    throw ParseError(line_no, "expected 'sources: s1 s2 ...'");
                parse_endpoint_list(in, "source", pf.sources);
                stage = Destinations;
                break;
            }
            case Destinations: {
                if (first != "destinations:")
                    throw ParseError(line_no, "expected 'destinations: d1 d2 ...'");
                parse_endpoint_list(in, "destination", pf.destinations);
                stage = Edges;
                break;
            }
            case Edges: {
                std::istringstream edge_in(raw);
                Edge e;
                std::string extra;
                if (!(edge_in >> e.from >> e.to >> e.weight) || (edge_in >> extra))
                    throw ParseError(line_no, "expected edge '<from> <to> <weight>'");
                if (e.from < 0 || e.from >= pf.node_count || e.to < 0 || e.to >= pf.node_count)
                    throw ParseError(line_no, "edge endpoint out of range");
                if (e.from == e.to) throw ParseError(line_no, "self-loop");
                if (!(e.weight >= 0.0)) throw ParseError(line_no, "negative weight");
                if (!seen_edges.insert({e.from, e.to}).second)
                    throw ParseError(line_no, "duplicate edge " + std::to_string(e.from) + " -> " +
                                                  std::to_string(e.to));
                pf.edges.push_back(e);
                break;
            }
        }
    }
    if (stage == Header) throw ParseError(line_no + 1, "missing header line");
    if (stage == Sources) throw ParseError(line_no + 1, "expected 'sources: s1 s2 ...'");
    if (stage == Destinations) throw ParseError(line_no + 1, "expected 'destinations: d1 d2 ...'");
    return pf;
}

inline std::string write_problem(const ProblemFile& pf) {
    std::string out;
    out += std::to_string(pf.node_count) + ' ' + std::to_string(pf.num_types) + ' ' +
           std::to_string(pf.evolutions) + '\n';
    out += "sources:";
    for (int s : pf.sources) out += ' ' + std::to_string(s);
    out += "\ndestinations:";
    for (int d : pf.destinations) out += ' ' + std::to_string(d);
    out += '\n';
    for (const Edge& e : pf.edges)
        out += std::to_string(e.from) + ' ' + std::to_string(e.to) + ' ' +
               detail::fmt_num(e.weight) + '\n';
    return out;
}

inline constexpr const char* kStatusSolved = "SOLVED";
inline constexpr const char* kStatusNoFeasible = "NO_FEASIBLE_SOLUTION";

struct PlanFlow {
    int source = 0;
    int destination = 0;
    std::optional<std::vector<int>> path;  // nullopt = unallocated

    friend bool operator==(const PlanFlow&, const PlanFlow&) = default;
};

/// Run provenance carried inside a plan so a downstream consumer can
/// reproduce it. wall_ms is the one field expected to differ between
/// otherwise identical runs.
struct PlanMetadata {
    std::string method;  // "ga" or "oracle"
    std::uint64_t seed = 0;
    int population = 0;
    int evolutions = 0;
    double crossover_probability = 0.0;
    std::optional<double> mutation_probability;
    std::vector<double> sm_cost;
    double penalty = 0.0;
    std::optional<int> max_sm;
    int max_unanalyzed = 0;
    bool strict_order = false;
    std::optional<double> target_fitness;
    int generations_run = 0;
    double wall_ms = 0.0;

    friend bool operator==(const PlanMetadata&, const PlanMetadata&) = default;
};

/// The deployment plan handed to whatever provisions the appliances:
/// appliance locations, the global cost with its breakdown, and the chosen
/// path (or UNALLOCATED) for every flow.
struct PlacementPlan {
    std::string status = kStatusSolved;
    std::vector<std::pair<int, int>> placements;  // (node, type), ascending node
    double global_cost = 0.0;
    double f_sm = 0.0;
    double f_path = 0.0;
    double f_unalloc = 0.0;
    std::vector<PlanFlow> flows;
    PlanMetadata metadata;

    friend bool operator==(const PlacementPlan&, const PlacementPlan&) = default;
};

inline PlacementPlan make_plan(const Placement& placement, const Evaluation& eval,
                               PlanMetadata metadata) {
    PlacementPlan plan;
    plan.status = kStatusSolved;
    for (std::size_t i = 0; i < placement.genes.size(); ++i)
        if (placement.genes[i] > 0)
            plan.placements.emplace_back(static_cast<int>(i), placement.genes[i]);
    plan.global_cost = eval.fitness;
    plan.f_sm = eval.f_sm;
    plan.f_path = eval.f_path;
    plan.f_unalloc = eval.f_unalloc;
    for (const FlowRouting& fr : eval.flow_results) {
        PlanFlow pf{fr.flow.source, fr.flow.destination, std::nullopt};
        if (fr.path) pf.path = fr.path->nodes;
        plan.flows.push_back(std::move(pf));
    }
    plan.metadata = std::move(metadata);
    return plan;
}

inline PlacementPlan make_infeasible_plan(PlanMetadata metadata) {
    PlacementPlan plan;
    plan.status = kStatusNoFeasible;
    plan.metadata = std::move(metadata);
    return plan;
}

enum class PlanFormat { Text, Json };

namespace detail {

inline nlohmann::json plan_to_json(const PlacementPlan& plan) {
    nlohmann::json j;
    j["status"] = plan.status;
    j["placements"] = nlohmann::json::array();
    for (const auto& [node, type] : plan.placements)
        j["placements"].push_back({{"node", node}, {"type", type}});
    j["global_cost"] = plan.global_cost;
    j["breakdown"] = {{"f_sm", plan.f_sm}, {"f_path", plan.f_path}, {"f_unalloc", plan.f_unalloc}};
    j["flows"] = nlohmann::json::array();
    for (const PlanFlow& f : plan.flows) {
        nlohmann::json jf{{"source", f.source}, {"destination", f.destination}};
        if (f.path)
            jf["path"] = *f.path;
        else
            jf["path"] = nullptr;
        j["flows"].push_back(std::move(jf));
    }
    const PlanMetadata& m = plan.metadata;
    nlohmann::json jm;
    jm["method"] = m.method;
    jm["seed"] = m.seed;
    jm["population"] = m.population;
    jm["evolutions"] = m.evolutions;
    jm["crossover_probability"] = m.crossover_probability;
    jm["mutation_probability"] =
        m.mutation_probability ? nlohmann::json(*m.mutation_probability) : nlohmann::json(nullptr);
    jm["sm_cost"] = m.sm_cost;
    jm["penalty"] = m.penalty;
    jm["max_sm"] = m.max_sm ? nlohmann::json(*m.max_sm) : nlohmann::json(nullptr);
    jm["max_unanalyzed"] = m.max_unanalyzed;
    jm["strict_order"] = m.strict_order;
    jm["target_fitness"] =
        m.target_fitness ? nlohmann::json(*m.target_fitness) : nlohmann::json(nullptr);
    jm["generations_run"] = m.generations_run;
    jm["wall_ms"] = m.wall_ms;
    j["metadata"] = std::move(jm);
    return j;
}

inline PlacementPlan plan_from_json(const nlohmann::json& j) {
    PlacementPlan plan;
    plan.status = j.at("status").get<std::string>();
    if (j.contains("placements"))
        for (const auto& jp : j.at("placements"))
            plan.placements.emplace_back(jp.at("node").get<int>(), jp.at("type").get<int>());
    plan.global_cost = j.value("global_cost", 0.0);
    if (j.contains("breakdown")) {
        plan.f_sm = j.at("breakdown").value("f_sm", 0.0);
        plan.f_path = j.at("breakdown").value("f_path", 0.0);
        plan.f_unalloc = j.at("breakdown").value("f_unalloc", 0.0);
    }
    if (j.contains("flows")) {
        for (const auto& jf : j.at("flows")) {
            PlanFlow f;
            f.source = jf.at("source").get<int>();
            f.destination = jf.at("destination").get<int>();
            if (!jf.at("path").is_null()) f.path = jf.at("path").get<std::vector<int>>();
            plan.flows.push_back(std::move(f));
        }
    }
    const nlohmann::json& jm = j.at("metadata");
    PlanMetadata& m = plan.metadata;
    m.method = jm.at("method").get<std::string>();
    m.seed = jm.at("seed").get<std::uint64_t>();
    m.population = jm.at("population").get<int>();
    m.evolutions = jm.at("evolutions").get<int>();
    m.crossover_probability = jm.at("crossover_probability").get<double>();
    if (!jm.at("mutation_probability").is_null())
        m.mutation_probability = jm.at("mutation_probability").get<double>();
    m.sm_cost = jm.at("sm_cost").get<std::vector<double>>();
    m.penalty = jm.at("penalty").get<double>();
    if (!jm.at("max_sm").is_null()) m.max_sm = jm.at("max_sm").get<int>();
    m.max_unanalyzed = jm.at("max_unanalyzed").get<int>();
    m.strict_order = jm.at("strict_order").get<bool>();
    if (!jm.at("target_fitness").is_null())
        m.target_fitness = jm.at("target_fitness").get<double>();
    m.generations_run = jm.at("generations_run").get<int>();
    m.wall_ms = jm.at("wall_ms").get<double>();
    return plan;
}

}  // namespace detail

/// Serializes a plan. The text form is the hand-off artifact:
///
///     SM <node> <type>                     (one per deployed appliance)
///     COST <global_cost>
///     BREAKDOWN <f_sm> <f_path> <f_unalloc>
///     FLOW <src> <dst> <n0-n1-...-nk | UNALLOCATED>
///
/// An infeasible outcome is the single line 'STATUS NO_FEASIBLE_SOLUTION'.
/// The json form mirrors every field including metadata and is byte-stable
/// for identical plans.
inline std::string write_plan(const PlacementPlan& plan, PlanFormat format) {
    if (format == PlanFormat::Json) return detail::plan_to_json(plan).dump(2) + "\n";
    if (plan.status != kStatusSolved) return std::string("STATUS ") + plan.status + "\n";
    std::string out;
    for (const auto& [node, type] : plan.placements)
        out += "SM " + std::to_string(node) + ' ' + std::to_string(type) + '\n';
    out += "COST " + detail::fmt_num(plan.global_cost) + '\n';
    out += "BREAKDOWN " + detail::fmt_num(plan.f_sm) + ' ' + detail::fmt_num(plan.f_path) + ' ' +
           detail::fmt_num(plan.f_unalloc) + '\n';
    for (const PlanFlow& f : plan.flows) {
        out += "FLOW " + std::to_string(f.source) + ' ' + std::to_string(f.destination) + ' ';
        if (f.path) {
            for (std::size_t i = 0; i < f.path->size(); ++i) {
                if (i > 0) out += '-';
                out += std::to_string((*f.path)[i]);
            }
        } else {
            out += "UNALLOCATED";
        }
        out += '\n';
    }
    return out;
}

inline PlacementPlan parse_plan_json(const std::string& text) {
    return detail::plan_from_json(nlohmann::json::parse(text));
}

}  // namespace smplace
