#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "adjsep/errors.hpp"
#include "adjsep/node_set.hpp"

namespace adjsep {

enum class Mark : std::uint8_t { tail, arrow };

struct Edge {
    NodeId a;
    NodeId b;
    Mark at_a;
    Mark at_b;

    bool directed() const { return at_a != at_b; }
    bool bidirected() const { return at_a == Mark::arrow && at_b == Mark::arrow; }
    bool undirected() const { return at_a == Mark::tail && at_b == Mark::tail; }
};

// One entry of a node's incidence list. `near` is the mark at this node,
// `far` the mark at `other`.
struct Incidence {
    NodeId other;
    Mark near;
    Mark far;

    bool is_parent() const { return near == Mark::arrow && far == Mark::tail; }
    bool is_child() const { return near == Mark::tail && far == Mark::arrow; }
    bool is_spouse() const { return near == Mark::arrow && far == Mark::arrow; }
    bool is_undirected() const { return near == Mark::tail && far == Mark::tail; }
};

class GraphBuilder;

// Immutable mixed graph. Nodes are dense indices in insertion order; names are
// only used at the boundary.
class MixedGraph {
public:
    MixedGraph() = default;

    std::size_t node_count() const { return names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& name(NodeId v) const { return names_[v]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<NodeId> find(std::string_view name) const;
    NodeId id(std::string_view name) const;

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Incidence>& incident(NodeId v) const { return adj_[v]; }

    bool adjacent(NodeId u, NodeId v) const;
    // edge between u and v with a == u, if any
    std::optional<Edge> edge_between(NodeId u, NodeId v) const;

    NodeSet empty_set() const { return NodeSet(node_count()); }
    NodeSet all_nodes() const { return NodeSet::full(node_count()); }

    NodeSet set_of(std::span<const std::string> names) const;
    NodeSet set_of(std::initializer_list<std::string_view> names) const;
    // member names sorted lexicographically
    std::vector<std::string> sorted_names(const NodeSet& s) const;

    NodeSet parents(NodeId v) const;
    NodeSet children(NodeId v) const;
    NodeSet spouses(NodeId v) const;
    NodeSet neighbors(NodeId v) const;
    NodeSet parents(const NodeSet& s) const;
    NodeSet children(const NodeSet& s) const;

    bool has_bidirected() const { return bidirected_count_ > 0; }
    bool has_undirected() const { return undirected_count_ > 0; }

    bool operator==(const MixedGraph& o) const;

private:
    friend class GraphBuilder;

    static std::uint64_t key(NodeId u, NodeId v) {
        if (u > v) std::swap(u, v);
        return (std::uint64_t{u} << 32) | v;
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> adj_;
    std::unordered_map<std::uint64_t, std::uint32_t> edge_index_;
    std::size_t bidirected_count_ = 0;
    std::size_t undirected_count_ = 0;
};

class GraphBuilder {
public:
    GraphBuilder() = default;

    // adds a node, or returns the existing id for a known name
    NodeId node(std::string_view name);
    NodeId add_node(std::string_view name);
    bool has_node(std::string_view name) const { return g_.index_.count(std::string(name)) != 0; }
    std::size_t node_count() const { return g_.node_count(); }

    void add_edge(NodeId a, NodeId b, Mark at_a, Mark at_b);
    void directed(std::string_view a, std::string_view b) { add_edge(node(a), node(b), Mark::tail, Mark::arrow); }
    void bidirected(std::string_view a, std::string_view b) { add_edge(node(a), node(b), Mark::arrow, Mark::arrow); }
    void undirected(std::string_view a, std::string_view b) { add_edge(node(a), node(b), Mark::tail, Mark::tail); }
    bool adjacent(NodeId a, NodeId b) const { return g_.adjacent(a, b); }

    MixedGraph build() &&;
    MixedGraph build() const&;

private:
    MixedGraph g_;
};

enum class GraphClass { dag, ag, mag, undirected };

enum class ViolationKind {
    directed_cycle,
    almost_directed_cycle,
    undirected_neighborhood,
    non_maximal_pair,
    wrong_edge_kind,
};

struct Violation {
    ViolationKind kind;
    std::vector<std::string> nodes;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const MixedGraph& g, GraphClass cls);

enum class Relation { ancestors, descendants, anteriors };

NodeSet closure(const MixedGraph& g, const NodeSet& seed, Relation rel);
inline NodeSet ancestors(const MixedGraph& g, const NodeSet& s) { return closure(g, s, Relation::ancestors); }
inline NodeSet descendants(const MixedGraph& g, const NodeSet& s) { return closure(g, s, Relation::descendants); }
inline NodeSet anteriors(const MixedGraph& g, const NodeSet& s) { return closure(g, s, Relation::anteriors); }

MixedGraph transform(const MixedGraph& g, const NodeSet& remove_into, const NodeSet& remove_out);
MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& keep);

// Undirected graph on the same nodes; u,v adjacent iff collider connected.
MixedGraph augment(const MixedGraph& g);

MixedGraph reduce_constraints(const MixedGraph& ugraph, const NodeSet& anchors_x, const NodeSet& anchors_y,
                              const NodeSet& I, const NodeSet& unrestricted);

// Kahn order, smallest index first among ready nodes; nullopt on a directed cycle.
std::optional<std::vector<NodeId>> topological_order(const MixedGraph& g);

// Unweighted skeleton distances from `source`; unreachable nodes get SIZE_MAX.
std::vector<std::size_t> skeleton_distances(const MixedGraph& g, NodeId source);

// checks that every id of `s` lies inside the graph and throws UnknownNode otherwise
void require_nodes(const MixedGraph& g, const NodeSet& s);

}  // namespace adjsep
