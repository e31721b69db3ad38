#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "adjsep/graph.hpp"
#include "adjsep/separation.hpp"

namespace adjsep::detail {

// true iff some node of y is m-connected to some node of x given z (walk-based
// reachability, colliders exactly the nodes of z)
bool m_connected(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z);

// Compact undirected graph over a subset of a MixedGraph's nodes.
struct UGraph {
    std::vector<NodeId> global;       // local -> graph id
    std::vector<std::int32_t> local;  // graph id -> local, -1 if absent
    std::vector<std::vector<std::uint32_t>> adj;

    std::size_t size() const { return global.size(); }
    bool has(NodeId v) const { return local[v] >= 0; }
    void finalize();  // sort and dedupe adjacency lists
};

// augmented graph of g restricted to `keep`
UGraph augmented(const MixedGraph& g, const NodeSet& keep);
UGraph from_undirected(const MixedGraph& ug);

// Graph ids reachable from `sources` while skipping `removed`. Nodes of `stop`
// are recorded when reached but not expanded; sources are expanded regardless.
NodeSet reach(const UGraph& u, std::size_t universe, const NodeSet& sources, const NodeSet& stop,
              const NodeSet& removed);

// Minimum-cost vertex cut between the node sets source and sink of u, nodes of
// `removed` deleted first. Edmonds-Karp on the vertex-split network.
std::optional<NodeSet> min_cut(const UGraph& u, std::size_t universe, const NodeSet& source, const NodeSet& sink,
                               const std::function<Cost(NodeId)>& cost, const NodeSet* removed = nullptr);

void require_disjoint(const NodeSet& a, const NodeSet& b, const char* what);

}  // namespace adjsep::detail
