#pragma once

#include <optional>

#include "adjsep/adjustment.hpp"
#include "adjsep/enumeration.hpp"
#include "adjsep/graph.hpp"
#include "adjsep/separation.hpp"

namespace adjsep {

// x -> d must be an edge of M
bool edge_visible(const MixedGraph& M, NodeId x, NodeId d);

// every proper causal path from X to Y starts with a visible edge
bool test_amenability(const MixedGraph& M, const NodeSet& X, const NodeSet& Y);

// Throws InvalidGraph for undirected edges or a graph that is not a MAG.
void require_mag(const MixedGraph& M);

// Adjustment in a MAG. Without amenability there is no adjustment set: tests
// fail, finds return nullopt, streams are empty.
class MagAdjustment {
public:
    // validate=false skips the MAG check (caller guarantees it)
    MagAdjustment(const MixedGraph& M, NodeSet X, NodeSet Y, bool validate = true);

    bool amenable() const { return amenable_; }
    const AdjustmentContext& context() const { return ctx_; }

    bool test(const NodeSet& Z, Minimality minimality = Minimality::none) const;
    bool test(const NodeSet& Z, Minimality minimality, const NodeSet& I) const;
    std::optional<NodeSet> find(const NodeSet& I, const NodeSet& R, Objective objective = Objective::any,
                                const CostFn* cost = nullptr) const;
    SepStream enumerate(const NodeSet& I, const NodeSet& R, bool minimal) const;

private:
    AdjustmentContext ctx_;
    bool amenable_;
};

// inducing path between a and b relative to (Z, L): every non-endpoint
// non-collider lies in L and every collider in An({a, b} ∪ Z)
bool inducing_path_exists(const MixedGraph& G, NodeId a, NodeId b, const NodeSet& Z, const NodeSet& L);

// MAG over V ∖ L representing the DAG G with latent nodes L
MixedGraph dag_to_mag(const MixedGraph& G, const NodeSet& L);

struct CanonicalDag {
    MixedGraph dag;
    NodeSet latent;
};

// each a <-> b becomes a <- L_a_b -> b with a fresh latent node
CanonicalDag canonical_dag(const MixedGraph& M);

}  // namespace adjsep
