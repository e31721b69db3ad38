#pragma once

#include <memory>
#include <optional>

#include "adjsep/enumeration.hpp"
#include "adjsep/graph.hpp"
#include "adjsep/separation.hpp"

namespace adjsep {

// nodes on proper causal paths from X to Y, excluding X
NodeSet pcp(const MixedGraph& g, const NodeSet& X, const NodeSet& Y);
// descendants of pcp(X, Y)
NodeSet dpcp(const MixedGraph& g, const NodeSet& X, const NodeSet& Y);

enum class Prune { pcp, dpcp };

struct ProperBackdoorGraph {
    std::shared_ptr<const MixedGraph> graph;
    NodeSet pcp;
    NodeSet dpcp;
};

// g minus the edges X -> PCP (Prune::dpcp: minus X -> Dpcp)
ProperBackdoorGraph proper_backdoor_graph(const MixedGraph& g, const NodeSet& X, const NodeSet& Y,
                                          Prune prune = Prune::pcp);

// Adjustment tasks for one (X, Y) pair, sharing the proper back-door graph.
// Works on any graph with directed and bidirected edges; the free functions
// below check for a DAG first.
class AdjustmentContext {
public:
    AdjustmentContext(const MixedGraph& g, NodeSet X, NodeSet Y, Prune prune = Prune::pcp);

    // g must outlive the context
    const MixedGraph& graph() const { return *g_; }
    const ProperBackdoorGraph& backdoor() const { return pbd_; }
    const NodeSet& X() const { return X_; }
    const NodeSet& Y() const { return Y_; }

    bool test(const NodeSet& Z, Minimality minimality = Minimality::none) const;
    bool test(const NodeSet& Z, Minimality minimality, const NodeSet& I) const;
    // the canonical set An(X ∪ Y ∪ I) ∩ R ∖ (X ∪ Y ∪ Dpcp), before testing it
    NodeSet canonical(const NodeSet& I, const NodeSet& R) const;
    std::optional<NodeSet> find(const NodeSet& I, const NodeSet& R, Objective objective = Objective::any,
                                const CostFn* cost = nullptr) const;
    SepStream enumerate(const NodeSet& I, const NodeSet& R, bool minimal) const;

private:
    SepQuery reduced(const NodeSet& I, const NodeSet& R) const;

    const MixedGraph* g_;
    NodeSet X_, Y_;
    ProperBackdoorGraph pbd_;
};

bool test_adjustment(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& Z,
                     Minimality minimality = Minimality::none);
bool test_adjustment(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& Z,
                     Minimality minimality, const NodeSet& I);

// Throws InvalidQuery when I meets Dpcp(X, Y). Minimum objectives default to unit costs.
std::optional<NodeSet> find_adjustment(const MixedGraph& g, const SepQuery& q, Objective objective = Objective::any,
                                       const CostFn* cost = nullptr);

SepStream enumerate_adjustments(const MixedGraph& g, const SepQuery& q, bool minimal);

// Pearl's back-door criterion, each pair (X_i, Y_j) checked in g minus X_i's outgoing edges
bool pearl_backdoor_test(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& Z);
std::optional<NodeSet> pearl_backdoor_find(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& R);

// throws InvalidGraph unless g has only directed edges and no directed cycle
void require_dag(const MixedGraph& g);

}  // namespace adjsep
