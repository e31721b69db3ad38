#include "adjsep/adjustment.hpp"

#include "internal.hpp"

namespace adjsep {

namespace {

void check_pair(const MixedGraph& g, const NodeSet& X, const NodeSet& Y) {
    require_nodes(g, X);
    require_nodes(g, Y);
    if (X.empty() || Y.empty()) throw InvalidQuery("X and Y must be nonempty");
    detail::require_disjoint(X, Y, "X and Y");
}

}  // namespace

void require_dag(const MixedGraph& g) {
    for (const auto& e : g.edges())
        if (!e.directed()) throw InvalidGraph("expected a DAG: edge " + g.name(e.a) + " / " + g.name(e.b) + " is not directed");
    if (!topological_order(g)) throw InvalidGraph("expected a DAG: graph has a directed cycle");
}

NodeSet pcp(const MixedGraph& g, const NodeSet& X, const NodeSet& Y) {
    check_pair(g, X, Y);
    // descendants of X once edges into X are gone
    NodeSet de = X;
    std::vector<NodeId> stack(X.begin(), X.end());
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (const auto& inc : g.incident(v)) {
            if (!inc.is_child() || X.contains(inc.other) || de.contains(inc.other)) continue;
            de.insert(inc.other);
            stack.push_back(inc.other);
        }
    }
    // ancestors of Y once edges out of X are gone
    NodeSet an = Y;
    stack.assign(Y.begin(), Y.end());
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (const auto& inc : g.incident(v)) {
            if (!inc.is_parent() || X.contains(inc.other) || an.contains(inc.other)) continue;
            an.insert(inc.other);
            stack.push_back(inc.other);
        }
    }
    return (de - X) & an;
}

NodeSet dpcp(const MixedGraph& g, const NodeSet& X, const NodeSet& Y) { return descendants(g, pcp(g, X, Y)); }

ProperBackdoorGraph proper_backdoor_graph(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, Prune prune) {
    ProperBackdoorGraph out;
    out.pcp = pcp(g, X, Y);
    out.dpcp = descendants(g, out.pcp);
    const NodeSet& cut = prune == Prune::pcp ? out.pcp : out.dpcp;
    GraphBuilder b;
    for (const auto& n : g.names()) b.add_node(n);
    for (const auto& e : g.edges()) {
        bool drop = (e.at_a == Mark::tail && e.at_b == Mark::arrow && X.contains(e.a) && cut.contains(e.b)) ||
                    (e.at_b == Mark::tail && e.at_a == Mark::arrow && X.contains(e.b) && cut.contains(e.a));
        if (!drop) b.add_edge(e.a, e.b, e.at_a, e.at_b);
    }
    out.graph = std::make_shared<const MixedGraph>(std::move(b).build());
    return out;
}

AdjustmentContext::AdjustmentContext(const MixedGraph& g, NodeSet X, NodeSet Y, Prune prune)
    : g_(&g), X_(std::move(X)), Y_(std::move(Y)) {
    pbd_ = proper_backdoor_graph(g, X_, Y_, prune);
}

bool AdjustmentContext::test(const NodeSet& Z, Minimality minimality) const {
    return test(Z, minimality, g_->empty_set());
}

bool AdjustmentContext::test(const NodeSet& Z, Minimality minimality, const NodeSet& I) const {
    require_nodes(*g_, Z);
    require_nodes(*g_, I);
    detail::require_disjoint(Z, X_ | Y_, "Z and X ∪ Y");
    if (Z.intersects(pbd_.dpcp)) return false;
    const MixedGraph& h = *pbd_.graph;
    switch (minimality) {
        case Minimality::none: return !detail::m_connected(h, X_, Y_, Z);
        case Minimality::i_minimal: {
            if (!I.is_subset_of(Z)) throw InvalidQuery("I must be a subset of Z");
            NodeSet r = h.all_nodes() - (X_ | Y_ | pbd_.dpcp);
            return test_min_sep(h, X_, Y_, Z, I, r);
        }
        case Minimality::strong_minimal: {
            NodeSet r = h.all_nodes() - (X_ | Y_ | pbd_.dpcp);
            return test_min_sep(h, X_, Y_, Z, h.empty_set(), r);
        }
    }
    return false;
}

SepQuery AdjustmentContext::reduced(const NodeSet& I, const NodeSet& R) const {
    SepQuery q = normalize(*g_, {X_, Y_, I, R});
    if (q.I.intersects(pbd_.dpcp))
        throw InvalidQuery("I contains a descendant of a proper causal path node: " +
                           g_->sorted_names(q.I & pbd_.dpcp).front());
    q.R -= pbd_.dpcp;
    return q;
}

NodeSet AdjustmentContext::canonical(const NodeSet& I, const NodeSet& R) const {
    SepQuery q = reduced(I, R);
    return anteriors(*g_, X_ | Y_ | q.I) & q.R;
}

std::optional<NodeSet> AdjustmentContext::find(const NodeSet& I, const NodeSet& R, Objective objective,
                                               const CostFn* cost) const {
    SepQuery q = reduced(I, R);
    const MixedGraph& h = *pbd_.graph;
    switch (objective) {
        case Objective::any: {
            NodeSet z = anteriors(*g_, X_ | Y_ | q.I) & q.R;
            if (detail::m_connected(h, X_, Y_, z)) return std::nullopt;
            return z;
        }
        case Objective::i_minimal: return find_min_sep(h, q);
        case Objective::i_minimum:
        case Objective::strong_minimum: {
            CostFn c(g_->node_count());
            for (NodeId v : q.R) {
                if (cost && cost->size() != g_->node_count())
                    throw InvalidQuery("cost function size does not match the graph");
                c.set(v, cost ? (*cost)[v] : CostFn::scale);
            }
            return find_min_cost_sep(h, q, c, objective);
        }
    }
    return std::nullopt;
}

SepStream AdjustmentContext::enumerate(const NodeSet& I, const NodeSet& R, bool minimal) const {
    SepQuery q = reduced(I, R);
    return minimal ? list_min_sep(pbd_.graph, q) : list_sep(pbd_.graph, q);
}

bool test_adjustment(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& Z,
                     Minimality minimality) {
    return test_adjustment(g, X, Y, Z, minimality, g.empty_set());
}

bool test_adjustment(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& Z,
                     Minimality minimality, const NodeSet& I) {
    require_dag(g);
    check_pair(g, X, Y);
    return AdjustmentContext(g, X, Y).test(Z, minimality, I);
}

std::optional<NodeSet> find_adjustment(const MixedGraph& g, const SepQuery& q, Objective objective,
                                       const CostFn* cost) {
    require_dag(g);
    check_pair(g, q.X, q.Y);
    return AdjustmentContext(g, q.X, q.Y).find(q.I, q.R, objective, cost);
}

SepStream enumerate_adjustments(const MixedGraph& g, const SepQuery& q, bool minimal) {
    require_dag(g);
    check_pair(g, q.X, q.Y);
    return AdjustmentContext(g, q.X, q.Y).enumerate(q.I, q.R, minimal);
}

bool pearl_backdoor_test(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& Z) {
    check_pair(g, X, Y);
    require_nodes(g, Z);
    detail::require_disjoint(Z, X | Y, "Z and X ∪ Y");
    if (Z.intersects(descendants(g, X))) return false;
    for (NodeId xi : X) {
        NodeSet single(g.node_count(), {xi});
        MixedGraph h = transform(g, g.empty_set(), single);
        if (detail::m_connected(h, single, Y, Z)) return false;
    }
    return true;
}

std::optional<NodeSet> pearl_backdoor_find(const MixedGraph& g, const NodeSet& X, const NodeSet& Y,
                                           const NodeSet& R) {
    check_pair(g, X, Y);
    require_nodes(g, R);
    NodeSet z = (anteriors(g, X | Y) & R) - (X | Y) - descendants(g, X);
    if (!pearl_backdoor_test(g, X, Y, z)) return std::nullopt;
    return z;
}

}  // namespace adjsep
