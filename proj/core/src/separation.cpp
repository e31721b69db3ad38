#include "adjsep/separation.hpp"

#include <cmath>

#include "internal.hpp"

namespace adjsep {

namespace detail {

bool m_connected(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
    // state bits per node: 1 = entered through a tail, 2 = entered through an arrowhead
    std::vector<std::uint8_t> seen(g.node_count(), 0);
    std::vector<std::pair<NodeId, bool>> stack;
    for (NodeId v : x) {
        seen[v] |= 1;
        stack.emplace_back(v, false);
    }
    while (!stack.empty()) {
        auto [v, via_arrow] = stack.back();
        stack.pop_back();
        const bool in_z = z.contains(v);
        if (!via_arrow && in_z) continue;
        for (const auto& inc : g.incident(v)) {
            if (via_arrow && (inc.near == Mark::arrow) != in_z) continue;
            const bool arrow = inc.far == Mark::arrow;
            const std::uint8_t bit = arrow ? 2 : 1;
            if (seen[inc.other] & bit) continue;
            seen[inc.other] |= bit;
            if (y.contains(inc.other)) return true;
            stack.emplace_back(inc.other, arrow);
        }
    }
    return false;
}

}  // namespace detail

SepQuery make_query(const MixedGraph& g, NodeSet X, NodeSet Y) {
    return {std::move(X), std::move(Y), g.empty_set(), g.all_nodes()};
}

SepQuery normalize(const MixedGraph& g, const SepQuery& q) {
    for (const auto* s : {&q.X, &q.Y, &q.I, &q.R}) require_nodes(g, *s);
    if (q.X.empty()) throw InvalidQuery("X must be nonempty");
    if (q.Y.empty()) throw InvalidQuery("Y must be nonempty");
    detail::require_disjoint(q.X, q.Y, "X and Y");
    SepQuery out = q;
    out.R -= q.X | q.Y;
    detail::require_disjoint(q.I, q.X | q.Y, "I and X ∪ Y");
    if (!q.I.is_subset_of(out.R)) throw InvalidQuery("I must be a subset of R");
    return out;
}

CostFn CostFn::unit(const NodeSet& R) {
    CostFn c(R.universe(), infinite);
    for (NodeId v : R) c.w_[v] = scale;
    return c;
}

Cost CostFn::from_double(double w) {
    if (std::isinf(w) && w > 0) return infinite;
    if (!(w >= 0) || !std::isfinite(w)) throw InvalidQuery("cost weights must be finite and nonnegative");
    double scaled = std::round(w * static_cast<double>(scale));
    if (scaled >= static_cast<double>(finite_limit)) throw InvalidQuery("cost weight too large");
    return static_cast<Cost>(scaled);
}

void CostFn::set(NodeId v, Cost c) {
    if (c < 0) throw InvalidQuery("negative cost");
    if (c != infinite && c >= finite_limit) throw InvalidQuery("cost weight too large");
    w_[v] = c;
}

Cost CostFn::total(const NodeSet& s) const {
    Cost sum = 0;
    for (NodeId v : s) {
        if (w_[v] == infinite) return infinite;
        sum += w_[v];
        if (sum >= finite_limit) throw InvalidQuery("cost total overflows the fixed-point range");
    }
    return sum;
}

bool test_sep(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& Z) {
    for (const auto* s : {&X, &Y, &Z}) require_nodes(g, *s);
    detail::require_disjoint(X, Y, "X and Y");
    detail::require_disjoint(Z, X | Y, "Z and X ∪ Y");
    return !detail::m_connected(g, X, Y, Z);
}

std::optional<NodeSet> find_sep(const MixedGraph& g, const SepQuery& query) {
    SepQuery q = normalize(g, query);
    NodeSet z = anteriors(g, q.X | q.Y | q.I) & q.R;
    if (detail::m_connected(g, q.X, q.Y, z)) return std::nullopt;
    return z;
}

bool test_min_sep(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& Z, const NodeSet& M,
                  const NodeSet& R, Strategy strategy) {
    for (const auto* s : {&X, &Y, &Z, &M, &R}) require_nodes(g, *s);
    if (X.empty() || Y.empty()) throw InvalidQuery("X and Y must be nonempty");
    detail::require_disjoint(X, Y, "X and Y");
    detail::require_disjoint(Z, X | Y, "Z and X ∪ Y");
    if (!M.is_subset_of(Z)) throw InvalidQuery("M must be a subset of Z");

    const NodeSet r = R - (X | Y);
    const NodeSet ant = anteriors(g, X | Y | M);
    if (!Z.is_subset_of(ant) || !Z.is_subset_of(r)) return false;
    if (detail::m_connected(g, X, Y, Z)) return false;

    if (strategy == Strategy::sparse) {
        NodeSet w = Z;
        for (NodeId u : Z - M) {
            w.erase(u);
            if (!detail::m_connected(g, X, Y, w)) return false;
            w.insert(u);
        }
        return true;
    }

    const auto u = detail::augmented(g, ant);
    const NodeSet free = Z - M;
    const NodeSet from_x = detail::reach(u, g.node_count(), X, Z, M);
    if (!free.is_subset_of(from_x)) return false;
    const NodeSet from_y = detail::reach(u, g.node_count(), Y, Z, M);
    return free.is_subset_of(from_y);
}

std::optional<NodeSet> find_min_sep(const MixedGraph& g, const SepQuery& query, Strategy strategy) {
    SepQuery q = normalize(g, query);
    const NodeSet ant = anteriors(g, q.X | q.Y | q.I);
    NodeSet cand = ant & q.R;
    if (detail::m_connected(g, q.X, q.Y, cand)) return std::nullopt;

    if (strategy == Strategy::sparse) {
        for (NodeId u : cand - q.I) {
            cand.erase(u);
            if (detail::m_connected(g, q.X, q.Y, cand)) cand.insert(u);
        }
        return cand;
    }

    const auto u = detail::augmented(g, ant);
    const NodeSet free = cand - q.I;
    const NodeSet near_x = detail::reach(u, g.node_count(), q.X, free, q.I) & free;
    const NodeSet near_both = detail::reach(u, g.node_count(), q.Y, near_x, q.I) & near_x;
    NodeSet z = near_both | q.I;
    if (detail::m_connected(g, q.X, q.Y, z)) return std::nullopt;
    return z;
}

std::optional<NodeSet> min_vertex_cut(const MixedGraph& ugraph, const NodeSet& source, const NodeSet& sink,
                                      const CostFn& cost) {
    require_nodes(ugraph, source);
    require_nodes(ugraph, sink);
    if (cost.size() != ugraph.node_count()) throw InvalidQuery("cost function size does not match the graph");
    if (source.empty() || sink.empty()) throw InvalidQuery("source and sink must be nonempty");
    detail::require_disjoint(source, sink, "source and sink");
    if (!validate(ugraph, GraphClass::undirected).ok()) throw InvalidGraph("min_vertex_cut: graph must be undirected");
    const auto u = detail::from_undirected(ugraph);
    return detail::min_cut(u, ugraph.node_count(), source, sink, [&](NodeId v) {
        return source.contains(v) || sink.contains(v) ? CostFn::infinite : cost[v];
    });
}

namespace {

std::optional<NodeSet> min_cost_core(const MixedGraph& g, const SepQuery& q, const CostFn& cost) {
    const NodeSet ant = anteriors(g, q.X | q.Y | q.I);
    const auto u = detail::augmented(g, ant);
    NodeSet blocked = q.I;
    auto cut = detail::min_cut(
        u, g.node_count(), q.X, q.Y,
        [&](NodeId v) { return q.R.contains(v) ? cost[v] : CostFn::infinite; }, &blocked);
    if (!cut) return std::nullopt;
    *cut |= q.I;
    return cut;
}

}  // namespace

std::optional<NodeSet> find_min_cost_sep(const MixedGraph& g, const SepQuery& query, const CostFn& cost,
                                         Objective objective) {
    SepQuery q = normalize(g, query);
    if (cost.size() != g.node_count()) throw InvalidQuery("cost function size does not match the graph");
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (!query.R.contains(v) && !q.X.contains(v) && !q.Y.contains(v) && cost.finite(v))
            throw InvalidQuery("cost of '" + g.name(v) + "' must be infinite: node is outside R");
    if (objective != Objective::i_minimum && objective != Objective::strong_minimum)
        throw InvalidQuery("find_min_cost_sep: objective must be i_minimum or strong_minimum");

    auto with_i = min_cost_core(g, q, cost);
    if (!with_i || objective == Objective::i_minimum || q.I.empty()) return with_i;

    SepQuery unconstrained = q;
    unconstrained.I = g.empty_set();
    auto best = min_cost_core(g, unconstrained, cost);
    if (!best || cost.total(*best) != cost.total(*with_i)) return std::nullopt;
    return with_i;
}

}  // namespace adjsep
