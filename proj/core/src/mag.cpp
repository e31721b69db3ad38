#include "adjsep/mag.hpp"

#include "internal.hpp"

namespace adjsep {

bool edge_visible(const MixedGraph& M, NodeId x, NodeId d) {
    if (x >= M.node_count() || d >= M.node_count()) throw InvalidQuery("edge_visible: node out of range");
    auto e = M.edge_between(x, d);
    if (!e || e->at_a != Mark::tail || e->at_b != Mark::arrow)
        throw InvalidQuery("edge_visible: no edge " + M.name(x) + " -> " + M.name(d));

    auto outside = [&](NodeId a) { return a != d && !M.adjacent(a, d); };
    auto has_external = [&](NodeId v) {
        for (const auto& inc : M.incident(v))
            if ((inc.is_parent() || inc.is_spouse()) && outside(inc.other)) return true;
        return false;
    };
    if (has_external(x)) return true;

    // collider paths x <-> V1 <-> ... through parents of d
    NodeSet seen(M.node_count());
    std::vector<NodeId> stack{x};
    seen.insert(x);
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (const auto& inc : M.incident(v)) {
            NodeId w = inc.other;
            if (!inc.is_spouse() || seen.contains(w)) continue;
            auto to_d = M.edge_between(w, d);
            if (!to_d || to_d->at_a != Mark::tail || to_d->at_b != Mark::arrow) continue;
            if (has_external(w)) return true;
            seen.insert(w);
            stack.push_back(w);
        }
    }
    return false;
}

bool test_amenability(const MixedGraph& M, const NodeSet& X, const NodeSet& Y) {
    const NodeSet p = pcp(M, X, Y);
    for (NodeId d : M.children(X) & p)
        for (const auto& inc : M.incident(d))
            if (inc.is_parent() && X.contains(inc.other) && !edge_visible(M, inc.other, d)) return false;
    return true;
}

void require_mag(const MixedGraph& M) {
    if (M.has_undirected()) throw InvalidGraph("MAG inputs may not contain undirected edges");
    auto rep = validate(M, GraphClass::mag);
    if (!rep.ok()) throw InvalidGraph("not a MAG: " + rep.violations.front().message);
}

namespace {

const MixedGraph& checked(const MixedGraph& M, bool validate) {
    if (validate) require_mag(M);
    else if (M.has_undirected()) throw InvalidGraph("MAG inputs may not contain undirected edges");
    return M;
}

}  // namespace

MagAdjustment::MagAdjustment(const MixedGraph& M, NodeSet X, NodeSet Y, bool validate)
    : ctx_(checked(M, validate), std::move(X), std::move(Y)), amenable_(test_amenability(M, ctx_.X(), ctx_.Y())) {}

bool MagAdjustment::test(const NodeSet& Z, Minimality minimality) const {
    return test(Z, minimality, ctx_.graph().empty_set());
}

bool MagAdjustment::test(const NodeSet& Z, Minimality minimality, const NodeSet& I) const {
    return amenable_ && ctx_.test(Z, minimality, I);
}

std::optional<NodeSet> MagAdjustment::find(const NodeSet& I, const NodeSet& R, Objective objective,
                                           const CostFn* cost) const {
    if (!amenable_) return std::nullopt;
    return ctx_.find(I, R, objective, cost);
}

SepStream MagAdjustment::enumerate(const NodeSet& I, const NodeSet& R, bool minimal) const {
    if (!amenable_) return SepStream();
    return ctx_.enumerate(I, R, minimal);
}

namespace {

bool inducing_walk(const MixedGraph& G, NodeId a, NodeId b, const NodeSet& anc, const NodeSet& L) {
    std::vector<std::uint8_t> seen(G.node_count(), 0);
    std::vector<std::pair<NodeId, bool>> stack;
    auto step = [&](NodeId w, bool arrow) {
        if (w == b) return true;
        std::uint8_t bit = arrow ? 2 : 1;
        if (!(seen[w] & bit)) {
            seen[w] |= bit;
            stack.emplace_back(w, arrow);
        }
        return false;
    };
    for (const auto& inc : G.incident(a))
        if (step(inc.other, inc.far == Mark::arrow)) return true;
    while (!stack.empty()) {
        auto [v, via_arrow] = stack.back();
        stack.pop_back();
        const bool latent = L.contains(v), collider_ok = anc.contains(v);
        for (const auto& inc : G.incident(v)) {
            bool collider = via_arrow && inc.near == Mark::arrow;
            if (collider ? !collider_ok : !latent) continue;
            if (step(inc.other, inc.far == Mark::arrow)) return true;
        }
    }
    return false;
}

}  // namespace

bool inducing_path_exists(const MixedGraph& G, NodeId a, NodeId b, const NodeSet& Z, const NodeSet& L) {
    require_nodes(G, Z);
    require_nodes(G, L);
    if (a >= G.node_count() || b >= G.node_count()) throw InvalidQuery("inducing_path_exists: node out of range");
    if (a == b) throw InvalidQuery("inducing_path_exists: endpoints must differ");
    detail::require_disjoint(Z, L, "Z and L");
    NodeSet seed = Z;
    seed.insert(a);
    seed.insert(b);
    return inducing_walk(G, a, b, ancestors(G, seed), L);
}

MixedGraph dag_to_mag(const MixedGraph& G, const NodeSet& L) {
    require_dag(G);
    require_nodes(G, L);
    const std::size_t n = G.node_count();
    std::vector<NodeId> obs;
    for (NodeId v = 0; v < n; ++v)
        if (!L.contains(v)) obs.push_back(v);
    std::vector<NodeSet> an(n);
    for (NodeId v : obs) an[v] = ancestors(G, NodeSet(n, {v}));

    GraphBuilder b;
    std::vector<NodeId> map(n, 0);
    for (NodeId v : obs) map[v] = b.add_node(G.name(v));
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            NodeId u = obs[i], v = obs[j];
            if (!G.adjacent(u, v) && !inducing_walk(G, u, v, an[u] | an[v], L)) continue;
            Mark at_u = an[v].contains(u) ? Mark::tail : Mark::arrow;
            Mark at_v = an[u].contains(v) ? Mark::tail : Mark::arrow;
            b.add_edge(map[u], map[v], at_u, at_v);
        }
    }
    return std::move(b).build();
}

CanonicalDag canonical_dag(const MixedGraph& M) {
    if (M.has_undirected()) throw InvalidGraph("canonical_dag: undirected edges are not supported");
    GraphBuilder b;
    for (const auto& n : M.names()) b.add_node(n);
    std::vector<NodeId> fresh;
    for (const auto& e : M.edges()) {
        if (!e.bidirected()) {
            b.add_edge(e.a, e.b, e.at_a, e.at_b);
            continue;
        }
        std::string base = "L_" + M.name(e.a) + "_" + M.name(e.b), name = base;
        for (int k = 2; b.has_node(name); ++k) name = base + "_" + std::to_string(k);
        NodeId l = b.add_node(name);
        fresh.push_back(l);
        b.add_edge(l, e.a, Mark::tail, Mark::arrow);
        b.add_edge(l, e.b, Mark::tail, Mark::arrow);
    }
    CanonicalDag out{std::move(b).build(), {}};
    out.latent = NodeSet(out.dag.node_count(), fresh.begin(), fresh.end());
    return out;
}

}  // namespace adjsep
