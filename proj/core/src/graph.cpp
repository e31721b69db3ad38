#include "adjsep/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <queue>

#include "internal.hpp"

namespace adjsep {

std::optional<NodeId> MixedGraph::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeId MixedGraph::id(std::string_view name) const {
    auto v = find(name);
    if (!v) throw UnknownNode(std::string(name));
    return *v;
}

bool MixedGraph::adjacent(NodeId u, NodeId v) const { return edge_index_.count(key(u, v)) != 0; }

std::optional<Edge> MixedGraph::edge_between(NodeId u, NodeId v) const {
    auto it = edge_index_.find(key(u, v));
    if (it == edge_index_.end()) return std::nullopt;
    Edge e = edges_[it->second];
    if (e.a != u) {
        std::swap(e.a, e.b);
        std::swap(e.at_a, e.at_b);
    }
    return e;
}

NodeSet MixedGraph::set_of(std::span<const std::string> names) const {
    NodeSet s(node_count());
    for (const auto& n : names) s.insert(id(n));
    return s;
}

NodeSet MixedGraph::set_of(std::initializer_list<std::string_view> names) const {
    NodeSet s(node_count());
    for (auto n : names) s.insert(id(n));
    return s;
}

std::vector<std::string> MixedGraph::sorted_names(const NodeSet& s) const {
    std::vector<std::string> out;
    for (NodeId v : s) out.push_back(names_[v]);
    std::sort(out.begin(), out.end());
    return out;
}

NodeSet MixedGraph::parents(NodeId v) const {
    NodeSet s(node_count());
    for (const auto& inc : adj_[v])
        if (inc.is_parent()) s.insert(inc.other);
    return s;
}

NodeSet MixedGraph::children(NodeId v) const {
    NodeSet s(node_count());
    for (const auto& inc : adj_[v])
        if (inc.is_child()) s.insert(inc.other);
    return s;
}

NodeSet MixedGraph::spouses(NodeId v) const {
    NodeSet s(node_count());
    for (const auto& inc : adj_[v])
        if (inc.is_spouse()) s.insert(inc.other);
    return s;
}

NodeSet MixedGraph::neighbors(NodeId v) const {
    NodeSet s(node_count());
    for (const auto& inc : adj_[v]) s.insert(inc.other);
    return s;
}

NodeSet MixedGraph::parents(const NodeSet& s) const {
    NodeSet out(node_count());
    for (NodeId v : s)
        for (const auto& inc : adj_[v])
            if (inc.is_parent()) out.insert(inc.other);
    return out;
}

NodeSet MixedGraph::children(const NodeSet& s) const {
    NodeSet out(node_count());
    for (NodeId v : s)
        for (const auto& inc : adj_[v])
            if (inc.is_child()) out.insert(inc.other);
    return out;
}

bool MixedGraph::operator==(const MixedGraph& o) const {
    if (names_ != o.names_ || edges_.size() != o.edges_.size()) return false;
    for (const auto& e : edges_) {
        auto f = o.edge_between(e.a, e.b);
        if (!f || f->at_a != e.at_a || f->at_b != e.at_b) return false;
    }
    return true;
}

NodeId GraphBuilder::add_node(std::string_view name) {
    std::string s(name);
    if (s.empty()) throw InvalidGraph("empty node id");
    if (g_.index_.count(s)) throw InvalidGraph("duplicate node '" + s + "'");
    NodeId v = static_cast<NodeId>(g_.names_.size());
    g_.index_.emplace(s, v);
    g_.names_.push_back(std::move(s));
    g_.adj_.emplace_back();
    return v;
}

NodeId GraphBuilder::node(std::string_view name) {
    auto v = g_.find(name);
    return v ? *v : add_node(name);
}

void GraphBuilder::add_edge(NodeId a, NodeId b, Mark at_a, Mark at_b) {
    if (a >= g_.node_count() || b >= g_.node_count()) throw InvalidGraph("edge endpoint out of range");
    if (a == b) throw InvalidGraph("self-loop at '" + g_.names_[a] + "'");
    auto k = MixedGraph::key(a, b);
    if (g_.edge_index_.count(k))
        throw InvalidGraph("more than one edge between '" + g_.names_[a] + "' and '" + g_.names_[b] + "'");
    g_.edge_index_.emplace(k, static_cast<std::uint32_t>(g_.edges_.size()));
    g_.edges_.push_back({a, b, at_a, at_b});
    g_.adj_[a].push_back({b, at_a, at_b});
    g_.adj_[b].push_back({a, at_b, at_a});
    if (at_a == Mark::arrow && at_b == Mark::arrow) ++g_.bidirected_count_;
    if (at_a == Mark::tail && at_b == Mark::tail) ++g_.undirected_count_;
}

MixedGraph GraphBuilder::build() && { return std::move(g_); }
MixedGraph GraphBuilder::build() const& { return g_; }

void require_nodes(const MixedGraph& g, const NodeSet& s) {
    if (s.universe() != g.node_count()) throw InvalidQuery("node set does not belong to this graph");
}

NodeSet closure(const MixedGraph& g, const NodeSet& seed, Relation rel) {
    require_nodes(g, seed);
    NodeSet seen = seed;
    std::vector<NodeId> stack(seed.begin(), seed.end());
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (const auto& inc : g.incident(v)) {
            bool follow = false;
            switch (rel) {
                case Relation::ancestors: follow = inc.is_parent(); break;
                case Relation::descendants: follow = inc.is_child(); break;
                case Relation::anteriors: follow = inc.is_parent() || inc.is_undirected(); break;
            }
            if (follow && !seen.contains(inc.other)) {
                seen.insert(inc.other);
                stack.push_back(inc.other);
            }
        }
    }
    return seen;
}

namespace {

void copy_nodes(const MixedGraph& g, GraphBuilder& b) {
    for (const auto& n : g.names()) b.add_node(n);
}

// Tarjan SCC over the arc relation `arcs(v, f)`; returns component index per node.
template <class Arcs>
std::vector<std::uint32_t> strong_components(std::size_t n, Arcs arcs, std::uint32_t& count) {
    constexpr std::uint32_t unset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, unset), low(n, 0), comp(n, unset);
    std::vector<NodeId> stack;
    std::vector<bool> on_stack(n, false);
    std::uint32_t counter = 0;
    count = 0;
    struct Frame {
        NodeId v;
        std::vector<NodeId> succ;
        std::size_t pos;
    };
    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != unset) continue;
        std::vector<Frame> frames;
        auto push = [&](NodeId v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            Frame f{v, {}, 0};
            arcs(v, [&](NodeId w) { f.succ.push_back(w); });
            frames.push_back(std::move(f));
        };
        push(root);
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.pos < f.succ.size()) {
                NodeId w = f.succ[f.pos++];
                if (index[w] == unset) {
                    push(w);
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            NodeId v = f.v;
            if (low[v] == index[v]) {
                NodeId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
    }
    return comp;
}

void check_acyclic_directed(const MixedGraph& g, ValidationReport& rep) {
    std::uint32_t count = 0;
    auto comp = strong_components(
        g.node_count(),
        [&](NodeId v, auto&& emit) {
            for (const auto& inc : g.incident(v))
                if (inc.is_child()) emit(inc.other);
        },
        count);
    std::vector<std::vector<NodeId>> members(count);
    for (NodeId v = 0; v < g.node_count(); ++v) members[comp[v]].push_back(v);
    for (const auto& m : members) {
        if (m.size() < 2) continue;
        Violation viol{ViolationKind::directed_cycle, {}, "directed cycle through"};
        for (NodeId v : m) viol.nodes.push_back(g.name(v));
        for (const auto& n : viol.nodes) viol.message += " " + n;
        rep.violations.push_back(std::move(viol));
    }
}

void check_undirected_neighborhood(const MixedGraph& g, ValidationReport& rep) {
    for (const auto& e : g.edges()) {
        if (!e.undirected()) continue;
        for (NodeId v : {e.a, e.b}) {
            for (const auto& inc : g.incident(v)) {
                if (inc.near == Mark::arrow) {
                    rep.violations.push_back({ViolationKind::undirected_neighborhood,
                                              {g.name(e.a), g.name(e.b), g.name(inc.other)},
                                              "undirected edge " + g.name(e.a) + " -- " + g.name(e.b) +
                                                  " meets an arrowhead at " + g.name(v)});
                }
            }
        }
    }
}

void check_ancestral(const MixedGraph& g, ValidationReport& rep) {
    check_undirected_neighborhood(g, rep);
    // anterior relation: directed arcs plus undirected edges both ways
    std::uint32_t count = 0;
    auto comp = strong_components(
        g.node_count(),
        [&](NodeId v, auto&& emit) {
            for (const auto& inc : g.incident(v))
                if (inc.is_child() || inc.is_undirected()) emit(inc.other);
        },
        count);
    for (const auto& e : g.edges()) {
        if (e.directed() && comp[e.a] == comp[e.b]) {
            NodeId from = e.at_a == Mark::tail ? e.a : e.b;
            NodeId to = e.at_a == Mark::tail ? e.b : e.a;
            rep.violations.push_back({ViolationKind::directed_cycle,
                                      {g.name(from), g.name(to)},
                                      "edge " + g.name(from) + " -> " + g.name(to) + " closes an anterior cycle"});
        }
    }
    for (const auto& e : g.edges()) {
        if (!e.bidirected()) continue;
        for (auto [u, v] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
            NodeSet seed(g.node_count());
            seed.insert(v);
            if (anteriors(g, seed).contains(u)) {
                rep.violations.push_back({ViolationKind::almost_directed_cycle,
                                          {g.name(u), g.name(v)},
                                          g.name(u) + " <-> " + g.name(v) + " with " + g.name(u) +
                                              " anterior of " + g.name(v)});
            }
        }
    }
}

}  // namespace

ValidationReport validate(const MixedGraph& g, GraphClass cls) {
    ValidationReport rep;
    switch (cls) {
        case GraphClass::undirected:
            for (const auto& e : g.edges())
                if (!e.undirected())
                    rep.violations.push_back({ViolationKind::wrong_edge_kind,
                                              {g.name(e.a), g.name(e.b)},
                                              "non-undirected edge " + g.name(e.a) + " / " + g.name(e.b)});
            return rep;
        case GraphClass::dag:
            for (const auto& e : g.edges())
                if (!e.directed())
                    rep.violations.push_back({ViolationKind::wrong_edge_kind,
                                              {g.name(e.a), g.name(e.b)},
                                              "non-directed edge " + g.name(e.a) + " / " + g.name(e.b)});
            check_acyclic_directed(g, rep);
            return rep;
        case GraphClass::ag:
            check_ancestral(g, rep);
            return rep;
        case GraphClass::mag: {
            check_ancestral(g, rep);
            if (!rep.ok()) return rep;
            const std::size_t n = g.node_count();
            for (NodeId u = 0; u < n; ++u) {
                for (NodeId v = u + 1; v < n; ++v) {
                    if (g.adjacent(u, v)) continue;
                    NodeSet x(n, {u}), y(n, {v});
                    NodeSet z = anteriors(g, x | y);
                    z.erase(u);
                    z.erase(v);
                    if (detail::m_connected(g, x, y, z))
                        rep.violations.push_back({ViolationKind::non_maximal_pair,
                                                  {g.name(u), g.name(v)},
                                                  "non-adjacent pair " + g.name(u) + ", " + g.name(v) +
                                                      " cannot be separated"});
                }
            }
            return rep;
        }
    }
    return rep;
}

MixedGraph transform(const MixedGraph& g, const NodeSet& remove_into, const NodeSet& remove_out) {
    require_nodes(g, remove_into);
    require_nodes(g, remove_out);
    GraphBuilder b;
    copy_nodes(g, b);
    auto drops = [&](NodeId v, Mark m) {
        return (m == Mark::arrow && remove_into.contains(v)) || (m == Mark::tail && remove_out.contains(v));
    };
    for (const auto& e : g.edges())
        if (!drops(e.a, e.at_a) && !drops(e.b, e.at_b)) b.add_edge(e.a, e.b, e.at_a, e.at_b);
    return std::move(b).build();
}

MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& keep) {
    require_nodes(g, keep);
    GraphBuilder b;
    std::vector<NodeId> map(g.node_count(), 0);
    for (NodeId v : keep) map[v] = b.add_node(g.name(v));
    for (const auto& e : g.edges())
        if (keep.contains(e.a) && keep.contains(e.b)) b.add_edge(map[e.a], map[e.b], e.at_a, e.at_b);
    return std::move(b).build();
}

MixedGraph augment(const MixedGraph& g) {
    auto rep = validate(g, GraphClass::ag);
    if (!rep.ok()) throw InvalidGraph("augment: not an ancestral graph: " + rep.violations.front().message);
    auto u = detail::augmented(g, g.all_nodes());
    GraphBuilder b;
    copy_nodes(g, b);
    for (std::uint32_t i = 0; i < u.size(); ++i)
        for (auto j : u.adj[i])
            if (i < j) b.add_edge(u.global[i], u.global[j], Mark::tail, Mark::tail);
    return std::move(b).build();
}

MixedGraph reduce_constraints(const MixedGraph& ugraph, const NodeSet& anchors_x, const NodeSet& anchors_y,
                              const NodeSet& I, const NodeSet& unrestricted) {
    for (const auto* s : {&anchors_x, &anchors_y, &I, &unrestricted}) require_nodes(ugraph, *s);
    if (!validate(ugraph, GraphClass::undirected).ok()) throw InvalidGraph("reduce_constraints: graph must be undirected");
    detail::require_disjoint(I, unrestricted, "I and unrestricted");
    detail::require_disjoint(anchors_x | anchors_y, I | unrestricted, "anchors and removed nodes");
    detail::require_disjoint(anchors_x, anchors_y, "anchor sets");

    const std::size_t n = ugraph.node_count();
    std::vector<NodeSet> adj(n, NodeSet(n));
    for (const auto& e : ugraph.edges()) {
        adj[e.a].insert(e.b);
        adj[e.b].insert(e.a);
    }
    NodeSet alive = ugraph.all_nodes() - I;
    for (NodeId v : unrestricted) {
        NodeSet nb = adj[v] & alive;
        nb.erase(v);
        for (NodeId a : nb) {
            adj[a] |= nb;
            adj[a].erase(a);
        }
        alive.erase(v);
    }
    GraphBuilder b;
    std::vector<NodeId> map(n, 0);
    for (NodeId v : alive) map[v] = b.add_node(ugraph.name(v));
    for (NodeId v : alive)
        for (NodeId w : adj[v] & alive)
            if (v < w) b.add_edge(map[v], map[w], Mark::tail, Mark::tail);
    return std::move(b).build();
}

std::optional<std::vector<NodeId>> topological_order(const MixedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> indeg(n, 0);
    for (const auto& e : g.edges())
        if (e.directed()) ++indeg[e.at_b == Mark::arrow ? e.b : e.a];
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (NodeId v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);
    std::vector<NodeId> order;
    order.reserve(n);
    while (!ready.empty()) {
        NodeId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (const auto& inc : g.incident(v))
            if (inc.is_child() && --indeg[inc.other] == 0) ready.push(inc.other);
    }
    if (order.size() != n) return std::nullopt;
    return order;
}

std::vector<std::size_t> skeleton_distances(const MixedGraph& g, NodeId source) {
    std::vector<std::size_t> d(g.node_count(), std::numeric_limits<std::size_t>::max());
    std::deque<NodeId> q{source};
    d[source] = 0;
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop_front();
        for (const auto& inc : g.incident(v)) {
            if (d[inc.other] == std::numeric_limits<std::size_t>::max()) {
                d[inc.other] = d[v] + 1;
                q.push_back(inc.other);
            }
        }
    }
    return d;
}

namespace detail {

void require_disjoint(const NodeSet& a, const NodeSet& b, const char* what) {
    if (a.intersects(b)) throw InvalidQuery(std::string(what) + " must be disjoint");
}

void UGraph::finalize() {
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
}

UGraph from_undirected(const MixedGraph& ug) {
    UGraph u;
    const std::size_t n = ug.node_count();
    u.global.resize(n);
    u.local.resize(n);
    u.adj.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        u.global[v] = v;
        u.local[v] = static_cast<std::int32_t>(v);
    }
    for (const auto& e : ug.edges()) {
        u.adj[e.a].push_back(e.b);
        u.adj[e.b].push_back(e.a);
    }
    u.finalize();
    return u;
}

UGraph augmented(const MixedGraph& g, const NodeSet& keep) {
    UGraph u;
    const std::size_t n = g.node_count();
    u.local.assign(n, -1);
    for (NodeId v : keep) {
        u.local[v] = static_cast<std::int32_t>(u.global.size());
        u.global.push_back(v);
    }
    u.adj.resize(u.global.size());
    auto link = [&](std::uint32_t a, std::uint32_t b) {
        if (a == b) return;
        u.adj[a].push_back(b);
        u.adj[b].push_back(a);
    };
    for (const auto& e : g.edges())
        if (u.has(e.a) && u.has(e.b)) link(u.local[e.a], u.local[e.b]);

    // bidirected components, each joined with its parents into a clique
    std::vector<std::int32_t> comp(u.size(), -1);
    std::vector<std::uint32_t> members, stack;
    std::vector<std::int32_t> mark(u.size(), -1);
    std::int32_t ncomp = 0;
    for (std::uint32_t s = 0; s < u.size(); ++s) {
        if (comp[s] >= 0) continue;
        members.clear();
        stack.assign(1, s);
        comp[s] = ncomp;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (const auto& inc : g.incident(u.global[v])) {
                if (!inc.is_spouse() || !u.has(inc.other)) continue;
                auto w = static_cast<std::uint32_t>(u.local[inc.other]);
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        std::size_t core = members.size();
        for (std::size_t i = 0; i < core; ++i) {
            for (const auto& inc : g.incident(u.global[members[i]])) {
                if (!inc.is_parent() || !u.has(inc.other)) continue;
                auto p = static_cast<std::uint32_t>(u.local[inc.other]);
                if (mark[p] != ncomp) {
                    mark[p] = ncomp;
                    members.push_back(p);
                }
            }
        }
        if (members.size() > 1 && (core > 1 || members.size() > 2)) {
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j) link(members[i], members[j]);
        }
        ++ncomp;
    }
    u.finalize();
    return u;
}

NodeSet reach(const UGraph& u, std::size_t universe, const NodeSet& sources, const NodeSet& stop,
              const NodeSet& removed) {
    NodeSet seen(universe);
    std::vector<NodeId> stack;
    for (NodeId s : sources) {
        if (!u.has(s) || removed.contains(s)) continue;
        seen.insert(s);
        stack.push_back(s);
    }
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (auto j : u.adj[static_cast<std::size_t>(u.local[v])]) {
            NodeId w = u.global[j];
            if (seen.contains(w) || removed.contains(w)) continue;
            seen.insert(w);
            if (!stop.contains(w)) stack.push_back(w);
        }
    }
    return seen;
}

}  // namespace detail

}  // namespace adjsep
