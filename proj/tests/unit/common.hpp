#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "adjsep/graph.hpp"
#include "adjsep/graph_io.hpp"

#ifndef ADJSEP_TEST_DATA
#define ADJSEP_TEST_DATA "tests/data"
#endif

namespace testing {

using namespace adjsep;

inline GraphDocument load(const std::string& name) {
    return read_graph_file(std::string(ADJSEP_TEST_DATA) + "/" + name);
}

inline MixedGraph graph(std::string_view text) { return parse_graph(text).graph; }

inline NodeSet S(const MixedGraph& g, std::initializer_list<std::string_view> names) { return g.set_of(names); }

inline std::set<std::vector<std::string>> named(const MixedGraph& g, const std::vector<NodeSet>& sets) {
    std::set<std::vector<std::string>> out;
    for (const auto& s : sets) out.insert(g.sorted_names(s));
    return out;
}

inline std::set<NodeSet> as_set(const std::vector<NodeSet>& v) { return {v.begin(), v.end()}; }

inline bool distinct(const std::vector<NodeSet>& v) { return as_set(v).size() == v.size(); }

}  // namespace testing

#include "adjsep/harness.hpp"
#include "adjsep/separation.hpp"
#include "oracles.hpp"

namespace testing {

struct RandomQuery {
    MixedGraph g;
    SepQuery q;
};

// disjoint nonempty X and Y, R drawn from the rest, I drawn from R
inline SepQuery random_query(const MixedGraph& g, Rng& rng, double p_r = 0.7, double p_i = 0.2) {
    const std::size_t n = g.node_count();
    std::vector<NodeId> order(n);
    for (NodeId v = 0; v < n; ++v) order[v] = v;
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    const std::size_t nx = 1 + rng.below(std::min<std::size_t>(2, n / 2));
    const std::size_t ny = 1 + rng.below(std::min<std::size_t>(2, n - nx));
    NodeSet X(n), Y(n);
    for (std::size_t i = 0; i < nx; ++i) X.insert(order[i]);
    for (std::size_t i = nx; i < nx + ny; ++i) Y.insert(order[i]);
    NodeSet R = oracle::random_subset(n, g.all_nodes() - (X | Y), p_r, rng);
    NodeSet I = oracle::random_subset(n, R, p_i, rng);
    return {X, Y, I, R};
}

inline RandomQuery random_ag_query(std::size_t n, Rng& rng, bool undirected = true) {
    auto g = oracle::random_ag(n, rng, undirected);
    auto q = random_query(g, rng);
    return {std::move(g), q};
}

}  // namespace testing
