#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "adjsep/graph.hpp"

namespace adjsep {

// X, Y: the sets to separate. I: nodes every answer must contain. R: nodes an
// answer may use. X and Y are removed from R on entry.
struct SepQuery {
    NodeSet X;
    NodeSet Y;
    NodeSet I;
    NodeSet R;
};

// query with R defaulting to every node and I to the empty set
SepQuery make_query(const MixedGraph& g, NodeSet X, NodeSet Y);

// Validates and returns the query with R ∖ (X ∪ Y). Throws InvalidQuery.
SepQuery normalize(const MixedGraph& g, const SepQuery& q);

enum class Minimality { none, i_minimal, strong_minimal };
enum class Objective { any, i_minimal, i_minimum, strong_minimum };
enum class Strategy { dense, sparse };

using Cost = std::int64_t;

// Per-node weights in fixed point (1.0 == CostFn::scale). Nodes outside R carry
// the infinite sentinel.
class CostFn {
public:
    static constexpr Cost infinite = std::numeric_limits<Cost>::max();
    static constexpr Cost scale = 1'000'000;
    // finite totals must stay below this bound
    static constexpr Cost finite_limit = Cost{1} << 61;

    CostFn() = default;
    explicit CostFn(std::size_t n, Cost fill = infinite) : w_(n, fill) {}

    static CostFn unit(const NodeSet& R);
    static Cost from_double(double w);
    static double to_double(Cost c) { return static_cast<double>(c) / static_cast<double>(scale); }

    std::size_t size() const { return w_.size(); }
    Cost operator[](NodeId v) const { return w_[v]; }
    bool finite(NodeId v) const { return w_[v] != infinite; }
    void set(NodeId v, Cost c);

    // sum of weights; infinite if any member is infinite; throws on overflow
    Cost total(const NodeSet& s) const;

private:
    std::vector<Cost> w_;
};

// Z m-separates X and Y in the ancestral graph g. O(n+m).
bool test_sep(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& Z);

// Ant(X∪Y∪I) ∩ R if it separates, else nullopt. O(n+m).
std::optional<NodeSet> find_sep(const MixedGraph& g, const SepQuery& q);

// Z is an M-minimal separator with Z ⊆ R
bool test_min_sep(const MixedGraph& g, const NodeSet& X, const NodeSet& Y, const NodeSet& Z, const NodeSet& M,
                  const NodeSet& R, Strategy strategy = Strategy::dense);

// an I-minimal separator Z with I ⊆ Z ⊆ R
std::optional<NodeSet> find_min_sep(const MixedGraph& g, const SepQuery& q, Strategy strategy = Strategy::dense);

// minimum-cost vertex cut between source and sink in an undirected graph;
// nullopt when every cut would contain an infinite-cost node
std::optional<NodeSet> min_vertex_cut(const MixedGraph& ugraph, const NodeSet& source, const NodeSet& sink,
                                      const CostFn& cost);

// objective: i_minimum or strong_minimum
std::optional<NodeSet> find_min_cost_sep(const MixedGraph& g, const SepQuery& q, const CostFn& cost,
                                         Objective objective = Objective::i_minimum);

}  // namespace adjsep
