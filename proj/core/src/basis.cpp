#include "adjsep/basis.hpp"

#include <limits>

#include "adjsep/adjustment.hpp"
#include "adjsep/separation.hpp"

namespace adjsep {

namespace {

template <class F>
std::vector<BasisClaim> claims(const MixedGraph& g, BasisKind kind, F&& conditioning) {
    require_dag(g);
    const auto order = *topological_order(g);
    std::vector<BasisClaim> out;
    for (std::size_t q = 0; q < order.size(); ++q) {
        const NodeId j = order[q];
        const auto dist = kind == BasisKind::sparse ? skeleton_distances(g, j) : std::vector<std::size_t>{};
        for (std::size_t p = 0; p < q; ++p) {
            const NodeId i = order[p];
            if (g.adjacent(i, j)) continue;
            out.push_back({i, j, conditioning(i, j, dist), kind});
        }
    }
    return out;
}

}  // namespace

std::vector<BasisClaim> parental_basis(const MixedGraph& g) {
    return claims(g, BasisKind::parental, [&](NodeId, NodeId j, const auto&) { return g.parents(j); });
}

std::vector<BasisClaim> sparse_basis(const MixedGraph& g) {
    return claims(g, BasisKind::sparse, [&](NodeId i, NodeId j, const std::vector<std::size_t>& dist) {
        const std::size_t n = g.node_count();
        if (dist[i] == std::numeric_limits<std::size_t>::max()) return NodeSet(n);
        NodeSet r(n);
        for (NodeId k = 0; k < n; ++k)
            if (dist[k] < dist[i]) r.insert(k);
        SepQuery q{NodeSet(n, {j}), NodeSet(n, {i}), NodeSet(n), r};
        return *find_min_sep(g, q);
    });
}

std::size_t total_conditioning(const std::vector<BasisClaim>& claims) {
    std::size_t t = 0;
    for (const auto& c : claims) t += c.Z.size();
    return t;
}

}  // namespace adjsep
