#pragma once

#include <vector>

#include "adjsep/graph.hpp"

namespace adjsep {

enum class BasisKind { parental, sparse };

// X_i and X_j are d-separated given Z, with X_i before X_j topologically
struct BasisClaim {
    NodeId i;
    NodeId j;
    NodeSet Z;
    BasisKind kind;
};

// one claim per nonadjacent pair, in the Kahn order of topological_order()
std::vector<BasisClaim> parental_basis(const MixedGraph& g);
// Z_ij is a minimal separator among nodes closer to X_j than X_i is
std::vector<BasisClaim> sparse_basis(const MixedGraph& g);

std::size_t total_conditioning(const std::vector<BasisClaim>& claims);

}  // namespace adjsep
