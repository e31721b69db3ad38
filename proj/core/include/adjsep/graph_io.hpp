#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "adjsep/graph.hpp"

namespace adjsep {

// A parsed graph file: the graph plus the role tags attached to node statements.
struct GraphDocument {
    MixedGraph graph;
    NodeSet latent;
    NodeSet exposure;
    NodeSet outcome;
    NodeSet context;
};

// Line format:
//   node <id> [latent|exposure|outcome|context]
//   edge <id> -> <id> | edge <id> <-> <id> | edge <id> -- <id>
// '#' starts a comment. Edges may mention undeclared nodes.
GraphDocument parse_graph(std::istream& in);
GraphDocument parse_graph(std::string_view text);
GraphDocument read_graph_file(const std::filesystem::path& path);

std::string write_graph(const MixedGraph& g);
std::string write_graph(const GraphDocument& doc);

}  // namespace adjsep
