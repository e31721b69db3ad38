#include "adjsep/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace adjsep {

namespace {

enum class Tag { none, latent, exposure, outcome, context };

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

}  // namespace

GraphDocument parse_graph(std::istream& in) {
    GraphBuilder b;
    std::vector<std::pair<NodeId, Tag>> tags;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto tok = tokens(line);
        if (tok.empty()) continue;
        try {
            if (tok[0] == "node") {
                if (tok.size() < 2 || tok.size() > 3) throw ParseError(lineno, "expected: node <id> [role]");
                NodeId v = b.node(tok[1]);
                if (tok.size() == 3) {
                    const auto& r = tok[2];
                    Tag t = r == "latent"     ? Tag::latent
                            : r == "exposure" ? Tag::exposure
                            : r == "outcome"  ? Tag::outcome
                            : r == "context"  ? Tag::context
                                              : Tag::none;
                    if (t == Tag::none) throw ParseError(lineno, "unknown node role '" + r + "'");
                    tags.emplace_back(v, t);
                }
            } else if (tok[0] == "edge") {
                if (tok.size() != 4) throw ParseError(lineno, "expected: edge <id> <op> <id>");
                const auto& op = tok[2];
                if (op == "->") {
                    b.directed(tok[1], tok[3]);
                } else if (op == "<-") {
                    b.directed(tok[3], tok[1]);
                } else if (op == "<->") {
                    b.bidirected(tok[1], tok[3]);
                } else if (op == "--") {
                    b.undirected(tok[1], tok[3]);
                } else {
                    throw ParseError(lineno, "unknown edge operator '" + op + "'");
                }
            } else {
                throw ParseError(lineno, "unknown keyword '" + tok[0] + "'");
            }
        } catch (const InvalidGraph& e) {
            throw ParseError(lineno, e.what());
        }
    }
    GraphDocument doc;
    doc.graph = std::move(b).build();
    const std::size_t n = doc.graph.node_count();
    doc.latent = doc.exposure = doc.outcome = doc.context = NodeSet(n);
    for (auto [v, t] : tags) {
        switch (t) {
            case Tag::latent: doc.latent.insert(v); break;
            case Tag::exposure: doc.exposure.insert(v); break;
            case Tag::outcome: doc.outcome.insert(v); break;
            case Tag::context: doc.context.insert(v); break;
            case Tag::none: break;
        }
    }
    return doc;
}

GraphDocument parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_graph(in);
}

GraphDocument read_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file '" + path.string() + "'");
    return parse_graph(in);
}

namespace {

void write_edges(std::ostream& out, const MixedGraph& g) {
    for (const auto& e : g.edges()) {
        if (e.undirected()) {
            out << "edge " << g.name(e.a) << " -- " << g.name(e.b) << '\n';
        } else if (e.bidirected()) {
            out << "edge " << g.name(e.a) << " <-> " << g.name(e.b) << '\n';
        } else if (e.at_b == Mark::arrow) {
            out << "edge " << g.name(e.a) << " -> " << g.name(e.b) << '\n';
        } else {
            out << "edge " << g.name(e.b) << " -> " << g.name(e.a) << '\n';
        }
    }
}

}  // namespace

std::string write_graph(const MixedGraph& g) {
    std::ostringstream out;
    for (const auto& n : g.names()) out << "node " << n << '\n';
    write_edges(out, g);
    return out.str();
}

std::string write_graph(const GraphDocument& doc) {
    std::ostringstream out;
    const auto& g = doc.graph;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << "node " << g.name(v);
        if (doc.latent.contains(v)) out << " latent";
        else if (doc.exposure.contains(v)) out << " exposure";
        else if (doc.outcome.contains(v)) out << " outcome";
        else if (doc.context.contains(v)) out << " context";
        out << '\n';
    }
    write_edges(out, g);
    return out.str();
}

}  // namespace adjsep
