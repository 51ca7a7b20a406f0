#pragma once

// Line-based text format:
//
//   spiderweb v1 <vertex_count>
//   v <id> <parent_id>        one per non-root vertex
//   h <id1> <id2>             one per extra edge
//
// Ids must be level-major (parents before children, levels non-decreasing).
// write_graph emits vertices by id and edges sorted with id1 < id2, so a file
// produced by the writer reloads and rewrites byte-identically.

#include "spiderweb/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace spiderweb {

inline void write_graph(std::ostream& os, const SpiderWeb& g) {
    const RootedTree& t = g.tree();
    std::string buf;
    buf.reserve(32 * (g.vertex_count() + g.horizontal_edge_count()));
    buf += "spiderweb v1 " + std::to_string(g.vertex_count()) + "\n";
    for (VertexId v = 1; v < t.size(); ++v) {
        buf += "v ";
        buf += std::to_string(v);
        buf += ' ';
        buf += std::to_string(t.parent(v));
        buf += '\n';
    }
    for (const Edge& e : g.horizontal_edges()) {
        buf += "h ";
        buf += std::to_string(e.a);
        buf += ' ';
        buf += std::to_string(e.b);
        buf += '\n';
    }
    os << buf;
}

inline std::string to_graph_string(const SpiderWeb& g) {
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

inline SpiderWeb read_graph(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) -> StructuralError {
        return StructuralError("line " + std::to_string(line_no) + ": " + what);
    };

    if (!std::getline(is, line)) throw StructuralError("empty graph file");
    ++line_no;
    std::istringstream header(line);
    std::string magic, version;
    long long n = -1;
    if (!(header >> magic >> version >> n) || magic != "spiderweb" || version != "v1" || n < 1) {
        throw fail("expected header 'spiderweb v1 <vertex_count>'");
    }
    std::string extra;
    if (header >> extra) throw fail("trailing tokens in header");

    std::vector<VertexId> parent(static_cast<std::size_t>(n), kNoVertex);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Edge> edges;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        char tag = 0;
        long long a = -1, b = -1;
        if (!(ls >> tag >> a >> b) || (ls >> extra)) throw fail("malformed record '" + line + "'");
        if (a < 0 || b < 0 || a >= n || b >= n) throw fail("vertex id out of range");
        if (tag == 'v') {
            if (a == 0) throw fail("the root has no parent record");
            if (seen[static_cast<std::size_t>(a)]) throw fail("vertex " + std::to_string(a) + " listed twice");
            seen[static_cast<std::size_t>(a)] = true;
            parent[static_cast<std::size_t>(a)] = static_cast<VertexId>(b);
        } else if (tag == 'h') {
            edges.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
        } else {
            throw fail(std::string("unknown record tag '") + tag + "'");
        }
    }
    for (long long v = 1; v < n; ++v) {
        if (!seen[static_cast<std::size_t>(v)]) throw StructuralError("vertex " + std::to_string(v) + " has no parent record");
    }
    return SpiderWeb(RootedTree(std::move(parent)), std::move(edges));
}

inline SpiderWeb read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open graph file '" + path + "'");
    return read_graph(in);
}

inline void write_graph_file(const std::string& path, const SpiderWeb& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StructuralError("cannot write graph file '" + path + "'");
    write_graph(out, g);
    if (!out) throw StructuralError("write failed for '" + path + "'");
}

}  // namespace spiderweb
