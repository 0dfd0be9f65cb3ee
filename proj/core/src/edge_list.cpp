#include "coreflow/edge_list.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "coreflow/errors.hpp"

namespace coreflow {

Graph read_edge_list(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int max_node = -1;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        long u = 0;
        long v = 0;
        if (!(fields >> u >> v)) {
            throw ParseError("expected \"u v\", got \"" + line + "\"", line_no);
        }
        std::string trailing;
        if (fields >> trailing) {
            throw ParseError("trailing token \"" + trailing + "\"", line_no);
        }
        if (u < 0 || v < 0) {
            throw ParseError("negative node index", line_no);
        }
        if (u == v) {
            throw ParseError("self-loop at node " + std::to_string(u), line_no);
        }
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_node = std::max(max_node, static_cast<int>(std::max(u, v)));
    }
    return Graph::from_edges(max_node + 1, edges);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path, 0);
    }
    return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (const auto& [u, v] : g.edges()) {
        out << u << ' ' << v << '\n';
    }
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot open " + path + " for writing", 0);
    }
    write_edge_list(g, out);
}

} // namespace coreflow
