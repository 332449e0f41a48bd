#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pld/graph.hpp"

namespace pld {

struct ParsedGraph {
    Graph graph;
    // part index per vertex (1-based, position v-1 for vertex v) when the file
    // carries a partition block
    std::optional<std::vector<int>> partition;
};

// Text format: first non-comment line "n <count>", then "e <u> <v>" lines with
// 1 <= u < v <= n, optional "p <part> <v1> <v2> ..." lines whose parts cover
// every vertex exactly once; '#' starts a comment line.
ParsedGraph read_graph_text(std::istream& in);
ParsedGraph read_graph_text(const std::string& text);
ParsedGraph read_graph_file(const std::string& path);

void write_graph_text(std::ostream& out, const Graph& g,
                      const std::vector<int>* partition = nullptr);
std::string graph_to_text(const Graph& g, const std::vector<int>* partition = nullptr);

}  // namespace pld
