#include "pld/graph_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace pld {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("graph text, line " + std::to_string(line) + ": " + msg);
}

}  // namespace

ParsedGraph read_graph_text(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    std::map<int, std::vector<int>> part_lines;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "n") {
            if (n >= 0) fail(lineno, "repeated n line");
            if (!(ls >> n) || n < 0) fail(lineno, "bad vertex count");
        } else if (tag == "e") {
            if (n < 0) fail(lineno, "edge before n line");
            int u = 0, v = 0;
            if (!(ls >> u >> v)) fail(lineno, "bad edge line");
            if (!(1 <= u && u < v && v <= n)) fail(lineno, "edge must satisfy 1 <= u < v <= n");
            edges.emplace_back(u, v);
        } else if (tag == "p") {
            if (n < 0) fail(lineno, "partition before n line");
            int part = 0;
            if (!(ls >> part) || part < 1) fail(lineno, "bad part index");
            int v = 0;
            auto& dst = part_lines[part];
            while (ls >> v) {
                if (v < 1 || v > n) fail(lineno, "partition vertex out of range");
                dst.push_back(v);
            }
        } else {
            fail(lineno, "unknown line tag '" + tag + "'");
        }
    }
    if (n < 0) throw std::invalid_argument("graph text: missing n line");

    Graph g;
    try {
        g = Graph(n, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("graph text: ") + e.what());
    }

    ParsedGraph out{std::move(g), std::nullopt};
    if (!part_lines.empty()) {
        int l = part_lines.rbegin()->first;
        std::vector<int> assign(n, 0);
        for (auto& [part, vs] : part_lines) {
            if (part > l) l = part;
            for (int v : vs) {
                if (assign[v - 1] != 0) {
                    throw std::invalid_argument("graph text: vertex " + std::to_string(v) +
                                                " assigned to two parts");
                }
                assign[v - 1] = part;
            }
        }
        for (int v = 1; v <= n; ++v) {
            if (assign[v - 1] == 0) {
                throw std::invalid_argument("graph text: vertex " + std::to_string(v) +
                                            " missing from partition block");
            }
        }
        out.partition = std::move(assign);
    }
    return out;
}

ParsedGraph read_graph_text(const std::string& text) {
    std::istringstream in(text);
    return read_graph_text(in);
}

ParsedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_graph_text(in);
}

void write_graph_text(std::ostream& out, const Graph& g, const std::vector<int>* partition) {
    out << "n " << g.n() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
    if (partition != nullptr) {
        int l = 0;
        for (int p : *partition) l = std::max(l, p);
        for (int part = 1; part <= l; ++part) {
            out << "p " << part;
            for (int v = 1; v <= g.n(); ++v) {
                if ((*partition)[v - 1] == part) out << " " << v;
            }
            out << "\n";
        }
    }
}

std::string graph_to_text(const Graph& g, const std::vector<int>* partition) {
    std::ostringstream ss;
    write_graph_text(ss, g, partition);
    return ss.str();
}

}  // namespace pld
