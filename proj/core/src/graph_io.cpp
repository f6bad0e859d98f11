#include "isokit/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace isokit {

ColoredGraph read_graph(std::istream& in, ColorTable* table) {
    std::string line;
    bool have_header = false;
    int n = 0, m = 0, seen_edges = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, std::string>> colors;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag[0] == '#') continue;
        if (tag == "g") {
            if (have_header) throw contract_error("duplicate graph header");
            if (!(ls >> n >> m) || n < 0 || m < 0) throw contract_error("bad graph header");
            have_header = true;
        } else if (tag == "e") {
            int u, v;
            if (!have_header || !(ls >> u >> v)) throw contract_error("bad edge line");
            edges.emplace_back(u, v);
            ++seen_edges;
        } else if (tag == "c") {
            int v;
            std::string color;
            if (!have_header || !(ls >> v >> color)) throw contract_error("bad color line");
            if (v < 0 || v >= n) throw contract_error("color line vertex out of range");
            colors.emplace_back(v, color);
        } else {
            throw contract_error("unknown line tag '" + tag + "'");
        }
    }
    if (!have_header) throw contract_error("missing graph header");
    if (seen_edges != m) throw contract_error("edge count does not match header");
    ColoredGraph g = make_graph(n, edges);
    if (!colors.empty()) {
        // without a session table, plain numeric colors keep their ids so
        // that write/read round-trips bit-exactly
        bool all_numeric = true;
        for (auto& [v, color] : colors)
            if (color.find_first_not_of("0123456789") != std::string::npos) all_numeric = false;
        if (!table && all_numeric) {
            for (auto& [v, color] : colors) g.set_color(v, std::stoi(color));
        } else {
            ColorTable local;
            ColorTable* t = table ? table : &local;
            for (auto& [v, color] : colors) g.set_color(v, t->intern(color));
        }
    }
    return g;
}

ColoredGraph read_graph_file(const std::string& path, ColorTable* table) {
    std::ifstream in(path);
    if (!in) throw contract_error("cannot open graph file: " + path);
    return read_graph(in, table);
}

void write_graph(std::ostream& out, const ColoredGraph& g, const ColorTable* table) {
    auto edges = g.edges(); // already sorted lexicographically
    out << "g " << g.size() << " " << edges.size() << "\n";
    for (auto [u, v] : edges) out << "e " << u << " " << v << "\n";
    bool colored = false;
    for (int v = 0; v < g.size(); ++v)
        if (g.color(v) != 0) colored = true;
    if (colored) {
        for (int v = 0; v < g.size(); ++v) {
            int c = g.color(v);
            if (table && c < table->size())
                out << "c " << v << " " << table->description(c) << "\n";
            else
                out << "c " << v << " " << c << "\n";
        }
    }
}

std::string graph_to_string(const ColoredGraph& g, const ColorTable* table) {
    std::ostringstream out;
    write_graph(out, g, table);
    return out.str();
}

} // namespace isokit
