#ifndef ISOKIT_GRAPH_HPP
#define ISOKIT_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isokit/common.hpp"

namespace isokit {

// Interns color descriptions to dense ids in first-seen order. The id order
// is the linear order on colors used everywhere downstream.
class ColorTable {
public:
    int intern(const std::string& description);
    const std::string& description(int id) const { return descriptions_.at(static_cast<size_t>(id)); }
    int size() const { return static_cast<int>(descriptions_.size()); }
    std::optional<int> lookup(const std::string& description) const;

private:
    std::vector<std::string> descriptions_;
    std::map<std::string, int> ids_;
};

// Vertex-colored simple graph. Adjacency is kept as packed bit rows so the
// backtracking inner loops can test and intersect neighborhoods word-wise.
// Values are treated as immutable once built; all operations return new
// graphs.
class ColoredGraph {
public:
    static constexpr int kMaxVertices = 4096;

    ColoredGraph() = default;
    explicit ColoredGraph(int n, int color_count = 1);

    int size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool adjacent(int u, int v) const {
        return (bits_[static_cast<size_t>(u) * words_ + static_cast<size_t>(v >> 6)] >> (v & 63)) & 1u;
    }
    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    int color(int v) const { return color_[static_cast<size_t>(v)]; }
    void set_color(int v, int c);
    const std::vector<int>& colors() const { return color_; }

    // Upper bound (exclusive) on the color ids in use; shared across graphs
    // that live in a common color space.
    int color_count() const { return color_count_; }
    void set_color_count(int c) { color_count_ = c; }

    int degree(int v) const;
    int edge_count() const;
    std::vector<int> neighbors(int v) const;
    std::vector<std::pair<int, int>> edges() const; // sorted lexicographically

    int words_per_row() const { return words_; }
    const std::uint64_t* row(int v) const { return bits_.data() + static_cast<size_t>(v) * words_; }

    bool operator==(const ColoredGraph& other) const = default;

private:
    int n_ = 0;
    int words_ = 0;
    int color_count_ = 1;
    std::vector<std::uint64_t> bits_;
    std::vector<int> color_;
};

// Named graph families.
struct GraphFamily {
    enum class Tag {
        Complete,
        Path,
        Cycle,
        Independent,
        Biclique,
        SubdividedStar,
        DisjointUnion,
        Complement,
    };
    Tag tag;
    int a = 0;
    int b = 0;
    // SubdividedStar parameters a_t, ..., a_1, a_0 (highest distance first).
    std::vector<int> star;
    std::vector<GraphFamily> parts; // DisjointUnion / Complement operands

    static GraphFamily complete(int t) { return {Tag::Complete, t, 0, {}, {}}; }
    static GraphFamily path(int t) { return {Tag::Path, t, 0, {}, {}}; }
    static GraphFamily cycle(int t) { return {Tag::Cycle, t, 0, {}, {}}; }
    static GraphFamily independent(int t) { return {Tag::Independent, t, 0, {}, {}}; }
    static GraphFamily biclique(int s, int t) { return {Tag::Biclique, s, t, {}, {}}; }
    static GraphFamily subdivided_star(std::vector<int> a) {
        return {Tag::SubdividedStar, 0, 0, std::move(a), {}};
    }
    static GraphFamily disjoint_union(GraphFamily f, GraphFamily g);
    static GraphFamily complement_of(GraphFamily f);
};

ColoredGraph make_graph(int n, const std::vector<std::pair<int, int>>& edges,
                        const std::vector<std::string>* colors = nullptr,
                        ColorTable* table = nullptr);

ColoredGraph build_named(const GraphFamily& family);

ColoredGraph complement(const ColoredGraph& g);

// Complements the edges between bipartition classes A and B. A and B must
// partition the vertex set and both sides must be independent sets.
ColoredGraph bipartite_complement(const ColoredGraph& g, const std::vector<int>& a,
                                  const std::vector<int>& b);

ColoredGraph disjoint_union(const ColoredGraph& g1, const ColoredGraph& g2);

// Adds k pairwise non-adjacent vertices of color c adjacent to every
// original vertex.
ColoredGraph join_universal(const ColoredGraph& g, int k, int c);

ColoredGraph induced_subgraph(const ColoredGraph& g, const std::vector<int>& vertices);

ColoredGraph apply_permutation(const ColoredGraph& g, const std::vector<int>& image);

// Induced-subgraph containment. When h carries more than one color, the map
// must send each pattern vertex to a target vertex of the same color.
std::optional<std::vector<int>> contains_induced(const ColoredGraph& h, const ColoredGraph& g,
                                                 Budget* budget = nullptr);

bool is_in_class(const ColoredGraph& g, const std::vector<ColoredGraph>& forbidden,
                 Budget* budget = nullptr);

bool is_connected(const ColoredGraph& g);
std::vector<std::vector<int>> connected_components(const ColoredGraph& g);

} // namespace isokit

#endif
