#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace qdg {

using Vertex = int;
using VertexSet = std::set<Vertex>;

// Hop count for closures. kInfiniteHops requests the reachability fixpoint.
inline constexpr int kInfiniteHops = 1 << 30;

enum class Direction { Out, In };

// Finite loopless digraph over vertex ids 0..n-1. Immutable after
// construction; edge membership is O(1) and iteration is ascending (u,v).
class Digraph {
public:
    Digraph() = default;
    Digraph(int n, const std::vector<std::pair<Vertex, Vertex>>& edge_list);

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }
    bool has_edge(Vertex u, Vertex v) const;
    const std::vector<Vertex>& out_neighbors(Vertex v) const;
    const std::vector<Vertex>& in_neighbors(Vertex v) const;
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    void check_vertex(Vertex v) const;
    void check_subset(const VertexSet& a) const;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
    std::unordered_set<long long> keys_;
};

// Undirected companion graph used for complement and clique queries.
struct UndirectedGraph {
    int n = 0;
    std::set<std::pair<Vertex, Vertex>> pairs;  // normalized u < v

    bool has_pair(Vertex u, Vertex v) const;
    std::vector<Vertex> neighbors(Vertex v) const;
};

// Quotient of a digraph by mutual reachability. Classes are listed by
// ascending least member. The order runs opposite to the usual condensation
// convention: X precedes Y exactly when cross edges go from Y into X, so the
// last class is a source component that reaches everything.
struct Condensation {
    std::vector<VertexSet> classes;
    std::vector<int> class_of;               // vertex -> class index
    std::vector<std::vector<bool>> below;    // below[i][j]: class i <= class j
    bool is_total_order = false;
    std::optional<int> last_class;

    bool preceq(int i, int j) const { return below[i][j]; }
};

// Induced subgraph with ids relabeled 0..|W|-1 in ascending original order.
struct InducedSubgraph {
    Digraph graph;
    std::vector<Vertex> to_original;  // local id -> original id
    std::vector<int> to_local;       // original id -> local id, -1 if absent

    VertexSet map_back(const VertexSet& local) const;
    VertexSet map_down(const VertexSet& original) const;
};

// Vertices within `hops` steps of `from`, following (Out) or against (In)
// edge direction; `from` itself is always included.
VertexSet closure(const Digraph& g, const VertexSet& from, int hops, Direction dir);

bool is_independent(const Digraph& g, const VertexSet& a);

InducedSubgraph induced(const Digraph& g, const VertexSet& w);

Digraph reverse(const Digraph& g);

UndirectedGraph complement_undirected(const Digraph& g);

// Exactly one directed edge between every pair of distinct vertices.
bool is_tournament(const Digraph& g);

// At least one directed edge between every pair (two-cycles allowed).
// Equivalent to the undirected complement having no edges.
bool is_semicomplete(const Digraph& g);

// Lexicographically least clique of exactly `size` vertices, if one exists.
// Refuses graphs larger than `vertex_cap` (exhaustive search).
std::optional<VertexSet> max_clique_at_most(const UndirectedGraph& gu, int size,
                                            int vertex_cap = 20);

Condensation condensation(const Digraph& g);

// Maximal (not maximum) independent set disjoint from `forbidden`, built by
// scanning ids ascending.
VertexSet greedy_max_independent(const Digraph& g, const VertexSet& forbidden = {});

std::string to_string(const VertexSet& s);

}  // namespace qdg
