#pragma once

#include <random>
#include <vector>

#include "qdg/constructions.hpp"
#include "qdg/digraph.hpp"
#include "qdg/ginfty.hpp"

namespace qdg::test {

// Canonical fixtures used throughout the suites.
inline Digraph p3() { return Digraph(3, {{0, 1}, {1, 2}}); }
inline Digraph c3() { return Digraph(3, {{0, 1}, {1, 2}, {2, 0}}); }
inline Digraph e3() { return Digraph(3, {}); }
inline Digraph tt3() { return Digraph(3, {{0, 1}, {0, 2}, {1, 2}}); }

inline Digraph rt4() {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < 4; ++i)
        for (Vertex j = 0; j < i; ++j) edges.emplace_back(i, j);
    return Digraph(4, edges);
}

// Four-vertex terminated tournament whose generated graph needs three steps.
inline TerminatedDigraph pt4() {
    return TerminatedDigraph(
        Digraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 1}, {3, 0}, {2, 0}}), {0});
}

// Two vertices, one edge into the terminal; the nonterminal has no in-edge.
inline TerminatedDigraph nd2() {
    return TerminatedDigraph(Digraph(2, {{1, 0}}), {0});
}

// Independent closure oracle: boolean-matrix relaxation rather than BFS.
inline VertexSet oracle_closure(const Digraph& g, const VertexSet& from, int hops,
                                Direction dir) {
    const int n = g.vertex_count();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& [u, v] : g.edges()) {
        if (dir == Direction::Out)
            adj[u][v] = 1;
        else
            adj[v][u] = 1;
    }
    std::vector<char> reached(n, 0);
    for (Vertex v : from) reached[v] = 1;
    const int steps = hops > n ? n : hops;
    for (int s = 0; s < steps; ++s) {
        std::vector<char> next = reached;
        for (Vertex u = 0; u < n; ++u)
            if (reached[u])
                for (Vertex v = 0; v < n; ++v)
                    if (adj[u][v]) next[v] = 1;
        if (next == reached) break;
        reached = std::move(next);
    }
    VertexSet result;
    for (Vertex v = 0; v < n; ++v)
        if (reached[v]) result.insert(v);
    return result;
}

inline Digraph random_digraph(std::mt19937& rng, int n, double p) {
    std::bernoulli_distribution flip(p);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && flip(rng)) edges.emplace_back(u, v);
    return Digraph(n, edges);
}

inline Digraph random_tournament(std::mt19937& rng, int n) {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            if (coin(rng))
                edges.emplace_back(u, v);
            else
                edges.emplace_back(v, u);
        }
    return Digraph(n, edges);
}

inline TerminatedDigraph random_terminated(std::mt19937& rng, int n, double p) {
    Digraph g = random_digraph(rng, n, p);
    std::bernoulli_distribution coin(0.5);
    VertexSet terminals;
    while (terminals.empty())
        for (Vertex v = 0; v < n; ++v)
            if (coin(rng)) terminals.insert(v);
    return TerminatedDigraph(std::move(g), std::move(terminals));
}

inline SeqVertex seq(std::initializer_list<Vertex> ids) {
    SeqVertex s;
    s.ids = ids;
    return s;
}

}  // namespace qdg::test
