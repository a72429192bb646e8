#include <doctest.h>

#include "helpers.hpp"
#include "qdg/errors.hpp"

using namespace qdg;
using namespace qdg::test;

TEST_CASE("closure follows paths up to the hop bound") {
    CHECK(closure(p3(), {0}, 1, Direction::Out) == VertexSet{0, 1});
    CHECK(closure(p3(), {0}, 2, Direction::Out) == VertexSet{0, 1, 2});
    // Oracle: relaxation on the reversed cycle reaches everything.
    CHECK(oracle_closure(c3(), {0}, kInfiniteHops, Direction::In) == VertexSet{0, 1, 2});
    CHECK(closure(c3(), {0}, kInfiniteHops, Direction::In) == VertexSet{0, 1, 2});
    CHECK(closure(p3(), {}, 2, Direction::Out).empty());
    CHECK_THROWS_AS(closure(p3(), {7}, 1, Direction::Out), input_error);
}

TEST_CASE("closure properties: monotone, composable, dual") {
    std::mt19937 rng(11);
    for (int round = 0; round < 40; ++round) {
        int n = 1 + static_cast<int>(rng() % 7);
        Digraph g = random_digraph(rng, n, 0.3);
        VertexSet a;
        for (Vertex v = 0; v < n; ++v)
            if (rng() % 3 == 0) a.insert(v);
        int m = static_cast<int>(rng() % 3);
        int k = static_cast<int>(rng() % 3);

        VertexSet closure_m = closure(g, a, m, Direction::Out);
        VertexSet closure_m1 = closure(g, a, m + 1, Direction::Out);
        for (Vertex v : closure_m) CHECK(closure_m1.count(v) == 1);
        CHECK(closure(g, a, 0, Direction::Out) == a);

        CHECK(closure(g, closure_m, k, Direction::Out) ==
              closure(g, a, m + k, Direction::Out));

        CHECK(closure(g, a, m, Direction::In) == closure(reverse(g), a, m, Direction::Out));
        CHECK(closure(g, a, m, Direction::Out) == oracle_closure(g, a, m, Direction::Out));
    }
}

TEST_CASE("is_independent checks both edge directions") {
    CHECK(is_independent(p3(), {0, 2}));
    CHECK_FALSE(is_independent(p3(), {0, 1}));
    CHECK(is_independent(e3(), {0, 1, 2}));
    CHECK_THROWS_AS(is_independent(p3(), {5}), input_error);
}

TEST_CASE("induced subgraph relabels ascending") {
    InducedSubgraph sub = induced(c3(), {0, 1});
    CHECK(sub.graph.vertex_count() == 2);
    CHECK(sub.graph.edge_count() == 1);
    CHECK(sub.graph.has_edge(0, 1));
    CHECK(sub.to_original == std::vector<Vertex>{0, 1});

    InducedSubgraph edgeless = induced(p3(), {0, 2});
    CHECK(edgeless.graph.edge_count() == 0);

    InducedSubgraph whole = induced(p3(), {0, 1, 2});
    CHECK(whole.graph.edges() == p3().edges());
    CHECK(whole.map_back({0, 1, 2}) == VertexSet{0, 1, 2});
}

TEST_CASE("reverse flips every edge and is an involution") {
    Digraph r = reverse(p3());
    CHECK(r.has_edge(1, 0));
    CHECK(r.has_edge(2, 1));
    CHECK(r.edge_count() == 2);
    CHECK(reverse(reverse(c3())).edges() == c3().edges());
    CHECK(closure(reverse(p3()), {2}, 2, Direction::Out) ==
          closure(p3(), {2}, 2, Direction::In));
    CHECK(closure(p3(), {2}, 2, Direction::In) == VertexSet{0, 1, 2});
}

TEST_CASE("undirected complement pairs the non-adjacent vertices") {
    CHECK(complement_undirected(tt3()).pairs.empty());
    CHECK(complement_undirected(e3()).pairs.size() == 3);
    UndirectedGraph comp = complement_undirected(p3());
    CHECK(comp.pairs.size() == 1);
    CHECK(comp.has_pair(0, 2));
}

TEST_CASE("tournament predicates") {
    CHECK(is_tournament(tt3()));
    CHECK_FALSE(is_tournament(p3()));
    CHECK(is_tournament(c3()));
    CHECK(is_semicomplete(tt3()));
    // A two-cycle is semicomplete but not a tournament.
    Digraph digon(2, {{0, 1}, {1, 0}});
    CHECK(is_semicomplete(digon));
    CHECK_FALSE(is_tournament(digon));
}

TEST_CASE("clique search returns the lexicographically least clique") {
    CHECK(max_clique_at_most(complement_undirected(e3()), 3) == VertexSet{0, 1, 2});
    CHECK_FALSE(max_clique_at_most(complement_undirected(tt3()), 2).has_value());
    CHECK(max_clique_at_most(complement_undirected(p3()), 2) == VertexSet{0, 2});
    UndirectedGraph big;
    big.n = 21;
    CHECK_THROWS_AS(max_clique_at_most(big, 2), cap_error);
}

TEST_CASE("condensation orders classes against the edge direction") {
    Condensation cycle = condensation(c3());
    CHECK(cycle.classes.size() == 1);
    CHECK(cycle.last_class == 0);
    CHECK(cycle.classes[0] == VertexSet{0, 1, 2});

    Condensation path = condensation(p3());
    CHECK(path.classes.size() == 3);
    CHECK(path.is_total_order);
    REQUIRE(path.last_class.has_value());
    CHECK(path.classes[*path.last_class] == VertexSet{0});

    Condensation trans = condensation(tt3());
    CHECK(trans.classes.size() == 3);
    CHECK(trans.is_total_order);
    CHECK(trans.classes[*trans.last_class] == VertexSet{0});

    Condensation empty_graph = condensation(e3());
    CHECK_FALSE(empty_graph.is_total_order);
    CHECK_FALSE(empty_graph.last_class.has_value());
}

TEST_CASE("condensation soundness: cross edges respect the order") {
    std::mt19937 rng(23);
    auto check_graph = [](const Digraph& g) {
        Condensation cond = condensation(g);
        const int k = static_cast<int>(cond.classes.size());
        // Classes agree with mutual reachability computed by the oracle.
        for (Vertex u = 0; u < g.vertex_count(); ++u)
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                bool mutual =
                    oracle_closure(g, {u}, kInfiniteHops, Direction::Out).count(v) &&
                    oracle_closure(g, {v}, kInfiniteHops, Direction::Out).count(u);
                CHECK(mutual == (cond.class_of[u] == cond.class_of[v]));
            }
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                if (i == j || !cond.preceq(i, j)) continue;
                // i below j: no edge may run from i into j.
                for (Vertex x : cond.classes[i])
                    for (Vertex y : cond.classes[j]) CHECK_FALSE(g.has_edge(x, y));
            }
    };
    for (int round = 0; round < 30; ++round)
        check_graph(random_digraph(rng, 2 + static_cast<int>(rng() % 7), 0.3));
}

TEST_CASE("greedy independent set is independent, maximal, deterministic") {
    CHECK(greedy_max_independent(e3()) == VertexSet{0, 1, 2});
    CHECK(greedy_max_independent(c3()) == VertexSet{0});
    CHECK(greedy_max_independent(p3(), {0}) == VertexSet{1});

    std::mt19937 rng(31);
    for (int round = 0; round < 30; ++round) {
        int n = 1 + static_cast<int>(rng() % 8);
        Digraph g = random_digraph(rng, n, 0.4);
        VertexSet forbidden;
        for (Vertex v = 0; v < n; ++v)
            if (rng() % 4 == 0) forbidden.insert(v);
        VertexSet result = greedy_max_independent(g, forbidden);
        CHECK(is_independent(g, result));
        for (Vertex v = 0; v < n; ++v) {
            if (forbidden.count(v) || result.count(v)) continue;
            bool adjacent = false;
            for (Vertex u : result)
                if (g.has_edge(u, v) || g.has_edge(v, u)) adjacent = true;
            CHECK(adjacent);
        }
    }
}

TEST_CASE("digraph rejects loops and bad endpoints") {
    CHECK_THROWS_AS(Digraph(2, {{0, 0}}), input_error);
    CHECK_THROWS_AS(Digraph(2, {{0, 5}}), input_error);
    Digraph dup(2, {{0, 1}, {0, 1}});
    CHECK(dup.edge_count() == 1);
}
