#include <doctest.h>

#include "helpers.hpp"
#include "qdg/errors.hpp"
#include "qdg/ginfty.hpp"

using namespace qdg;
using namespace qdg::test;

TEST_CASE("sequence vertices: text form and shortlex order") {
    SeqVertex s = seq({3, 1, 0});
    CHECK(s.str() == "3.1.0");
    CHECK(SeqVertex::parse("3.1.0") == s);
    CHECK(s.prefix_length() == 2);
    CHECK(seq({0}) < seq({1, 0}));
    CHECK(seq({1, 0}) < seq({2, 0}));
    CHECK_THROWS_AS(SeqVertex::parse(""), input_error);
    CHECK_THROWS_AS(SeqVertex::parse("1..0"), input_error);
}

TEST_CASE("terminated digraph invariants") {
    CHECK_THROWS_AS(TerminatedDigraph(p3(), {}), input_error);
    CHECK_THROWS_AS(TerminatedDigraph(p3(), {7}), input_error);
    TerminatedDigraph td = pt4();
    CHECK(td.nonterminals() == VertexSet{1, 2, 3});
    CHECK(td.least_terminal() == 0);
    CHECK(td.valid_seq(seq({3, 1, 0})));
    CHECK_FALSE(td.valid_seq(seq({0, 1, 0})));  // terminal in the prefix
    CHECK_FALSE(td.valid_seq(seq({3, 1})));     // nonterminal at the end
    CHECK_THROWS_AS(td.check_seq(seq({3, 1})), input_error);
}

TEST_CASE("delta finds the first difference") {
    CHECK(delta(seq({1, 0}), seq({0})) == 0);
    CHECK(delta(seq({1, 2, 0}), seq({1, 0})) == 1);
    CHECK(delta(seq({1, 0}), seq({1, 2, 0})) == delta(seq({1, 2, 0}), seq({1, 0})));
    CHECK_THROWS_AS(delta(seq({1, 0}), seq({1, 0})), input_error);
    CHECK_THROWS_AS(delta(seq({1}), seq({1, 0})), input_error);
}

TEST_CASE("lazy edges follow the base pair at the first difference") {
    TerminatedDigraph td = pt4();
    CHECK(lazy_edge(td, seq({0}), seq({1, 0})));        // (0,1) present
    CHECK_FALSE(lazy_edge(td, seq({1, 0}), seq({0})));  // (1,0) absent
    // First difference at position 1 compares 0 against 2; (0,2) is absent.
    CHECK_FALSE(lazy_edge(td, seq({1, 0}), seq({1, 2, 0})));
    CHECK(lazy_edge(td, seq({1, 2, 0}), seq({1, 0})));  // (2,0) present
    CHECK_THROWS_AS(lazy_edge(td, seq({0, 1, 0}), seq({0})), input_error);
    CHECK_THROWS_AS(lazy_edge(td, seq({0}), seq({0})), input_error);
}

TEST_CASE("substitution product counts and terminal structure") {
    TerminatedDigraph product = odot(pt4());
    CHECK(product.g.vertex_count() == 13);  // 1 terminal + 3 nonterminals * 4
    CHECK(product.terminals.size() == 4);

    // All-terminal base: nothing to blow up, the product is the base itself.
    TerminatedDigraph flat(tt3(), {0, 1, 2});
    TerminatedDigraph same = odot(flat);
    CHECK(same.g.vertex_count() == 3);
    CHECK(same.g.edges() == tt3().edges());
    CHECK(same.terminals == VertexSet{0, 1, 2});

    CHECK_THROWS_AS(odot(pt4(), 5), cap_error);
}

TEST_CASE("terminal part of the product matches the depth-one truncation") {
    std::mt19937 rng(107);
    for (int round = 0; round < 12; ++round) {
        TerminatedDigraph td = random_terminated(rng, 2 + static_cast<int>(rng() % 3), 0.4);
        TerminatedDigraph product = odot(td);
        InducedSubgraph part = induced(product.g, product.terminals);
        Materialization mat = materialize(td, 1);
        CHECK(part.graph.vertex_count() == mat.digraph.vertex_count());
        CHECK(part.graph.edges() == mat.digraph.edges());
    }
}

TEST_CASE("materialize counts and fixture edges") {
    TerminatedDigraph td = pt4();
    Materialization zero = materialize(td, 0);
    CHECK(zero.digraph.vertex_count() == 1);
    CHECK(zero.digraph.edge_count() == 0);
    CHECK(zero.labels[0] == seq({0}));

    Materialization one = materialize(td, 1);
    CHECK(one.digraph.vertex_count() == 4);
    CHECK(one.digraph.edge_count() == 6);

    // Geometric sum with three nonterminals and one terminal.
    for (int depth = 0; depth <= 4; ++depth) {
        long long expected = 1;
        long long layer = 1;
        for (int k = 1; k <= depth; ++k) {
            layer *= 3;
            expected += layer;
        }
        CHECK(materialize(td, depth).digraph.vertex_count() == expected);
    }
    CHECK(materialize(td, 4).digraph.vertex_count() == 121);

    CHECK_THROWS_AS(materialize(td, 12), cap_error);
    CHECK_THROWS_AS(materialize(td, 3, 10), cap_error);
}

TEST_CASE("truncations form a chain under the label maps") {
    std::mt19937 rng(109);
    for (int round = 0; round < 8; ++round) {
        TerminatedDigraph td = random_terminated(rng, 2 + static_cast<int>(rng() % 3), 0.4);
        for (int depth = 0; depth < 3; ++depth) {
            Materialization small = materialize(td, depth);
            Materialization big = materialize(td, depth + 1);
            for (const auto& [i, j] : small.digraph.edges()) {
                int bi = big.id_of(small.labels[i]);
                int bj = big.id_of(small.labels[j]);
                REQUIRE(bi >= 0);
                REQUIRE(bj >= 0);
                CHECK(big.digraph.has_edge(bi, bj));
            }
            for (const auto& [bi, bj] : big.digraph.edges()) {
                int i = small.id_of(big.labels[bi]);
                int j = small.id_of(big.labels[bj]);
                if (i >= 0 && j >= 0) CHECK(small.digraph.has_edge(i, j));
            }
        }
    }
}

TEST_CASE("a tournament base generates a tournament truncation") {
    std::mt19937 rng(113);
    for (int round = 0; round < 10; ++round) {
        int n = 2 + static_cast<int>(rng() % 3);
        Digraph g = random_tournament(rng, n);
        VertexSet terminals{static_cast<Vertex>(rng() % n)};
        TerminatedDigraph td(g, terminals);
        Materialization mat = materialize(td, 2);
        CHECK(is_tournament(mat.digraph));
    }
}

TEST_CASE("materialization labels are valid and prefix-free") {
    Materialization mat = materialize(pt4(), 2);
    TerminatedDigraph td = pt4();
    for (const SeqVertex& label : mat.labels) CHECK(td.valid_seq(label));
    for (const SeqVertex& a : mat.labels)
        for (const SeqVertex& b : mat.labels) {
            if (a == b || a.ids.size() >= b.ids.size()) continue;
            bool prefix = std::equal(a.ids.begin(), a.ids.end(), b.ids.begin());
            CHECK_FALSE(prefix);
        }
}
