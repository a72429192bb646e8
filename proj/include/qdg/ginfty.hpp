#pragma once

#include <map>
#include <string>
#include <vector>

#include "qdg/digraph.hpp"

namespace qdg {

inline constexpr int kDefaultMaterializeCap = 200000;

// Vertex of the generated infinite graph: a run of nonterminal ids followed
// by exactly one terminal id. Printed dotted, e.g. "3.1.0". Ordered shortlex
// so materializations list shallow vertices first.
struct SeqVertex {
    std::vector<Vertex> ids;

    int prefix_length() const { return static_cast<int>(ids.size()) - 1; }
    std::string str() const;
    static SeqVertex parse(const std::string& text);

    bool operator==(const SeqVertex&) const = default;
    bool operator<(const SeqVertex& other) const;
};

// Digraph plus a nonempty set of terminal vertices; the nonterminals are the
// blow-up sites of the substitution product.
struct TerminatedDigraph {
    Digraph g;
    VertexSet terminals;

    TerminatedDigraph() = default;
    TerminatedDigraph(Digraph graph, VertexSet terms);

    VertexSet nonterminals() const;
    bool is_terminal(Vertex v) const { return terminals.count(v) > 0; }
    Vertex least_terminal() const { return *terminals.begin(); }

    bool valid_seq(const SeqVertex& s) const;
    void check_seq(const SeqVertex& s) const;
};

TerminatedDigraph reverse(const TerminatedDigraph& td);

// First position where two distinct sequences differ. For valid sequence
// vertices this always lands inside both (no one is a prefix of another).
int delta(const SeqVertex& x, const SeqVertex& y);

// Edge rule of the generated graph: x -> y exactly when the underlying pair
// at the first differing position is an edge.
bool lazy_edge(const TerminatedDigraph& td, const SeqVertex& x, const SeqVertex& y);

// One substitution step: every nonterminal v blows up into a fresh copy of
// the whole graph. Ids pack as: terminals first in ascending order, then the
// pairs (v, w) for nonterminal v and any w, at |T| + index(v)*|V| + w where
// index(v) counts nonterminals in ascending order. New terminals are the old
// ones plus the (v, w) pairs with w terminal.
TerminatedDigraph odot(const TerminatedDigraph& td, int vertex_cap = kDefaultMaterializeCap);

// Finite induced subgraph of the generated graph on all sequences with at
// most `depth` nonterminals, in shortlex order.
struct Materialization {
    int depth = 0;
    Digraph digraph;
    std::vector<SeqVertex> labels;
    std::map<SeqVertex, int> index;

    int id_of(const SeqVertex& s) const;  // -1 when absent
};

Materialization materialize(const TerminatedDigraph& td, int depth,
                            int cap = kDefaultMaterializeCap);

}  // namespace qdg
