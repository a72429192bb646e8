#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdg/class_oracle.hpp"
#include "qdg/digraph.hpp"

namespace qdg {

// Independent set whose 2-step out-closure covers the graph. Built by the
// peel-off recursion: remove the highest id together with its out-neighbors,
// solve the rest, then keep the peeled vertex unless the sub-solution
// already reaches it in one step. Runs iteratively, so deep graphs are fine.
VertexSet quasi_kernel(const Digraph& g);

// Dual: 2-step in-closure covers. Equals quasi_kernel(reverse(g)).
VertexSet quasi_sink(const Digraph& g);

// Ordered partition of the vertex set; class 0 is the hereditary one.
struct PartitionSpec {
    std::vector<VertexSet> classes;
};

// Named procedure producing a claim for an induced subgraph handed to it,
// in the subgraph's local ids. Must succeed on every subgraph it receives.
struct SubSolver {
    std::string name;
    std::function<std::optional<ClassClaim>(const Digraph&)> solve;
};

// Combines per-class OUT witnesses into one witness with bound raised by
// one: solvers[0] must produce OUT(n+1) hereditarily on subsets of class 0,
// the others OUT(n); solvers.size() == classes.size().
ClassClaim step_up_out(const Digraph& g, const PartitionSpec& p,
                       const std::vector<SubSolver>& solvers, int n);

// OUT(2) witness from a proper coloring of the symmetrized edge set; the
// color classes are edgeless, so each is its own one-step witness.
ClassClaim coloring_to_out2(const Digraph& g, const std::vector<int>& coloring);

// Two-sided analogue: per-class INOUT(m,l) claims combine into
// INOUT(m+1,l+1); solvers[0] must produce INOUT(m+1,l+1) hereditarily.
ClassClaim step_up_inout(const Digraph& g, const PartitionSpec& p,
                         const std::vector<SubSolver>& solvers, int m, int l);

// Either the probe vertex x two-step dominates everything, or the vertex set
// splits into an Out part around some unreached y and an In part around x.
struct TournamentSplit {
    std::optional<Vertex> out2_witness;
    VertexSet v_in, v_out;
    std::optional<Vertex> in_witness;   // x, inside v_in
    std::optional<Vertex> out_witness;  // y, inside v_out

    ClassClaim to_claim() const;  // OUT(2) or INOUT(1,1)
};

// Requires a semicomplete graph (no pair without an edge); x defaults to 0.
TournamentSplit tournament_split(const Digraph& g, std::optional<Vertex> x = std::nullopt);

// Partition construction for graphs whose undirected complement has no
// n-clique. Returned kind: OUT(2) or INOUT(1,1) for n=2, INOUT(1,2) or
// INOUT(2,1) for n=3, INOUT(2,2) for n>3. Throws input_error carrying the
// clique if the precondition fails.
ClassClaim kn_free_partition(const Digraph& g, int n, int clique_cap = 20);

// Disjoint independent A, B with Out2(A) and In2(B) jointly covering the
// whole vertex set (closures in the full graph; a cover, not a partition).
struct AbCover {
    VertexSet a, b;
};

AbCover ab_cover(const Digraph& g);

// True when Out2(cover.a) together with In2(cover.b) reaches every vertex
// and both sets are independent and disjoint.
bool check_ab_cover(const Digraph& g, const AbCover& cover);

}  // namespace qdg
