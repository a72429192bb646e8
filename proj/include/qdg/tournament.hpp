#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qdg/class_oracle.hpp"
#include "qdg/digraph.hpp"

namespace qdg {

// Breadth-first levels from a base vertex; -1 marks unreached vertices.
struct LevelMap {
    Vertex base = 0;
    std::vector<int> levels;

    bool reached(Vertex v) const { return levels[v] >= 0; }
    bool all_reached() const;
    int max_level() const;
};

// Homomorphism targets given purely as edge rules on levels. TInf accepts an
// edge u->v when level(u) >= level(v); T3 additionally accepts steps up by
// exactly one. Loops on the targets never materialize; only the rule is kept.
enum class TargetKind { TInf, T3 };

struct HomCheck {
    bool ok = true;
    std::optional<std::pair<Vertex, Vertex>> violation;  // first offending edge
};

LevelMap level_map(const Digraph& g, Vertex base);

// Edge-rule check of a level map against a target. Requires every vertex
// reached. Surjectivity onto 0..max is a property of breadth-first levels
// and is deliberately not re-checked here.
HomCheck check_hom(const Digraph& g, const LevelMap& lm, TargetKind target);

// Loopless k-vertex prefix of the T3 target: all downward edges (i,j) for
// i > j plus the successor edges (i,i+1).
Digraph t3_prefix(int k);

// For a semicomplete graph fully reached from x, returns a vertex whose
// 3-step out-closure is everything: x itself when the eccentricity is at
// most 3, otherwise the least vertex on the deepest level.
Vertex promote_out3(const Digraph& g, Vertex x);

// OUT(infinity) witness: the least vertex of every condensation class that
// receives no cross-class edge. Such classes are mutually unconnected and
// together reach the whole graph.
ClassClaim out_inf_witness(const Digraph& g);

}  // namespace qdg
