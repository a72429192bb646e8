#include "qdg/tournament.hpp"

#include <algorithm>
#include <deque>

#include "qdg/errors.hpp"

namespace qdg {

bool LevelMap::all_reached() const {
    return std::all_of(levels.begin(), levels.end(), [](int l) { return l >= 0; });
}

int LevelMap::max_level() const {
    int best = -1;
    for (int l : levels) best = std::max(best, l);
    return best;
}

LevelMap level_map(const Digraph& g, Vertex base) {
    g.check_vertex(base);
    LevelMap lm;
    lm.base = base;
    lm.levels.assign(g.vertex_count(), -1);
    std::deque<Vertex> queue{base};
    lm.levels[base] = 0;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.out_neighbors(v))
            if (lm.levels[w] < 0) {
                lm.levels[w] = lm.levels[v] + 1;
                queue.push_back(w);
            }
    }
    return lm;
}

HomCheck check_hom(const Digraph& g, const LevelMap& lm, TargetKind target) {
    if (static_cast<int>(lm.levels.size()) != g.vertex_count())
        throw input_error("level map size does not match graph");
    if (!lm.all_reached()) throw input_error("level map leaves vertices unreached");
    HomCheck result;
    for (const auto& [u, v] : g.edges()) {
        const int lu = lm.levels[u], lv = lm.levels[v];
        const bool ok = target == TargetKind::TInf ? lu >= lv : lu >= lv || lv == lu + 1;
        if (!ok) {
            result.ok = false;
            result.violation = {{u, v}};
            return result;
        }
    }
    return result;
}

Digraph t3_prefix(int k) {
    if (k < 1) throw input_error("t3_prefix requires k >= 1");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < k; ++i)
        for (Vertex j = 0; j < i; ++j) edges.emplace_back(i, j);
    for (Vertex i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
    return Digraph(k, edges);
}

Vertex promote_out3(const Digraph& g, Vertex x) {
    g.check_vertex(x);
    if (!is_semicomplete(g))
        throw input_error("promote_out3 requires a graph with no complement edges");
    LevelMap lm = level_map(g, x);
    if (!lm.all_reached())
        throw input_error("promote_out3 requires every vertex reachable from the base");
    const int depth = lm.max_level();
    if (depth <= 3) return x;
    // A deepest vertex y misses the previous level entirely, which in a
    // semicomplete graph forces that whole level into Out1(y); the closure
    // chain then collapses to three steps.
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (lm.levels[v] == depth) return v;
    throw input_error("unreachable: no vertex on the deepest level");
}

ClassClaim out_inf_witness(const Digraph& g) {
    Condensation cond = condensation(g);
    ClassClaim claim;
    claim.kind = ClassKind::out(kInfiniteHops);
    const int k = static_cast<int>(cond.classes.size());
    std::vector<char> has_incoming(k, 0);
    for (const auto& [u, v] : g.edges())
        if (cond.class_of[u] != cond.class_of[v]) has_incoming[cond.class_of[v]] = 1;
    for (int i = 0; i < k; ++i)
        if (!has_incoming[i]) claim.witness_a.insert(*cond.classes[i].begin());
    return claim;
}

}  // namespace qdg
