#include "qdg/constructions.hpp"

#include <algorithm>

#include "qdg/errors.hpp"

namespace qdg {

namespace {

VertexSet all_vertices(const Digraph& g) {
    VertexSet s;
    for (Vertex v = 0; v < g.vertex_count(); ++v) s.insert(v);
    return s;
}

VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    for (Vertex v : a)
        if (!b.count(v)) r.insert(v);
    return r;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet r(a);
    r.insert(b.begin(), b.end());
    return r;
}

VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    for (Vertex v : a)
        if (b.count(v)) r.insert(v);
    return r;
}

void check_partition(const Digraph& g, const PartitionSpec& p) {
    std::vector<char> seen(g.vertex_count(), 0);
    for (const auto& cls : p.classes) {
        g.check_subset(cls);
        for (Vertex v : cls) {
            if (seen[v]) throw input_error("partition classes overlap at " + std::to_string(v));
            seen[v] = 1;
        }
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!seen[v]) throw input_error("partition misses vertex " + std::to_string(v));
}

}  // namespace

VertexSet quasi_kernel(const Digraph& g) {
    // Peel phase: repeatedly discard the highest remaining id and its
    // out-neighbors. Scanning descending visits exactly those picks.
    std::vector<char> remaining(g.vertex_count(), 1);
    std::vector<Vertex> peeled;
    for (Vertex v = g.vertex_count() - 1; v >= 0; --v) {
        if (!remaining[v]) continue;
        peeled.push_back(v);
        remaining[v] = 0;
        for (Vertex w : g.out_neighbors(v)) remaining[w] = 0;
    }
    // Combine phase, innermost pick first: keep a pick unless the set built
    // so far already reaches it in one step.
    VertexSet result;
    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
        bool reached = false;
        for (Vertex u : result)
            if (g.has_edge(u, *it)) {
                reached = true;
                break;
            }
        if (!reached) result.insert(*it);
    }
    return result;
}

VertexSet quasi_sink(const Digraph& g) { return quasi_kernel(reverse(g)); }

namespace {

VertexSet solve_out_witness(const Digraph& g, const SubSolver& solver, const VertexSet& verts,
                            int max_hops, int class_index) {
    InducedSubgraph sub = induced(g, verts);
    auto claim = solver.solve(sub.graph);
    if (!claim)
        throw solver_error("solver '" + solver.name + "' failed on class " +
                           std::to_string(class_index));
    if (claim->kind.family != ClassFamily::Out || claim->kind.out_hops > max_hops)
        throw solver_error("solver '" + solver.name + "' returned " + claim->kind.to_string() +
                           " on class " + std::to_string(class_index) + ", wanted out<=" +
                           std::to_string(max_hops));
    return sub.map_back(claim->witness_a);
}

VertexSet step_up_out_worker(const Digraph& g, std::vector<VertexSet> classes,
                             const std::vector<SubSolver>& solvers, int n) {
    if (classes.empty()) return {};
    const int k = static_cast<int>(classes.size()) - 1;
    if (k == 0) return solve_out_witness(g, solvers[0], classes[0], n + 1, 0);

    VertexSet a_k = solve_out_witness(g, solvers[k], classes[k], n, k);
    VertexSet current;
    for (const auto& cls : classes) current.insert(cls.begin(), cls.end());
    VertexSet removed = set_intersect(closure(g, a_k, 1, Direction::Out), current);
    classes.pop_back();
    for (auto& cls : classes) cls = set_minus(cls, removed);
    VertexSet a = step_up_out_worker(g, classes, solvers, n);

    VertexSet reach_a = closure(g, a, 1, Direction::Out);
    VertexSet result = a;
    for (Vertex v : a_k)
        if (!reach_a.count(v)) result.insert(v);
    return result;
}

}  // namespace

ClassClaim step_up_out(const Digraph& g, const PartitionSpec& p,
                       const std::vector<SubSolver>& solvers, int n) {
    if (n < 1) throw input_error("step_up_out requires n >= 1");
    if (solvers.size() != p.classes.size())
        throw input_error("one solver per partition class required");
    check_partition(g, p);
    ClassClaim claim;
    claim.kind = ClassKind::out(n + 1);
    claim.witness_a = step_up_out_worker(g, p.classes, solvers, n);
    return claim;
}

ClassClaim coloring_to_out2(const Digraph& g, const std::vector<int>& coloring) {
    if (static_cast<int>(coloring.size()) != g.vertex_count())
        throw input_error("coloring size does not match vertex count");
    for (const auto& [u, v] : g.edges())
        if (coloring[u] == coloring[v])
            throw input_error("improper coloring: edge (" + std::to_string(u) + "," +
                              std::to_string(v) + ") is monochromatic");
    std::vector<int> colors(coloring);
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
    PartitionSpec p;
    for (int color : colors) {
        VertexSet cls;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (coloring[v] == color) cls.insert(v);
        p.classes.push_back(std::move(cls));
    }
    SubSolver identity{"edgeless-identity", [](const Digraph& sub) -> std::optional<ClassClaim> {
                           ClassClaim c;
                           c.kind = ClassKind::out(1);
                           for (Vertex v = 0; v < sub.vertex_count(); ++v) c.witness_a.insert(v);
                           return c;
                       }};
    std::vector<SubSolver> solvers(p.classes.size(), identity);
    return step_up_out(g, p, solvers, 1);
}

namespace {

struct InoutParts {
    VertexSet x, y;  // out part, in part
    VertexSet a, b;  // out witness, in witness
};

// Re-kinds a claim as INOUT(m,k), widening one-sided claims with an empty
// opposite part. Coverage only loosens, so soundness is preserved.
ClassClaim as_inout_kind(const Digraph& g, ClassClaim claim, int m, int k) {
    VertexSet all = all_vertices(g);
    switch (claim.kind.family) {
        case ClassFamily::InOut:
            if (claim.kind.in_hops > m || claim.kind.out_hops > k)
                throw input_error("claim " + claim.kind.to_string() +
                                  " too weak for inout(" + std::to_string(m) + "," +
                                  std::to_string(k) + ")");
            claim.kind = ClassKind::inout(m, k);
            return claim;
        case ClassFamily::Out: {
            if (claim.kind.out_hops > k)
                throw input_error("claim " + claim.kind.to_string() + " too weak");
            ClassClaim r;
            r.kind = ClassKind::inout(m, k);
            r.witness_a = claim.witness_a;
            r.witness_b = VertexSet{};
            r.partition = {{all, VertexSet{}}};
            return r;
        }
        case ClassFamily::In: {
            if (claim.kind.in_hops > m)
                throw input_error("claim " + claim.kind.to_string() + " too weak");
            ClassClaim r;
            r.kind = ClassKind::inout(m, k);
            r.witness_a = VertexSet{};
            r.witness_b = claim.witness_a;
            r.partition = {{VertexSet{}, all}};
            return r;
        }
    }
    throw input_error("unreachable claim family");
}

InoutParts solve_inout_parts(const Digraph& g, const SubSolver& solver, const VertexSet& verts,
                             int m, int l, int class_index) {
    InducedSubgraph sub = induced(g, verts);
    auto claim = solver.solve(sub.graph);
    if (!claim)
        throw solver_error("solver '" + solver.name + "' failed on class " +
                           std::to_string(class_index));
    ClassClaim norm;
    try {
        norm = as_inout_kind(sub.graph, *claim, m, l);
    } catch (const input_error& e) {
        throw solver_error("solver '" + solver.name + "' on class " +
                           std::to_string(class_index) + ": " + e.what());
    }
    if (!norm.partition || !norm.witness_b)
        throw solver_error("solver '" + solver.name + "' returned a malformed inout claim");
    return {sub.map_back(norm.partition->first), sub.map_back(norm.partition->second),
            sub.map_back(norm.witness_a), sub.map_back(*norm.witness_b)};
}

InoutParts step_up_inout_worker(const Digraph& g, std::vector<VertexSet> classes,
                                const std::vector<SubSolver>& solvers, int m, int l) {
    if (classes.empty()) return {};
    const int k = static_cast<int>(classes.size()) - 1;
    if (k == 0) return solve_inout_parts(g, solvers[0], classes[0], m + 1, l + 1, 0);

    InoutParts pk = solve_inout_parts(g, solvers[k], classes[k], m, l, k);
    VertexSet current;
    for (const auto& cls : classes) current.insert(cls.begin(), cls.end());
    VertexSet out_a = set_intersect(closure(g, pk.a, 1, Direction::Out), current);
    VertexSet in_b = set_intersect(closure(g, pk.b, 1, Direction::In), current);
    VertexSet removed = set_union(out_a, in_b);
    VertexSet s_k = classes.back();
    classes.pop_back();
    for (auto& cls : classes) cls = set_minus(cls, removed);
    InoutParts rec = step_up_inout_worker(g, classes, solvers, m, l);

    InoutParts result;
    result.x = set_union(set_union(pk.x, rec.x), set_minus(out_a, s_k));
    result.y = set_union(set_union(pk.y, rec.y), set_minus(in_b, set_union(s_k, out_a)));
    VertexSet reach_a = closure(g, rec.a, 1, Direction::Out);
    result.a = rec.a;
    for (Vertex v : pk.a)
        if (!reach_a.count(v)) result.a.insert(v);
    VertexSet reach_b = closure(g, rec.b, 1, Direction::In);
    result.b = rec.b;
    for (Vertex v : pk.b)
        if (!reach_b.count(v)) result.b.insert(v);
    return result;
}

}  // namespace

ClassClaim step_up_inout(const Digraph& g, const PartitionSpec& p,
                         const std::vector<SubSolver>& solvers, int m, int l) {
    if (m < 1 || l < 1) throw input_error("step_up_inout requires m, l >= 1");
    if (solvers.size() != p.classes.size())
        throw input_error("one solver per partition class required");
    check_partition(g, p);
    InoutParts parts = step_up_inout_worker(g, p.classes, solvers, m, l);
    ClassClaim claim;
    claim.kind = ClassKind::inout(m + 1, l + 1);
    claim.witness_a = parts.a;
    claim.witness_b = parts.b;
    claim.partition = {{parts.x, parts.y}};
    return claim;
}

ClassClaim TournamentSplit::to_claim() const {
    if (!in_witness) {
        ClassClaim c;
        c.kind = ClassKind::out(2);
        if (out2_witness) c.witness_a.insert(*out2_witness);
        return c;
    }
    ClassClaim c;
    c.kind = ClassKind::inout(1, 1);
    c.witness_a.insert(*out_witness);
    c.witness_b = VertexSet{*in_witness};
    c.partition = {{v_out, v_in}};
    return c;
}

TournamentSplit tournament_split(const Digraph& g, std::optional<Vertex> x_opt) {
    if (!is_semicomplete(g))
        throw input_error("tournament_split requires a graph with no complement edges");
    TournamentSplit result;
    if (g.vertex_count() == 0) return result;
    Vertex x = x_opt.value_or(0);
    g.check_vertex(x);

    VertexSet reach2 = closure(g, {x}, 2, Direction::Out);
    if (static_cast<int>(reach2.size()) == g.vertex_count()) {
        result.out2_witness = x;
        return result;
    }
    Vertex y = -1;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!reach2.count(v)) {
            y = v;
            break;
        }
    // Every vertex missing from Out1(y) must point at x, so x anchors the In
    // side; x itself is pulled out of the Out side to keep the parts disjoint.
    result.v_out = closure(g, {y}, 1, Direction::Out);
    result.v_out.erase(x);
    result.v_in = set_minus(all_vertices(g), result.v_out);
    result.in_witness = x;
    result.out_witness = y;
    return result;
}

namespace {

ClassClaim kn_free_worker(const Digraph& g, int n) {
    if (n == 2) return tournament_split(g).to_claim();

    const VertexSet all = all_vertices(g);
    VertexSet a = greedy_max_independent(g);
    VertexSet reach2 = closure(g, a, 2, Direction::Out);
    if (reach2 == all) {
        ClassClaim base;
        base.kind = ClassKind::out(2);
        base.witness_a = a;
        return n == 3 ? as_inout_kind(g, base, 1, 2) : as_inout_kind(g, base, 2, 2);
    }

    VertexSet c = greedy_max_independent(g, reach2);
    VertexSet l = set_minus(closure(g, a, 1, Direction::In), c);
    VertexSet m_part = set_minus(closure(g, c, 1, Direction::Out), l);
    VertexSet n_part = set_minus(all, set_union(l, m_part));

    if (n == 3) {
        // The leftover block meets no edge of C, so with a triangle-free
        // complement it must be semicomplete.
        InducedSubgraph nsub = induced(g, n_part);
        TournamentSplit ts =
            n_part.empty() ? TournamentSplit{} : tournament_split(nsub.graph);
        if (!ts.in_witness) {
            ClassClaim claim;
            claim.kind = ClassKind::inout(1, 2);
            claim.witness_a = c;
            if (ts.out2_witness) claim.witness_a.insert(nsub.to_original[*ts.out2_witness]);
            claim.witness_b = a;
            claim.partition = {{set_minus(all, l), l}};
            return claim;
        }
        VertexSet p = nsub.map_back(ts.v_out);
        VertexSet r = nsub.map_back(ts.v_in);
        Vertex split_out = nsub.to_original[*ts.out_witness];
        Vertex split_in = nsub.to_original[*ts.in_witness];
        ClassClaim claim;
        claim.kind = ClassKind::inout(2, 1);
        claim.witness_a = c;
        claim.witness_a.insert(split_out);
        VertexSet wb{split_in};
        for (Vertex av : a)
            if (!g.has_edge(av, split_in)) wb.insert(av);
        claim.witness_b = wb;
        claim.partition = {{set_union(m_part, p), set_union(l, r)}};
        return claim;
    }

    // n > 3: the leftover block keeps a (n-1)-clique-free complement, so it
    // recurses; the L/M block carries a one-step claim of its own.
    SubSolver rest_solver{
        "knfree" + std::to_string(n - 1), [n](const Digraph& sub) -> std::optional<ClassClaim> {
            return as_inout_kind(sub, kn_free_worker(sub, n - 1), 2, 2);
        }};
    InducedSubgraph lm_sub = induced(g, set_union(l, m_part));
    ClassClaim lm_claim;
    lm_claim.kind = ClassKind::inout(1, 1);
    lm_claim.witness_a = lm_sub.map_down(c);
    lm_claim.witness_b = lm_sub.map_down(a);
    lm_claim.partition = {{lm_sub.map_down(m_part), lm_sub.map_down(l)}};
    const int expected = lm_sub.graph.vertex_count();
    SubSolver lm_solver{"lm-parts", [lm_claim, expected](const Digraph& sub)
                            -> std::optional<ClassClaim> {
                            if (sub.vertex_count() != expected) return std::nullopt;
                            return lm_claim;
                        }};
    PartitionSpec p2;
    p2.classes = {n_part, set_union(l, m_part)};
    return step_up_inout(g, p2, {rest_solver, lm_solver}, 1, 1);
}

}  // namespace

ClassClaim kn_free_partition(const Digraph& g, int n, int clique_cap) {
    if (n < 2) throw input_error("kn_free_partition requires n >= 2");
    auto clique = max_clique_at_most(complement_undirected(g), n, clique_cap);
    if (clique)
        throw input_error("undirected complement contains K" + std::to_string(n) + " " +
                          to_string(*clique));
    return kn_free_worker(g, n);
}

AbCover ab_cover(const Digraph& g) {
    VertexSet f0 = greedy_max_independent(g);
    VertexSet in1_f0 = closure(g, f0, 1, Direction::In);
    VertexSet f1 = greedy_max_independent(g, in1_f0);
    VertexSet in1_f1 = closure(g, f1, 1, Direction::In);
    AbCover cover;
    for (Vertex v : f0)
        if (in1_f1.count(v)) cover.a.insert(v);
    cover.b = f1;
    for (Vertex v : f0)
        if (!cover.a.count(v)) cover.b.insert(v);
    return cover;
}

bool check_ab_cover(const Digraph& g, const AbCover& cover) {
    for (Vertex v : cover.a)
        if (cover.b.count(v)) return false;
    if (!is_independent(g, cover.a) || !is_independent(g, cover.b)) return false;
    VertexSet covered = set_union(closure(g, cover.a, 2, Direction::Out),
                                  closure(g, cover.b, 2, Direction::In));
    return static_cast<int>(covered.size()) == g.vertex_count();
}

}  // namespace qdg
