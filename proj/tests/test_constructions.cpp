#include <doctest.h>

#include "helpers.hpp"
#include "qdg/constructions.hpp"
#include "qdg/errors.hpp"

using namespace qdg;
using namespace qdg::test;

namespace {

SubSolver oracle_solver(ClassKind kind) {
    return {kind.to_string() + "-oracle",
            [kind](const Digraph& sub) { return decide_class(sub, kind); }};
}

bool verifies_as(const Digraph& g, const VertexSet& witness, ClassKind kind) {
    ClassClaim claim;
    claim.kind = kind;
    claim.witness_a = witness;
    return verify_claim(g, claim).ok;
}

}  // namespace

TEST_CASE("quasi_kernel on the fixtures") {
    CHECK(quasi_kernel(e3()) == VertexSet{0, 1, 2});
    // Peel trace on the 3-cycle: remove 2 and its out-neighbor 0, solve {1},
    // and 2 is already reached from 1.
    CHECK(quasi_kernel(c3()) == VertexSet{1});
    CHECK(verifies_as(c3(), quasi_kernel(c3()), ClassKind::out(2)));
    CHECK(quasi_kernel(p3()) == VertexSet{0, 2});
    CHECK(verifies_as(p3(), quasi_kernel(p3()), ClassKind::out(2)));
    CHECK(quasi_kernel(Digraph(0, {})).empty());
}

TEST_CASE("quasi_kernel output verifies exhaustively on three vertices") {
    decide_all_small(3, ClassKind::out(2), [](unsigned long long, const Digraph& g,
                                              const std::optional<ClassClaim>&) {
        VertexSet witness = quasi_kernel(g);
        CHECK(is_independent(g, witness));
        CHECK(verifies_as(g, witness, ClassKind::out(2)));
    });
}

TEST_CASE("quasi_sink is the dual construction") {
    CHECK(quasi_sink(e3()) == VertexSet{0, 1, 2});
    CHECK(verify_claim(p3(), ClassClaim{ClassKind::in(2), quasi_sink(p3()), {}, {}}).ok);
    CHECK(verify_claim(c3(), ClassClaim{ClassKind::in(2), quasi_sink(c3()), {}, {}}).ok);
}

TEST_CASE("step_up_out combines per-class witnesses") {
    PartitionSpec singletons;
    singletons.classes = {{0}, {1}, {2}};
    std::vector<SubSolver> solvers(3, oracle_solver(ClassKind::out(1)));
    ClassClaim claim = step_up_out(e3(), singletons, solvers, 1);
    CHECK(claim.kind == ClassKind::out(2));
    CHECK(claim.witness_a == VertexSet{0, 1, 2});
    CHECK(verify_claim(e3(), claim).ok);

    PartitionSpec two;
    two.classes = {{2}, {0, 1}};
    std::vector<SubSolver> cycle_solvers = {oracle_solver(ClassKind::out(2)),
                                            oracle_solver(ClassKind::out(1))};
    ClassClaim cycle_claim = step_up_out(c3(), two, cycle_solvers, 1);
    CHECK(verify_claim(c3(), cycle_claim).ok);
}

TEST_CASE("step_up_out propagates solver failures with the class index") {
    PartitionSpec p;
    p.classes = {{0, 1, 2}};
    SubSolver refusing{"refuser", [](const Digraph&) { return std::nullopt; }};
    CHECK_THROWS_AS(step_up_out(c3(), p, {refusing}, 1), solver_error);
    try {
        step_up_out(c3(), p, {refusing}, 1);
    } catch (const solver_error& e) {
        CHECK(std::string(e.what()).find("class 0") != std::string::npos);
    }
}

TEST_CASE("coloring_to_out2 wraps the stepping combinator") {
    ClassClaim path_claim = coloring_to_out2(p3(), {0, 1, 0});
    CHECK(path_claim.kind == ClassKind::out(2));
    CHECK(verify_claim(p3(), path_claim).ok);

    ClassClaim edgeless_claim = coloring_to_out2(e3(), {0, 0, 0});
    CHECK(edgeless_claim.witness_a == VertexSet{0, 1, 2});

    ClassClaim cycle_claim = coloring_to_out2(c3(), {0, 1, 2});
    CHECK(verify_claim(c3(), cycle_claim).ok);

    CHECK_THROWS_AS(coloring_to_out2(p3(), {0, 0, 1}), input_error);
}

TEST_CASE("step_up_inout base case passes the solver claim through") {
    PartitionSpec p;
    p.classes = {{0, 1, 2}};
    ClassClaim claim = step_up_inout(p3(), p, {oracle_solver(ClassKind::inout(2, 2))}, 1, 1);
    CHECK(claim.kind == ClassKind::inout(2, 2));
    CHECK(verify_claim(p3(), claim).ok);
}

TEST_CASE("step_up_inout combines two path copies") {
    Digraph two_paths(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
    PartitionSpec p;
    p.classes = {{0, 1, 2}, {3, 4, 5}};
    std::vector<SubSolver> solvers(2, oracle_solver(ClassKind::inout(1, 1)));
    ClassClaim claim = step_up_inout(two_paths, p, solvers, 1, 1);
    CHECK(claim.kind == ClassKind::inout(2, 2));
    CHECK(verify_claim(two_paths, claim).ok);
}

TEST_CASE("step_up_inout with transitive-order classes and cross edges") {
    // Two blocks, each ordered by descending edges; arbitrary cross edges.
    Digraph g(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 4}, {5, 1}, {2, 3}});
    PartitionSpec p;
    p.classes = {{0, 1, 2}, {3, 4, 5}};
    // Any induced piece of an ascending order sinks into its largest vertex.
    SubSolver order_solver{"order-sink", [](const Digraph& sub) -> std::optional<ClassClaim> {
                               ClassClaim claim;
                               claim.kind = ClassKind::inout(1, 1);
                               claim.witness_a = {};
                               claim.witness_b = VertexSet{};
                               VertexSet all;
                               for (Vertex v = 0; v < sub.vertex_count(); ++v) all.insert(v);
                               if (sub.vertex_count() > 0)
                                   claim.witness_b->insert(sub.vertex_count() - 1);
                               claim.partition = {{VertexSet{}, all}};
                               return claim;
                           }};
    ClassClaim claim = step_up_inout(g, p, {order_solver, order_solver}, 1, 1);
    CHECK(claim.kind == ClassKind::inout(2, 2));
    CHECK(verify_claim(g, claim).ok);
}

TEST_CASE("step_up combinators verify on random oracle-backed partitions") {
    std::mt19937 rng(61);
    for (int round = 0; round < 25; ++round) {
        int n = 2 + static_cast<int>(rng() % 5);
        Digraph g = random_digraph(rng, n, 0.3);
        int class_count = 1 + static_cast<int>(rng() % 2);
        PartitionSpec p;
        p.classes.assign(class_count, {});
        for (Vertex v = 0; v < n; ++v)
            p.classes[rng() % class_count].insert(v);

        std::vector<SubSolver> out_solvers;
        for (int i = 0; i < class_count; ++i)
            out_solvers.push_back(
                oracle_solver(i == 0 ? ClassKind::out(2) : ClassKind::out(1)));
        ClassClaim out_claim = step_up_out(g, p, out_solvers, 1);
        CHECK(out_claim.kind == ClassKind::out(2));
        CHECK(verify_claim(g, out_claim).ok);

        std::vector<SubSolver> inout_solvers;
        for (int i = 0; i < class_count; ++i)
            inout_solvers.push_back(
                oracle_solver(i == 0 ? ClassKind::inout(2, 2) : ClassKind::inout(1, 1)));
        ClassClaim inout_claim = step_up_inout(g, p, inout_solvers, 1, 1);
        CHECK(inout_claim.kind == ClassKind::inout(2, 2));
        CHECK(verify_claim(g, inout_claim).ok);
    }
}

TEST_CASE("tournament_split fixtures") {
    TournamentSplit covered = tournament_split(tt3(), 0);
    CHECK(covered.out2_witness == 0);
    CHECK(verify_claim(tt3(), covered.to_claim()).ok);

    TournamentSplit split = tournament_split(rt4(), 0);
    REQUIRE(split.in_witness.has_value());
    CHECK(split.out_witness == 1);
    CHECK(split.v_out == VertexSet{1});
    CHECK(split.v_in == VertexSet{0, 2, 3});
    CHECK(split.in_witness == 0);
    CHECK(verify_claim(rt4(), split.to_claim()).ok);

    TournamentSplit cycle = tournament_split(c3(), 0);
    CHECK(cycle.out2_witness == 0);

    CHECK_THROWS_AS(tournament_split(p3()), input_error);
}

TEST_CASE("tournament_split verifies for every small tournament and probe") {
    // All 1024 orientations of the 5-vertex complete graph, every probe.
    std::vector<std::pair<Vertex, Vertex>> slots;
    for (Vertex u = 0; u < 5; ++u)
        for (Vertex v = u + 1; v < 5; ++v) slots.emplace_back(u, v);
    for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (size_t i = 0; i < slots.size(); ++i) {
            auto [u, v] = slots[i];
            if (mask >> i & 1)
                edges.emplace_back(u, v);
            else
                edges.emplace_back(v, u);
        }
        Digraph g(5, edges);
        for (Vertex x = 0; x < 5; ++x)
            CHECK(verify_claim(g, tournament_split(g, x).to_claim()).ok);
    }
}

TEST_CASE("kn_free_partition kinds per clique bound") {
    ClassClaim tournament_claim = kn_free_partition(tt3(), 2);
    CHECK(tournament_claim.kind == ClassKind::out(2));
    CHECK(verify_claim(tt3(), tournament_claim).ok);

    ClassClaim path_claim = kn_free_partition(p3(), 3);
    bool refined = path_claim.kind == ClassKind::inout(1, 2) ||
                   path_claim.kind == ClassKind::inout(2, 1);
    CHECK(refined);
    CHECK(verify_claim(p3(), path_claim).ok);

    ClassClaim edgeless_claim = kn_free_partition(e3(), 4);
    CHECK(edgeless_claim.kind == ClassKind::inout(2, 2));
    CHECK(verify_claim(e3(), edgeless_claim).ok);

    CHECK_THROWS_AS(kn_free_partition(e3(), 3), input_error);
    try {
        kn_free_partition(e3(), 3);
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("{0,1,2}") != std::string::npos);
    }
}

TEST_CASE("kn_free_partition verifies on random admissible graphs") {
    std::mt19937 rng(71);
    int done = 0;
    while (done < 30) {
        int n = 1 + static_cast<int>(rng() % 7);
        Digraph g = random_digraph(rng, n, 0.5);
        if (max_clique_at_most(complement_undirected(g), 3).has_value()) continue;
        ++done;
        ClassClaim claim = kn_free_partition(g, 3);
        CHECK(verify_claim(g, claim).ok);
        ClassClaim wide = kn_free_partition(g, 4);
        CHECK(wide.kind == ClassKind::inout(2, 2));
        CHECK(verify_claim(g, wide).ok);
    }
}

TEST_CASE("ab_cover fixtures and coverage") {
    AbCover path_cover = ab_cover(p3());
    CHECK(path_cover.a.empty());
    CHECK(path_cover.b == VertexSet{0, 2});
    CHECK(check_ab_cover(p3(), path_cover));

    AbCover edgeless_cover = ab_cover(e3());
    CHECK(edgeless_cover.a.empty());
    CHECK(edgeless_cover.b == VertexSet{0, 1, 2});
    CHECK(check_ab_cover(e3(), edgeless_cover));

    CHECK(check_ab_cover(c3(), ab_cover(c3())));

    std::mt19937 rng(83);
    for (int round = 0; round < 50; ++round) {
        Digraph g = random_digraph(rng, 1 + static_cast<int>(rng() % 9), 0.3);
        CHECK(check_ab_cover(g, ab_cover(g)));
    }
}
