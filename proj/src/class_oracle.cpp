#include "qdg/class_oracle.hpp"

#include <algorithm>
#include <sstream>

#include "qdg/errors.hpp"

namespace qdg {

namespace {

std::string hops_text(int hops) {
    return hops == kInfiniteHops ? "inf" : std::to_string(hops);
}

}  // namespace

std::string ClassKind::to_string() const {
    switch (family) {
        case ClassFamily::Out:
            return "out" + hops_text(out_hops);
        case ClassFamily::In:
            return "in" + hops_text(in_hops);
        case ClassFamily::InOut:
            return "inout" + hops_text(in_hops) + hops_text(out_hops);
    }
    return "?";
}

std::optional<ClassKind> parse_class_kind(const std::string& text) {
    auto parse_hops = [](const std::string& s) -> std::optional<int> {
        if (s == "inf") return kInfiniteHops;
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            return std::nullopt;
        int value = std::stoi(s);
        if (value < 1) return std::nullopt;
        return value;
    };
    if (text.rfind("inout", 0) == 0) {
        std::string rest = text.substr(5);
        // Two single digits, or "inf" components.
        for (size_t split = 1; split < rest.size(); ++split) {
            auto m = parse_hops(rest.substr(0, split));
            auto k = parse_hops(rest.substr(split));
            if (m && k) return ClassKind::inout(*m, *k);
        }
        return std::nullopt;
    }
    if (text.rfind("out", 0) == 0) {
        auto n = parse_hops(text.substr(3));
        if (n) return ClassKind::out(*n);
        return std::nullopt;
    }
    if (text.rfind("in", 0) == 0) {
        auto n = parse_hops(text.substr(2));
        if (n) return ClassKind::in(*n);
        return std::nullopt;
    }
    return std::nullopt;
}

void VerifyReport::fail(std::string subject, std::string reason) {
    ok = false;
    failures.push_back({std::move(subject), std::move(reason)});
}

namespace {

void check_side(const Digraph& part_graph, const InducedSubgraph* relabel,
                const VertexSet& witness_original, int hops, Direction dir,
                VerifyReport& report) {
    // `relabel` maps the witness into the part; null means whole graph.
    VertexSet witness_local;
    if (relabel) {
        for (Vertex v : witness_original) {
            if (v >= static_cast<int>(relabel->to_local.size()) || v < 0 ||
                relabel->to_local[v] < 0) {
                report.fail(std::to_string(v), "witness vertex outside its part");
                continue;
            }
            witness_local.insert(relabel->to_local[v]);
        }
    } else {
        witness_local = witness_original;
    }
    if (!is_independent(part_graph, witness_local)) {
        for (Vertex u : witness_local)
            for (Vertex v : witness_local)
                if (u != v && part_graph.has_edge(u, v)) {
                    Vertex a = relabel ? relabel->to_original[u] : u;
                    Vertex b = relabel ? relabel->to_original[v] : v;
                    report.fail(std::to_string(a) + "->" + std::to_string(b),
                                "witness members adjacent");
                }
    }
    VertexSet covered = closure(part_graph, witness_local, hops, dir);
    for (Vertex v = 0; v < part_graph.vertex_count(); ++v)
        if (!covered.count(v)) {
            Vertex orig = relabel ? relabel->to_original[v] : v;
            report.fail(std::to_string(orig), "uncovered");
        }
}

}  // namespace

VerifyReport verify_claim(const Digraph& g, const ClassClaim& claim) {
    g.check_subset(claim.witness_a);
    if (claim.witness_b) g.check_subset(*claim.witness_b);
    if (claim.partition) {
        g.check_subset(claim.partition->first);
        g.check_subset(claim.partition->second);
    }

    VerifyReport report;
    if (claim.kind.family == ClassFamily::Out || claim.kind.family == ClassFamily::In) {
        if (claim.partition) report.fail("claim", "partition present for a one-sided kind");
        if (claim.witness_b) report.fail("claim", "witness_b present for a one-sided kind");
        if (!report.ok) return report;
        const bool out = claim.kind.family == ClassFamily::Out;
        check_side(g, nullptr, claim.witness_a,
                   out ? claim.kind.out_hops : claim.kind.in_hops,
                   out ? Direction::Out : Direction::In, report);
        return report;
    }

    if (!claim.partition || !claim.witness_b) {
        report.fail("claim", "inout claim missing partition or witness_b");
        return report;
    }
    const auto& [v_out, v_in] = *claim.partition;
    for (Vertex v : v_out)
        if (v_in.count(v)) report.fail(std::to_string(v), "partition overlap");
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!v_out.count(v) && !v_in.count(v))
            report.fail(std::to_string(v), "partition misses vertex");
    if (!report.ok) return report;

    InducedSubgraph out_part = induced(g, v_out);
    InducedSubgraph in_part = induced(g, v_in);
    check_side(out_part.graph, &out_part, claim.witness_a, claim.kind.out_hops,
               Direction::Out, report);
    check_side(in_part.graph, &in_part, *claim.witness_b, claim.kind.in_hops,
               Direction::In, report);
    return report;
}

namespace {

// Size-ascending, then lexicographic, enumeration of independent sets until
// `test` accepts one.
std::optional<VertexSet> first_covering_independent(
    const Digraph& g, const std::function<bool(const VertexSet&)>& test) {
    const int n = g.vertex_count();
    std::vector<Vertex> current;
    std::function<bool(int, int, VertexSet&)> search = [&](int start, int want,
                                                           VertexSet& found) {
        if (want == 0) {
            VertexSet candidate(current.begin(), current.end());
            if (test(candidate)) {
                found = candidate;
                return true;
            }
            return false;
        }
        for (Vertex v = start; v <= n - want; ++v) {
            bool compatible = true;
            for (Vertex u : current)
                if (g.has_edge(u, v) || g.has_edge(v, u)) {
                    compatible = false;
                    break;
                }
            if (!compatible) continue;
            current.push_back(v);
            if (search(v + 1, want - 1, found)) return true;
            current.pop_back();
        }
        return false;
    };
    for (int size = 0; size <= n; ++size) {
        VertexSet found;
        current.clear();
        if (search(0, size, found)) return found;
    }
    return std::nullopt;
}

std::optional<VertexSet> decide_one_sided(const Digraph& g, int hops, Direction dir) {
    const int n = g.vertex_count();
    return first_covering_independent(g, [&](const VertexSet& candidate) {
        return static_cast<int>(closure(g, candidate, hops, dir).size()) == n;
    });
}

}  // namespace

std::optional<ClassClaim> decide_class(const Digraph& g, ClassKind kind,
                                       const OracleCaps& caps) {
    const int n = g.vertex_count();
    if (kind.family == ClassFamily::InOut) {
        if (n > caps.max_inout_vertices)
            throw cap_error("decide refused: " + std::to_string(n) +
                            " vertices exceeds inout cap " +
                            std::to_string(caps.max_inout_vertices));
        for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
            VertexSet v_in, v_out;
            for (Vertex v = 0; v < n; ++v)
                (mask >> v & 1 ? v_in : v_out).insert(v);
            InducedSubgraph in_part = induced(g, v_in);
            auto wb = decide_one_sided(in_part.graph, kind.in_hops, Direction::In);
            if (!wb) continue;
            InducedSubgraph out_part = induced(g, v_out);
            auto wa = decide_one_sided(out_part.graph, kind.out_hops, Direction::Out);
            if (!wa) continue;
            ClassClaim claim;
            claim.kind = kind;
            claim.witness_a = out_part.map_back(*wa);
            claim.witness_b = in_part.map_back(*wb);
            claim.partition = {{v_out, v_in}};
            return claim;
        }
        return std::nullopt;
    }
    if (n > caps.max_outin_vertices)
        throw cap_error("decide refused: " + std::to_string(n) + " vertices exceeds cap " +
                        std::to_string(caps.max_outin_vertices));
    const bool out = kind.family == ClassFamily::Out;
    auto witness = decide_one_sided(g, out ? kind.out_hops : kind.in_hops,
                                    out ? Direction::Out : Direction::In);
    if (!witness) return std::nullopt;
    ClassClaim claim;
    claim.kind = kind;
    claim.witness_a = *witness;
    return claim;
}

void decide_all_small(int n, ClassKind kind,
                      const std::function<void(unsigned long long, const Digraph&,
                                               const std::optional<ClassClaim>&)>& fn,
                      const OracleCaps& caps) {
    if (n < 0 || n > 4)
        throw cap_error("exhaustive enumeration refused for n=" + std::to_string(n) +
                        ", cap is 4");
    std::vector<std::pair<Vertex, Vertex>> slots;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v) slots.emplace_back(u, v);
    const unsigned long long total = 1ull << slots.size();
    for (unsigned long long mask = 0; mask < total; ++mask) {
        std::vector<std::pair<Vertex, Vertex>> edge_list;
        for (size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1) edge_list.push_back(slots[i]);
        Digraph g(n, edge_list);
        fn(mask, g, decide_class(g, kind, caps));
    }
}

std::string to_string(const ClassClaim& claim) {
    std::ostringstream out;
    out << claim.kind.to_string() << " witness=" << to_string(claim.witness_a);
    if (claim.witness_b) out << " in_witness=" << to_string(*claim.witness_b);
    if (claim.partition)
        out << " out_part=" << to_string(claim.partition->first)
            << " in_part=" << to_string(claim.partition->second);
    return out.str();
}

}  // namespace qdg
