#include "qdg/ginfty.hpp"

#include <algorithm>
#include <sstream>

#include "qdg/errors.hpp"

namespace qdg {

std::string SeqVertex::str() const {
    std::ostringstream out;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) out << '.';
        out << ids[i];
    }
    return out.str();
}

SeqVertex SeqVertex::parse(const std::string& text) {
    SeqVertex s;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, '.')) {
        if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
            throw input_error("malformed sequence vertex '" + text + "'");
        s.ids.push_back(std::stoi(token));
    }
    if (s.ids.empty()) throw input_error("empty sequence vertex");
    return s;
}

bool SeqVertex::operator<(const SeqVertex& other) const {
    if (ids.size() != other.ids.size()) return ids.size() < other.ids.size();
    return ids < other.ids;
}

TerminatedDigraph::TerminatedDigraph(Digraph graph, VertexSet terms)
    : g(std::move(graph)), terminals(std::move(terms)) {
    if (terminals.empty()) throw input_error("terminal set must be nonempty");
    g.check_subset(terminals);
}

VertexSet TerminatedDigraph::nonterminals() const {
    VertexSet result;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!terminals.count(v)) result.insert(v);
    return result;
}

bool TerminatedDigraph::valid_seq(const SeqVertex& s) const {
    if (s.ids.empty()) return false;
    for (size_t i = 0; i + 1 < s.ids.size(); ++i) {
        Vertex v = s.ids[i];
        if (v < 0 || v >= g.vertex_count() || is_terminal(v)) return false;
    }
    Vertex last = s.ids.back();
    return last >= 0 && last < g.vertex_count() && is_terminal(last);
}

void TerminatedDigraph::check_seq(const SeqVertex& s) const {
    if (!valid_seq(s))
        throw input_error("invalid sequence vertex '" + s.str() +
                          "': entries before the last must be nonterminals, the last a terminal");
}

TerminatedDigraph reverse(const TerminatedDigraph& td) {
    return TerminatedDigraph(reverse(td.g), td.terminals);
}

int delta(const SeqVertex& x, const SeqVertex& y) {
    const size_t limit = std::min(x.ids.size(), y.ids.size());
    for (size_t i = 0; i < limit; ++i)
        if (x.ids[i] != y.ids[i]) return static_cast<int>(i);
    if (x.ids.size() == y.ids.size()) throw input_error("delta undefined for equal sequences");
    throw input_error("delta undefined: one sequence is a prefix of the other");
}

namespace {

bool lazy_edge_unchecked(const Digraph& g, const SeqVertex& x, const SeqVertex& y) {
    const size_t limit = std::min(x.ids.size(), y.ids.size());
    for (size_t i = 0; i < limit; ++i)
        if (x.ids[i] != y.ids[i]) return g.has_edge(x.ids[i], y.ids[i]);
    return false;  // equal or prefix: no edge
}

}  // namespace

bool lazy_edge(const TerminatedDigraph& td, const SeqVertex& x, const SeqVertex& y) {
    td.check_seq(x);
    td.check_seq(y);
    if (x == y) throw input_error("lazy_edge undefined for equal sequences");
    int d = delta(x, y);
    return td.g.has_edge(x.ids[d], y.ids[d]);
}

TerminatedDigraph odot(const TerminatedDigraph& td, int vertex_cap) {
    const int n = td.g.vertex_count();
    std::vector<Vertex> terms(td.terminals.begin(), td.terminals.end());
    VertexSet nts = td.nonterminals();
    std::vector<Vertex> nonterms(nts.begin(), nts.end());
    const long long total =
        static_cast<long long>(terms.size()) + static_cast<long long>(nonterms.size()) * n;
    if (total > vertex_cap)
        throw cap_error("product refused: " + std::to_string(total) +
                        " vertices exceeds cap " + std::to_string(vertex_cap));

    // Each new vertex is a history of length 1 or 2 over the old graph.
    std::vector<std::vector<Vertex>> history;
    history.reserve(total);
    for (Vertex t : terms) history.push_back({t});
    for (Vertex v : nonterms)
        for (Vertex w = 0; w < n; ++w) history.push_back({v, w});

    std::vector<std::pair<Vertex, Vertex>> edge_list;
    for (int i = 0; i < static_cast<int>(history.size()); ++i)
        for (int j = 0; j < static_cast<int>(history.size()); ++j) {
            if (i == j) continue;
            const auto& a = history[i];
            const auto& b = history[j];
            size_t d = 0;
            while (d < a.size() && d < b.size() && a[d] == b[d]) ++d;
            if (d >= a.size() || d >= b.size()) continue;  // prefix, no edge
            if (td.g.has_edge(a[d], b[d])) edge_list.emplace_back(i, j);
        }

    VertexSet new_terminals;
    for (int i = 0; i < static_cast<int>(history.size()); ++i)
        if (td.terminals.count(history[i].back())) new_terminals.insert(i);
    return TerminatedDigraph(Digraph(static_cast<int>(total), edge_list), new_terminals);
}

int Materialization::id_of(const SeqVertex& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
}

Materialization materialize(const TerminatedDigraph& td, int depth, int cap) {
    if (depth < 0) throw input_error("depth must be non-negative");
    VertexSet nts = td.nonterminals();
    std::vector<Vertex> nonterms(nts.begin(), nts.end());
    std::vector<Vertex> terms(td.terminals.begin(), td.terminals.end());

    long long projected = 0, layer = 1;
    for (int k = 0; k <= depth; ++k) {
        projected += layer * static_cast<long long>(terms.size());
        if (projected > cap)
            throw cap_error("materialize refused: projected vertex count exceeds cap " +
                            std::to_string(cap) + " at depth " + std::to_string(k));
        layer *= static_cast<long long>(nonterms.size());
        if (layer > cap) layer = cap + 1LL;  // avoid overflow, next check trips
    }

    Materialization mat;
    mat.depth = depth;
    std::vector<std::vector<Vertex>> prefixes{{}};
    for (int k = 0; k <= depth; ++k) {
        for (const auto& prefix : prefixes)
            for (Vertex t : terms) {
                SeqVertex s;
                s.ids = prefix;
                s.ids.push_back(t);
                mat.labels.push_back(std::move(s));
            }
        if (k == depth) break;
        std::vector<std::vector<Vertex>> next;
        next.reserve(prefixes.size() * nonterms.size());
        for (const auto& prefix : prefixes)
            for (Vertex v : nonterms) {
                auto extended = prefix;
                extended.push_back(v);
                next.push_back(std::move(extended));
            }
        prefixes = std::move(next);
    }
    for (int i = 0; i < static_cast<int>(mat.labels.size()); ++i) {
        td.check_seq(mat.labels[i]);
        mat.index.emplace(mat.labels[i], i);
    }

    std::vector<std::pair<Vertex, Vertex>> edge_list;
    const int count = static_cast<int>(mat.labels.size());
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j)
            if (i != j && lazy_edge_unchecked(td.g, mat.labels[i], mat.labels[j]))
                edge_list.emplace_back(i, j);
    mat.digraph = Digraph(count, edge_list);
    return mat;
}

}  // namespace qdg
