#include "qdg/digraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "qdg/errors.hpp"

namespace qdg {

namespace {

long long edge_key(int n, Vertex u, Vertex v) {
    return static_cast<long long>(u) * n + v;
}

}  // namespace

Digraph::Digraph(int n, const std::vector<std::pair<Vertex, Vertex>>& edge_list) : n_(n) {
    if (n < 0) throw input_error("vertex count must be non-negative");
    out_.resize(n_);
    in_.resize(n_);
    for (const auto& [u, v] : edge_list) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw input_error("edge endpoint out of range: (" + std::to_string(u) + "," +
                              std::to_string(v) + ")");
        if (u == v) throw input_error("loop edge rejected at vertex " + std::to_string(u));
        if (keys_.insert(edge_key(n_, u, v)).second) {
            out_[u].push_back(v);
            in_[v].push_back(u);
            ++m_;
        }
    }
    for (auto& a : out_) std::sort(a.begin(), a.end());
    for (auto& a : in_) std::sort(a.begin(), a.end());
}

bool Digraph::has_edge(Vertex u, Vertex v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
    return keys_.count(edge_key(n_, u, v)) > 0;
}

const std::vector<Vertex>& Digraph::out_neighbors(Vertex v) const {
    check_vertex(v);
    return out_[v];
}

const std::vector<Vertex>& Digraph::in_neighbors(Vertex v) const {
    check_vertex(v);
    return in_[v];
}

std::vector<std::pair<Vertex, Vertex>> Digraph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> result;
    result.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : out_[u]) result.emplace_back(u, v);
    return result;
}

void Digraph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_)
        throw input_error("vertex " + std::to_string(v) + " out of range 0.." +
                          std::to_string(n_ - 1));
}

void Digraph::check_subset(const VertexSet& a) const {
    for (Vertex v : a) check_vertex(v);
}

bool UndirectedGraph::has_pair(Vertex u, Vertex v) const {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    return pairs.count({u, v}) > 0;
}

std::vector<Vertex> UndirectedGraph::neighbors(Vertex v) const {
    std::vector<Vertex> result;
    for (Vertex u = 0; u < n; ++u)
        if (u != v && has_pair(u, v)) result.push_back(u);
    return result;
}

VertexSet InducedSubgraph::map_back(const VertexSet& local) const {
    VertexSet result;
    for (Vertex v : local) {
        if (v < 0 || v >= static_cast<int>(to_original.size()))
            throw input_error("local vertex out of range in map_back");
        result.insert(to_original[v]);
    }
    return result;
}

VertexSet InducedSubgraph::map_down(const VertexSet& original) const {
    VertexSet result;
    for (Vertex v : original) {
        if (v < 0 || v >= static_cast<int>(to_local.size()) || to_local[v] < 0)
            throw input_error("vertex " + std::to_string(v) + " not in induced subgraph");
        result.insert(to_local[v]);
    }
    return result;
}

VertexSet closure(const Digraph& g, const VertexSet& from, int hops, Direction dir) {
    g.check_subset(from);
    if (hops < 0) throw input_error("hop count must be non-negative");
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<Vertex> queue;
    for (Vertex v : from) {
        dist[v] = 0;
        queue.push_back(v);
    }
    VertexSet result(from);
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        if (dist[v] >= hops) continue;
        const auto& next = dir == Direction::Out ? g.out_neighbors(v) : g.in_neighbors(v);
        for (Vertex w : next) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                result.insert(w);
                queue.push_back(w);
            }
        }
    }
    return result;
}

bool is_independent(const Digraph& g, const VertexSet& a) {
    g.check_subset(a);
    for (Vertex u : a)
        for (Vertex v : a)
            if (u != v && g.has_edge(u, v)) return false;
    return true;
}

InducedSubgraph induced(const Digraph& g, const VertexSet& w) {
    g.check_subset(w);
    InducedSubgraph result;
    result.to_original.assign(w.begin(), w.end());
    result.to_local.assign(g.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(result.to_original.size()); ++i)
        result.to_local[result.to_original[i]] = i;
    std::vector<std::pair<Vertex, Vertex>> edge_list;
    for (Vertex u : w)
        for (Vertex v : g.out_neighbors(u))
            if (result.to_local[v] >= 0)
                edge_list.emplace_back(result.to_local[u], result.to_local[v]);
    result.graph = Digraph(static_cast<int>(w.size()), edge_list);
    return result;
}

Digraph reverse(const Digraph& g) {
    std::vector<std::pair<Vertex, Vertex>> edge_list;
    edge_list.reserve(g.edge_count());
    for (const auto& [u, v] : g.edges()) edge_list.emplace_back(v, u);
    return Digraph(g.vertex_count(), edge_list);
}

UndirectedGraph complement_undirected(const Digraph& g) {
    UndirectedGraph result;
    result.n = g.vertex_count();
    for (Vertex u = 0; u < result.n; ++u)
        for (Vertex v = u + 1; v < result.n; ++v)
            if (!g.has_edge(u, v) && !g.has_edge(v, u)) result.pairs.insert({u, v});
    return result;
}

bool is_tournament(const Digraph& g) {
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = u + 1; v < g.vertex_count(); ++v)
            if (g.has_edge(u, v) == g.has_edge(v, u)) return false;
    return true;
}

bool is_semicomplete(const Digraph& g) {
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = u + 1; v < g.vertex_count(); ++v)
            if (!g.has_edge(u, v) && !g.has_edge(v, u)) return false;
    return true;
}

namespace {

bool extend_clique(const UndirectedGraph& gu, int size, Vertex start,
                   std::vector<Vertex>& current, VertexSet& found) {
    if (static_cast<int>(current.size()) == size) {
        found = VertexSet(current.begin(), current.end());
        return true;
    }
    for (Vertex v = start; v < gu.n; ++v) {
        bool compatible = true;
        for (Vertex u : current)
            if (!gu.has_pair(u, v)) {
                compatible = false;
                break;
            }
        if (!compatible) continue;
        if (gu.n - v < size - static_cast<int>(current.size())) break;
        current.push_back(v);
        if (extend_clique(gu, size, v + 1, current, found)) return true;
        current.pop_back();
    }
    return false;
}

}  // namespace

std::optional<VertexSet> max_clique_at_most(const UndirectedGraph& gu, int size,
                                            int vertex_cap) {
    if (size < 1) throw input_error("clique size must be at least 1");
    if (gu.n > vertex_cap)
        throw cap_error("clique search refused: graph has " + std::to_string(gu.n) +
                        " vertices, cap is " + std::to_string(vertex_cap));
    if (size > gu.n) return std::nullopt;
    std::vector<Vertex> current;
    VertexSet found;
    if (extend_clique(gu, size, 0, current, found)) return found;
    return std::nullopt;
}

namespace {

// Iterative Tarjan; components finish in an order we normalize afterwards.
struct TarjanState {
    const Digraph& g;
    std::vector<int> index, low, comp;
    std::vector<bool> on_stack;
    std::vector<Vertex> stack;
    int counter = 0, comp_count = 0;

    explicit TarjanState(const Digraph& g_)
        : g(g_), index(g_.vertex_count(), -1), low(g_.vertex_count(), 0),
          comp(g_.vertex_count(), -1), on_stack(g_.vertex_count(), false) {}

    void run(Vertex root) {
        std::vector<std::pair<Vertex, size_t>> frames;
        frames.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, next] = frames.back();
            const auto& outs = g.out_neighbors(v);
            if (next < outs.size()) {
                Vertex w = outs[next++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    while (true) {
                        Vertex w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comp_count;
                        if (w == v) break;
                    }
                    ++comp_count;
                }
                frames.pop_back();
                if (!frames.empty()) {
                    Vertex parent = frames.back().first;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
        }
    }
};

}  // namespace

Condensation condensation(const Digraph& g) {
    const int n = g.vertex_count();
    TarjanState tarjan(g);
    for (Vertex v = 0; v < n; ++v)
        if (tarjan.index[v] < 0) tarjan.run(v);

    // Renumber classes by ascending least member.
    std::vector<VertexSet> raw(tarjan.comp_count);
    for (Vertex v = 0; v < n; ++v) raw[tarjan.comp[v]].insert(v);
    std::sort(raw.begin(), raw.end(),
              [](const VertexSet& a, const VertexSet& b) { return *a.begin() < *b.begin(); });

    Condensation result;
    result.classes = std::move(raw);
    result.class_of.assign(n, -1);
    const int k = static_cast<int>(result.classes.size());
    for (int i = 0; i < k; ++i)
        for (Vertex v : result.classes[i]) result.class_of[v] = i;

    // X <= Y when some (hence, classes being strongly connected, every) cross
    // edge runs from Y into X. Close transitively.
    result.below.assign(k, std::vector<bool>(k, false));
    for (int i = 0; i < k; ++i) result.below[i][i] = true;
    for (const auto& [u, v] : g.edges()) {
        int cu = result.class_of[u], cv = result.class_of[v];
        if (cu != cv) result.below[cv][cu] = true;
    }
    for (int mid = 0; mid < k; ++mid)
        for (int i = 0; i < k; ++i)
            if (result.below[i][mid])
                for (int j = 0; j < k; ++j)
                    if (result.below[mid][j]) result.below[i][j] = true;

    result.is_total_order = true;
    for (int i = 0; i < k && result.is_total_order; ++i)
        for (int j = 0; j < k; ++j)
            if (!result.below[i][j] && !result.below[j][i]) {
                result.is_total_order = false;
                break;
            }
    for (int i = 0; i < k; ++i) {
        bool greatest = true;
        for (int j = 0; j < k; ++j)
            if (!result.below[j][i]) {
                greatest = false;
                break;
            }
        if (greatest) {
            result.last_class = i;
            break;
        }
    }
    return result;
}

VertexSet greedy_max_independent(const Digraph& g, const VertexSet& forbidden) {
    g.check_subset(forbidden);
    VertexSet result;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (forbidden.count(v)) continue;
        bool adjacent = false;
        for (Vertex u : result)
            if (g.has_edge(u, v) || g.has_edge(v, u)) {
                adjacent = true;
                break;
            }
        if (!adjacent) result.insert(v);
    }
    return result;
}

std::string to_string(const VertexSet& s) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (Vertex v : s) {
        if (!first) out << ',';
        out << v;
        first = false;
    }
    out << '}';
    return out.str();
}

}  // namespace qdg
