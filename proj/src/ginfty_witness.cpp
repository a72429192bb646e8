#include "qdg/ginfty_witness.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "qdg/constructions.hpp"
#include "qdg/errors.hpp"

namespace qdg {

LazySet LazySet::finite(std::vector<SeqVertex> items) {
    LazySet s;
    s.kind_ = Kind::Finite;
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    s.items_ = std::move(items);
    return s;
}

LazySet LazySet::pattern(std::vector<PatternBlock> blocks) {
    LazySet s;
    s.kind_ = Kind::Pattern;
    s.blocks_ = std::move(blocks);
    return s;
}

LazySet LazySet::predicate(std::string descriptor, std::function<bool(const SeqVertex&)> pred) {
    LazySet s;
    s.kind_ = Kind::Predicate;
    s.descriptor_ = std::move(descriptor);
    s.pred_ = std::move(pred);
    return s;
}

namespace {

bool match_blocks(const std::vector<PatternBlock>& blocks, size_t block_index,
                  const std::vector<Vertex>& ids, size_t pos) {
    if (block_index == blocks.size()) return pos == ids.size();
    const PatternBlock& block = blocks[block_index];
    switch (block.kind) {
        case PatternBlock::Kind::Literal:
            return pos < ids.size() && ids[pos] == block.literal &&
                   match_blocks(blocks, block_index + 1, ids, pos + 1);
        case PatternBlock::Kind::OneOf:
            return pos < ids.size() && block.set.count(ids[pos]) > 0 &&
                   match_blocks(blocks, block_index + 1, ids, pos + 1);
        case PatternBlock::Kind::Repeat:
            for (size_t take = pos; take <= ids.size(); ++take) {
                if (match_blocks(blocks, block_index + 1, ids, take)) return true;
                if (take == ids.size() || block.set.count(ids[take]) == 0) break;
            }
            return false;
    }
    return false;
}

}  // namespace

bool LazySet::contains(const SeqVertex& s) const {
    switch (kind_) {
        case Kind::Finite:
            return std::binary_search(items_.begin(), items_.end(), s);
        case Kind::Pattern:
            return match_blocks(blocks_, 0, s.ids, 0);
        case Kind::Predicate:
            return pred_(s);
    }
    return false;
}

std::string format_pattern(const std::vector<PatternBlock>& blocks) {
    std::ostringstream out;
    out << "pattern ";
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (i) out << " . ";
        const PatternBlock& block = blocks[i];
        switch (block.kind) {
            case PatternBlock::Kind::Repeat: {
                out << '(';
                bool first = true;
                for (Vertex v : block.set) {
                    if (!first) out << ',';
                    out << v;
                    first = false;
                }
                out << ")*";
                break;
            }
            case PatternBlock::Kind::OneOf: {
                out << '{';
                bool first = true;
                for (Vertex v : block.set) {
                    if (!first) out << ',';
                    out << v;
                    first = false;
                }
                out << '}';
                break;
            }
            case PatternBlock::Kind::Literal:
                out << block.literal;
                break;
        }
    }
    return out.str();
}

namespace {

VertexSet parse_id_list(const std::string& body, const std::string& context) {
    VertexSet ids;
    std::string token;
    std::istringstream in(body);
    while (std::getline(in, token, ',')) {
        size_t begin = token.find_first_not_of(" \t");
        size_t end = token.find_last_not_of(" \t");
        if (begin == std::string::npos) continue;
        token = token.substr(begin, end - begin + 1);
        if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
            throw input_error("bad id '" + token + "' in " + context);
        ids.insert(std::stoi(token));
    }
    return ids;
}

}  // namespace

std::vector<PatternBlock> parse_pattern(const std::string& text) {
    std::vector<PatternBlock> blocks;
    std::string body = text;
    if (body.rfind("pattern ", 0) == 0) body = body.substr(8);
    size_t pos = 0;
    auto skip_space = [&] {
        while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
    };
    bool expect_block = true;
    while (true) {
        skip_space();
        if (pos >= body.size()) break;
        if (!expect_block) {
            if (body[pos] != '.') throw input_error("expected '.' between pattern blocks");
            ++pos;
            expect_block = true;
            continue;
        }
        if (body[pos] == '(') {
            size_t close = body.find(')', pos);
            if (close == std::string::npos) throw input_error("unterminated repeat block");
            if (close + 1 >= body.size() || body[close + 1] != '*')
                throw input_error("repeat block must end with '*'");
            blocks.push_back(
                PatternBlock::repeat(parse_id_list(body.substr(pos + 1, close - pos - 1),
                                                   "repeat block")));
            pos = close + 2;
        } else if (body[pos] == '{') {
            size_t close = body.find('}', pos);
            if (close == std::string::npos) throw input_error("unterminated one-of block");
            blocks.push_back(PatternBlock::one_of(
                parse_id_list(body.substr(pos + 1, close - pos - 1), "one-of block")));
            pos = close + 1;
        } else if (std::isdigit(static_cast<unsigned char>(body[pos]))) {
            size_t end = pos;
            while (end < body.size() && std::isdigit(static_cast<unsigned char>(body[end])))
                ++end;
            blocks.push_back(PatternBlock::lit(std::stoi(body.substr(pos, end - pos))));
            pos = end;
        } else {
            throw input_error("unexpected character '" + std::string(1, body[pos]) +
                              "' in pattern");
        }
        expect_block = false;
    }
    if (blocks.empty()) throw input_error("empty pattern");
    return blocks;
}

std::string LazySet::describe() const {
    switch (kind_) {
        case Kind::Finite: {
            std::ostringstream out;
            out << "list ";
            for (size_t i = 0; i < items_.size(); ++i) {
                if (i) out << ", ";
                out << items_[i].str();
            }
            return out.str();
        }
        case Kind::Pattern:
            return format_pattern(blocks_);
        case Kind::Predicate:
            return descriptor_;
    }
    return "";
}

CondIii check_cond_iii(const TerminatedDigraph& td) {
    CondIii result;
    for (Vertex v : td.nonterminals())
        if (td.g.in_neighbors(v).empty()) {
            result.ok = false;
            result.violator = v;
            return result;
        }
    return result;
}

namespace {

SeqVertex extend_to_seq(const TerminatedDigraph& td, Vertex v, Vertex t0) {
    SeqVertex s;
    s.ids.push_back(v);
    if (!td.is_terminal(v)) s.ids.push_back(t0);
    return s;
}

}  // namespace

LazyClaim out3_witness(const TerminatedDigraph& td) {
    CondIii cond = check_cond_iii(td);
    if (!cond.ok)
        throw input_error("no finite-step out-witness: nonterminal " +
                          std::to_string(*cond.violator) +
                          " has no in-neighbor; use tinf_hom instead");
    VertexSet base = quasi_kernel(td.g);
    Vertex t0 = td.least_terminal();
    std::vector<SeqVertex> members;
    members.reserve(base.size());
    for (Vertex a : base) members.push_back(extend_to_seq(td, a, t0));
    LazyClaim claim;
    claim.kind = ClassKind::out(3);
    claim.out_witness.push_back(LazySet::finite(std::move(members)));
    return claim;
}

int TinfHom::level(const SeqVertex& s) const {
    for (size_t i = 0; i < s.ids.size(); ++i)
        if (s.ids[i] != violator) return static_cast<int>(i);
    return static_cast<int>(s.ids.size());
}

TinfHom tinf_hom(const TerminatedDigraph& td, Vertex violator) {
    td.g.check_vertex(violator);
    if (td.is_terminal(violator) || !td.g.in_neighbors(violator).empty())
        throw input_error("tinf_hom requires a nonterminal with no in-neighbor");
    return TinfHom{violator};
}

VerifyReport verify_tinf_hom(const TerminatedDigraph& td, const TinfHom& hom, int depth,
                             int cap) {
    Materialization mat = materialize(td, depth, cap);
    VerifyReport report;
    for (const auto& [i, j] : mat.digraph.edges())
        if (hom.level(mat.labels[i]) < hom.level(mat.labels[j]))
            report.fail(mat.labels[i].str() + "->" + mat.labels[j].str(),
                        "level increases along an edge");
    return report;
}

std::optional<SeqVertex> out2_decision_tournament(const TerminatedDigraph& td) {
    if (!is_tournament(td.g))
        throw input_error("out2 decision is proved for strict tournaments only");
    for (Vertex t : td.terminals) {
        VertexSet reach = closure(td.g, {t}, 2, Direction::Out);
        if (static_cast<int>(reach.size()) == td.g.vertex_count()) {
            SeqVertex s;
            s.ids.push_back(t);
            return s;
        }
    }
    return std::nullopt;
}

SeqVertex out2_refuter(const TerminatedDigraph& td, const SeqVertex& s) {
    if (!is_tournament(td.g))
        throw input_error("out2 refuter is proved for strict tournaments only");
    td.check_seq(s);
    Vertex t = s.ids.back();
    VertexSet reach = closure(td.g, {t}, 2, Direction::Out);
    if (static_cast<int>(reach.size()) == td.g.vertex_count())
        throw input_error("witness exists: terminal " + std::to_string(t) +
                          " two-step dominates the base graph");
    Vertex w = -1;
    for (Vertex v = 0; v < td.g.vertex_count(); ++v)
        if (!reach.count(v)) {
            w = v;
            break;
        }
    SeqVertex y;
    y.ids.assign(s.ids.begin(), s.ids.end() - 1);
    y.ids.push_back(w);
    if (!td.is_terminal(w)) y.ids.push_back(td.least_terminal());
    return y;
}

namespace {

// Builds the one-sided witness assuming some terminal receives no edge from
// the nonterminals; `least_outside` is that terminal. Kind is OUT(2).
LazyClaim isolated_terminal_witness(const TerminatedDigraph& td, Vertex t) {
    VertexSet blocked = closure(td.g, {t}, 1, Direction::Out);
    VertexSet rest;
    for (Vertex v = 0; v < td.g.vertex_count(); ++v)
        if (!blocked.count(v)) rest.insert(v);
    InducedSubgraph sub = induced(td.g, rest);
    VertexSet core = sub.map_back(quasi_kernel(sub.graph));
    bool edge_into_t = false;
    for (Vertex a : core)
        if (td.g.has_edge(a, t)) {
            edge_into_t = true;
            break;
        }
    VertexSet a_set = core;
    if (!edge_into_t) a_set.insert(t);

    VertexSet a_n, a_t;
    for (Vertex v : a_set) (td.is_terminal(v) ? a_t : a_n).insert(v);
    LazyClaim claim;
    claim.kind = ClassKind::out(2);
    claim.out_witness.push_back(
        LazySet::pattern({PatternBlock::repeat(a_n), PatternBlock::one_of(a_t)}));
    return claim;
}

LazyClaim flip_to_in(LazyClaim claim) {
    claim.kind = ClassKind::in(claim.kind.out_hops);
    claim.in_witness = std::move(claim.out_witness);
    claim.out_witness.clear();
    return claim;
}

}  // namespace

LazyClaim n_independent_witness(const TerminatedDigraph& td) {
    VertexSet nts = td.nonterminals();
    if (!is_independent(td.g, nts))
        throw input_error("n_independent_witness requires independent nonterminals");

    VertexSet out_n = closure(td.g, nts, 1, Direction::Out);
    VertexSet in_n = closure(td.g, nts, 1, Direction::In);
    for (Vertex t : td.terminals)
        if (!out_n.count(t)) return isolated_terminal_witness(td, t);
    for (Vertex t : td.terminals)
        if (!in_n.count(t)) return flip_to_in(isolated_terminal_witness(reverse(td), t));

    VertexSet out_t = closure(td.g, td.terminals, 1, Direction::Out);
    VertexSet in_t = closure(td.g, td.terminals, 1, Direction::In);
    Vertex t0 = td.least_terminal();
    const bool all_into_t = std::all_of(nts.begin(), nts.end(),
                                        [&](Vertex v) { return in_t.count(v) > 0; });
    if (all_into_t) {
        LazyClaim claim;
        claim.kind = ClassKind::in(2);
        claim.in_witness.push_back(
            LazySet::pattern({PatternBlock::one_of(nts), PatternBlock::lit(t0)}));
        return claim;
    }
    const bool all_from_t = std::all_of(nts.begin(), nts.end(),
                                        [&](Vertex v) { return out_t.count(v) > 0; });
    if (all_from_t) {
        LazyClaim claim;
        claim.kind = ClassKind::out(2);
        claim.out_witness.push_back(
            LazySet::pattern({PatternBlock::one_of(nts), PatternBlock::lit(t0)}));
        return claim;
    }

    // Both directions partial: the nonterminals untouched by the terminals
    // form the repeat block, everything else in the run position is covered
    // through a terminal in one extra step.
    VertexSet a;
    for (Vertex v : nts)
        if (!out_t.count(v)) a.insert(v);
    VertexSet rest;
    for (Vertex v : nts)
        if (!a.count(v)) rest.insert(v);
    LazyClaim claim;
    claim.kind = ClassKind::out(2);
    claim.out_witness.push_back(LazySet::pattern(
        {PatternBlock::repeat(a), PatternBlock::one_of(rest), PatternBlock::lit(t0)}));
    return claim;
}

namespace {

// Length of the longest leading run of entries drawn from `set`.
size_t run_length(const std::vector<Vertex>& ids, const VertexSet& set) {
    size_t i = 0;
    while (i < ids.size() && set.count(ids[i])) ++i;
    return i;
}

}  // namespace

bool Inout22Context::in_v0(const SeqVertex& s) const {
    size_t run = run_length(s.ids, b_n);
    return run < s.ids.size() && a_set.count(s.ids[run]) > 0;
}

bool Inout22Context::in_k0(const SeqVertex& s) const {
    size_t run = run_length(s.ids, b_n);
    return run + 2 == s.ids.size() && s.ids[run] == x && s.ids[run + 1] == t0;
}

bool Inout22Context::in_r(const SeqVertex& s) const {
    if (in_k0(s)) return true;
    size_t run = run_length(s.ids, b_n);
    return run + 3 == s.ids.size() && s.ids[run] == y && s.ids[run + 1] == x &&
           s.ids[run + 2] == t0;
}

bool Inout22Context::in_s(const SeqVertex& s) const {
    size_t run = run_length(s.ids, b_n);
    if (run + 2 == s.ids.size() && s.ids[run] == y && s.ids[run + 1] == t0) return true;
    return run + 3 == s.ids.size() && s.ids[run] == x && s.ids[run + 1] == y &&
           s.ids[run + 2] == t0;
}

bool Inout22Context::r_prime(const SeqVertex& s) const { return r_prime_membership(*this, s); }

bool Inout22Context::s_prime(const SeqVertex& s) const { return in_v0(s) && !r_prime(s); }

bool r_prime_membership(const Inout22Context& ctx, const SeqVertex& s) {
    if (!ctx.in_v0(s)) throw input_error("r_prime_membership requires a vertex of the part");
    if (ctx.in_s(s)) return false;
    if (ctx.in_r(s)) return true;
    // Any source in R with an edge to s can be shortened, beyond the first
    // difference, to the least completion of its shape; so it suffices to try
    // the completions hanging off every run prefix of s.
    const size_t run = run_length(s.ids, ctx.b_n);
    for (size_t d = 0; d <= run && d < s.ids.size(); ++d) {
        std::vector<Vertex> prefix(s.ids.begin(), s.ids.begin() + d);
        std::vector<SeqVertex> candidates;
        {
            SeqVertex c;
            c.ids = prefix;
            c.ids.push_back(ctx.x);
            c.ids.push_back(ctx.t0);
            candidates.push_back(std::move(c));
        }
        {
            SeqVertex c;
            c.ids = prefix;
            c.ids.push_back(ctx.y);
            c.ids.push_back(ctx.x);
            c.ids.push_back(ctx.t0);
            candidates.push_back(std::move(c));
        }
        for (Vertex b : ctx.b_n) {
            SeqVertex c;
            c.ids = prefix;
            c.ids.push_back(b);
            c.ids.push_back(ctx.x);
            c.ids.push_back(ctx.t0);
            candidates.push_back(std::move(c));
        }
        for (const SeqVertex& c : candidates)
            if (c != s && lazy_edge(ctx.td, c, s)) return true;
    }
    return false;
}

LazyClaim inout22_witness(const TerminatedDigraph& td) {
    // Least lexicographic nonterminal edge, if any.
    std::optional<std::pair<Vertex, Vertex>> nonterminal_edge;
    for (const auto& [u, v] : td.g.edges())
        if (!td.is_terminal(u) && !td.is_terminal(v)) {
            nonterminal_edge = {{u, v}};
            break;
        }
    if (!nonterminal_edge) {
        LazyClaim one_sided = n_independent_witness(td);
        LazyClaim claim;
        claim.kind = ClassKind::inout(2, 2);
        claim.out_witness = one_sided.out_witness;
        claim.in_witness = one_sided.in_witness;
        const bool out_side = one_sided.kind.family == ClassFamily::Out;
        auto everything = LazySet::predicate("all", [](const SeqVertex&) { return true; });
        auto nothing = LazySet::predicate("empty", [](const SeqVertex&) { return false; });
        claim.partition = out_side ? std::make_pair(everything, nothing)
                                   : std::make_pair(nothing, everything);
        return claim;
    }

    auto ctx = std::make_shared<Inout22Context>();
    ctx->td = td;
    ctx->x = nonterminal_edge->first;
    ctx->y = nonterminal_edge->second;
    ctx->t0 = td.least_terminal();
    VertexSet xy{ctx->x, ctx->y};
    ctx->a_set = closure(td.g, xy, 1, Direction::In);
    for (Vertex v : closure(td.g, xy, 1, Direction::Out)) ctx->a_set.insert(v);
    VertexSet rest;
    for (Vertex v = 0; v < td.g.vertex_count(); ++v)
        if (!ctx->a_set.count(v)) rest.insert(v);
    InducedSubgraph sub = induced(td.g, rest);
    VertexSet b = sub.map_back(quasi_kernel(sub.graph));
    for (Vertex v : b) (td.is_terminal(v) ? ctx->b_t : ctx->b_n).insert(v);

    LazyClaim claim;
    claim.kind = ClassKind::inout(2, 2);
    claim.ctx = ctx;
    claim.out_witness.push_back(LazySet::pattern({PatternBlock::repeat(ctx->b_n),
                                                  PatternBlock::lit(ctx->x),
                                                  PatternBlock::lit(ctx->t0)}));
    claim.out_witness.push_back(LazySet::pattern(
        {PatternBlock::repeat(ctx->b_n), PatternBlock::one_of(ctx->b_t)}));
    claim.in_witness.push_back(LazySet::pattern({PatternBlock::repeat(ctx->b_n),
                                                 PatternBlock::lit(ctx->y),
                                                 PatternBlock::lit(ctx->t0)}));
    std::ostringstream tag;
    tag << "(x=" << ctx->x << ",y=" << ctx->y << ")";
    claim.partition = {
        LazySet::predicate("derived complement-of-s-prime" + tag.str(),
                           [ctx](const SeqVertex& s) { return !ctx->s_prime(s); }),
        LazySet::predicate("derived s-prime" + tag.str(),
                           [ctx](const SeqVertex& s) { return ctx->s_prime(s); })};
    return claim;
}

VerifyReport verify_truncated(const TerminatedDigraph& td, const LazyClaim& claim, int depth,
                              int margin, int cap) {
    if (margin < 0 || depth < 0) throw input_error("depth and margin must be non-negative");
    Materialization mat = materialize(td, depth + margin, cap);
    const int count = mat.digraph.vertex_count();
    VerifyReport report;

    auto members_of = [&](const std::vector<LazySet>& sets) {
        std::vector<char> member(count, 0);
        for (int i = 0; i < count; ++i)
            for (const LazySet& set : sets)
                if (set.contains(mat.labels[i])) {
                    member[i] = 1;
                    break;
                }
        return member;
    };
    std::vector<char> out_members = members_of(claim.out_witness);
    std::vector<char> in_members = members_of(claim.in_witness);

    auto check_independent = [&](const std::vector<char>& member, const char* side) {
        for (int i = 0; i < count; ++i) {
            if (!member[i]) continue;
            for (Vertex j : mat.digraph.out_neighbors(i))
                if (member[j])
                    report.fail(mat.labels[i].str() + "->" + mat.labels[j].str(),
                                std::string(side) + " witness members adjacent");
        }
    };
    check_independent(out_members, "out");
    check_independent(in_members, "in");

    // Partition totality and witness containment.
    std::vector<char> in_out_part(count, 1), in_in_part(count, 0);
    if (claim.partition) {
        for (int i = 0; i < count; ++i) {
            const bool po = claim.partition->first.contains(mat.labels[i]);
            const bool pi = claim.partition->second.contains(mat.labels[i]);
            in_out_part[i] = po;
            in_in_part[i] = pi;
            if (po == pi)
                report.fail(mat.labels[i].str(),
                            po ? "partition parts overlap" : "partition misses vertex");
        }
        for (int i = 0; i < count; ++i) {
            if (out_members[i] && !in_out_part[i])
                report.fail(mat.labels[i].str(), "out witness outside its part");
            if (in_members[i] && !in_in_part[i])
                report.fail(mat.labels[i].str(), "in witness outside its part");
        }
    } else {
        for (int i = 0; i < count; ++i) in_in_part[i] = 1;  // one-sided: whole graph
    }

    // Multi-source BFS within a part.
    auto distances = [&](const std::vector<char>& sources, const std::vector<char>& part,
                         Direction dir) {
        std::vector<int> dist(count, -1);
        std::deque<int> queue;
        for (int i = 0; i < count; ++i)
            if (sources[i] && part[i]) {
                dist[i] = 0;
                queue.push_back(i);
            }
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            const auto& next = dir == Direction::Out ? mat.digraph.out_neighbors(v)
                                                     : mat.digraph.in_neighbors(v);
            for (int w : next)
                if (part[w] && dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
        return dist;
    };

    const bool has_out_side =
        claim.kind.family == ClassFamily::Out || claim.kind.family == ClassFamily::InOut;
    const bool has_in_side =
        claim.kind.family == ClassFamily::In || claim.kind.family == ClassFamily::InOut;
    std::vector<int> out_dist, in_dist;
    if (has_out_side) out_dist = distances(out_members, in_out_part, Direction::Out);
    if (has_in_side) in_dist = distances(in_members, in_in_part, Direction::In);

    for (int i = 0; i < count; ++i) {
        if (mat.labels[i].prefix_length() > depth) continue;
        if (claim.partition && in_out_part[i] == in_in_part[i]) continue;  // already reported
        if (has_out_side && in_out_part[i] && (!claim.partition || !in_in_part[i])) {
            int bound = claim.kind.out_hops;
            if (out_dist[i] < 0 || out_dist[i] > bound)
                report.fail(mat.labels[i].str(), "uncovered on the out side");
        }
        if (has_in_side && in_in_part[i] && (!claim.partition || !in_out_part[i])) {
            int bound = claim.kind.in_hops;
            if (in_dist[i] < 0 || in_dist[i] > bound)
                report.fail(mat.labels[i].str(), "uncovered on the in side");
        }
    }
    return report;
}

GInfReport ginfty_classify(const TerminatedDigraph& td) {
    GInfReport report;
    report.cond_iii = check_cond_iii(td);
    if (report.cond_iii.ok)
        report.out3 = out3_witness(td);
    else
        report.hom = tinf_hom(td, *report.cond_iii.violator);
    if (is_tournament(td.g)) {
        auto decision = out2_decision_tournament(td);
        if (decision) {
            report.out2 = TriState::Yes;
            report.out2_witness = *decision;
        } else {
            report.out2 = TriState::No;
        }
    }
    if (is_independent(td.g, td.nonterminals()))
        report.n_independent = n_independent_witness(td);
    report.inout22 = inout22_witness(td);
    return report;
}

}  // namespace qdg
