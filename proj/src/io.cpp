#include "qdg/io.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qdg/constructions.hpp"
#include "qdg/errors.hpp"
#include "qdg/tournament.hpp"

namespace qdg {

const Digraph& GraphFile::graph() const {
    if (terminated()) return std::get<TerminatedDigraph>(value).g;
    return std::get<Digraph>(value);
}

const TerminatedDigraph& GraphFile::terminated_graph() const {
    if (!terminated()) throw input_error("graph file has no terminal vertices");
    return std::get<TerminatedDigraph>(value);
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

int parse_id(const std::string& token, int lineno) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error(lineno, "expected a non-negative integer, got '" + token + "'");
    try {
        return std::stoi(token);
    } catch (const std::exception&) {
        throw parse_error(lineno, "integer out of range: '" + token + "'");
    }
}

}  // namespace

GraphFile parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<int> vertex_count;
    std::vector<std::pair<Vertex, Vertex>> edges;
    VertexSet terminals;
    bool has_terminal_line = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& keyword = tokens[0];
        if (keyword == "vertices") {
            if (vertex_count) throw parse_error(lineno, "duplicate vertices line");
            if (tokens.size() != 2) throw parse_error(lineno, "usage: vertices <n>");
            vertex_count = parse_id(tokens[1], lineno);
        } else if (keyword == "edge") {
            if (!vertex_count) throw parse_error(lineno, "edge before vertices line");
            if (tokens.size() != 3) throw parse_error(lineno, "usage: edge <u> <v>");
            Vertex u = parse_id(tokens[1], lineno);
            Vertex v = parse_id(tokens[2], lineno);
            if (u >= *vertex_count || v >= *vertex_count)
                throw parse_error(lineno, "edge endpoint out of range");
            if (u == v) throw parse_error(lineno, "loop edges are not allowed");
            edges.emplace_back(u, v);
        } else if (keyword == "terminal") {
            if (!vertex_count) throw parse_error(lineno, "terminal before vertices line");
            if (tokens.size() != 2) throw parse_error(lineno, "usage: terminal <v>");
            Vertex v = parse_id(tokens[1], lineno);
            if (v >= *vertex_count) throw parse_error(lineno, "terminal out of range");
            terminals.insert(v);
            has_terminal_line = true;
        } else {
            throw parse_error(lineno, "unknown keyword '" + keyword + "'");
        }
    }
    if (!vertex_count) throw parse_error(lineno + 1, "missing vertices line");

    GraphFile file;
    Digraph g(*vertex_count, edges);
    if (has_terminal_line)
        file.value = TerminatedDigraph(std::move(g), std::move(terminals));
    else
        file.value = std::move(g);
    return file;
}

GraphFile parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str());
}

std::string emit_graph(const GraphFile& file) {
    std::ostringstream out;
    const Digraph& g = file.graph();
    out << "vertices " << g.vertex_count() << '\n';
    if (file.terminated())
        for (Vertex t : file.terminated_graph().terminals) out << "terminal " << t << '\n';
    for (const auto& [u, v] : g.edges()) out << "edge " << u << ' ' << v << '\n';
    return out.str();
}

std::string dot_export(const Digraph& g) {
    std::ostringstream out;
    out << "digraph G {\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) out << "  \"" << v << "\";\n";
    for (const auto& [u, v] : g.edges()) out << "  \"" << u << "\" -> \"" << v << "\";\n";
    out << "}\n";
    return out.str();
}

std::string dot_export(const Materialization& mat) {
    std::ostringstream out;
    out << "digraph G {\n";
    for (const SeqVertex& label : mat.labels)
        out << "  \"" << label.str() << "\" [shape="
            << (label.prefix_length() == 0 ? "doublecircle" : "ellipse") << "];\n";
    for (const auto& [i, j] : mat.digraph.edges())
        out << "  \"" << mat.labels[i].str() << "\" -> \"" << mat.labels[j].str() << "\";\n";
    out << "}\n";
    return out.str();
}

LazyClaim parse_lazy_claim(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<ClassKind> kind;
    std::vector<LazySet> witnesses;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream tokens(line);
        std::string keyword;
        if (!(tokens >> keyword)) continue;
        if (keyword == "kind") {
            std::string name;
            if (!(tokens >> name)) throw parse_error(lineno, "usage: kind <out<n>|in<n>>");
            kind = parse_class_kind(name);
            if (!kind || kind->family == ClassFamily::InOut)
                throw parse_error(lineno, "replayable kinds are out<n> / in<n>, got '" +
                                              name + "'");
        } else if (keyword == "witness") {
            std::string form;
            if (!(tokens >> form)) throw parse_error(lineno, "usage: witness <list|pattern> ...");
            std::string rest;
            std::getline(tokens, rest);
            try {
                if (form == "list") {
                    std::vector<SeqVertex> items;
                    std::string item;
                    std::istringstream parts(rest);
                    while (std::getline(parts, item, ',')) {
                        size_t begin = item.find_first_not_of(" \t");
                        if (begin == std::string::npos) continue;
                        size_t end = item.find_last_not_of(" \t");
                        items.push_back(SeqVertex::parse(item.substr(begin, end - begin + 1)));
                    }
                    witnesses.push_back(LazySet::finite(std::move(items)));
                } else if (form == "pattern") {
                    witnesses.push_back(LazySet::pattern(parse_pattern(rest)));
                } else {
                    throw input_error("witness form must be 'list' or 'pattern'");
                }
            } catch (const input_error& e) {
                throw parse_error(lineno, e.what());
            }
        } else {
            throw parse_error(lineno, "unknown keyword '" + keyword + "'");
        }
    }
    if (!kind) throw parse_error(lineno + 1, "missing kind line");
    if (witnesses.empty()) throw parse_error(lineno + 1, "missing witness line");
    LazyClaim claim;
    claim.kind = *kind;
    if (kind->family == ClassFamily::Out)
        claim.out_witness = std::move(witnesses);
    else
        claim.in_witness = std::move(witnesses);
    return claim;
}

std::string emit_lazy_claim(const LazyClaim& claim) {
    if (claim.kind.family == ClassFamily::InOut)
        throw input_error("only one-sided claims round-trip through text");
    std::ostringstream out;
    out << "kind " << claim.kind.to_string() << '\n';
    const auto& sets =
        claim.kind.family == ClassFamily::Out ? claim.out_witness : claim.in_witness;
    for (const LazySet& set : sets) {
        if (set.kind() == LazySet::Kind::Predicate)
            throw input_error("derived predicate sets do not round-trip through text");
        out << "witness " << set.describe() << '\n';
    }
    return out.str();
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_claim_lines(std::ostream& out, const std::string& prefix, const LazyClaim& claim) {
    for (size_t i = 0; i < claim.out_witness.size(); ++i)
        out << prefix << ".out_witness." << i << ": " << claim.out_witness[i].describe()
            << '\n';
    for (size_t i = 0; i < claim.in_witness.size(); ++i)
        out << prefix << ".in_witness." << i << ": " << claim.in_witness[i].describe() << '\n';
    if (claim.partition) {
        out << prefix << ".partition.out: " << claim.partition->first.describe() << '\n';
        out << prefix << ".partition.in: " << claim.partition->second.describe() << '\n';
    }
}

void print_finite_claim(std::ostream& out, const ClassClaim& claim) {
    out << "kind: " << claim.kind.to_string() << '\n';
    if (claim.kind.family == ClassFamily::InOut) {
        out << "out_part: " << to_string(claim.partition->first) << '\n';
        out << "out_witness: " << to_string(claim.witness_a) << '\n';
        out << "in_part: " << to_string(claim.partition->second) << '\n';
        out << "in_witness: " << to_string(*claim.witness_b) << '\n';
    } else {
        out << "witness: " << to_string(claim.witness_a) << '\n';
    }
}

struct CliOptions {
    std::string file;
    std::string class_name;
    std::string target;
    std::string dot_path;
    std::string claim_path;
    int x = -1;
    int n = 3;
    int size = 1;
    int depth = 0;
    int margin = 2;
    int max_vertices = 0;
    int max_materialize = kDefaultMaterializeCap;

    OracleCaps caps() const {
        OracleCaps caps;
        if (max_vertices > 0) {
            caps.max_outin_vertices = max_vertices;
            caps.max_inout_vertices = max_vertices;
        }
        return caps;
    }
};

int cmd_analyze(const CliOptions& opt, std::ostream& out) {
    GraphFile file = parse_graph_file(opt.file);
    const Digraph& g = file.graph();
    bool all_ok = true;

    out << "vertices: " << g.vertex_count() << '\n';
    out << "edges: " << g.edge_count() << '\n';
    out << "terminated: " << yes_no(file.terminated()) << '\n';
    if (file.terminated())
        out << "terminals: " << to_string(file.terminated_graph().terminals) << '\n';
    out << "tournament: " << yes_no(is_tournament(g)) << '\n';

    Condensation cond = condensation(g);
    out << "condensation.classes: " << cond.classes.size() << '\n';
    out << "condensation.total_order: " << yes_no(cond.is_total_order) << '\n';
    out << "condensation.last_class: "
        << (cond.last_class ? to_string(cond.classes[*cond.last_class]) : "none") << '\n';

    VertexSet qk = quasi_kernel(g);
    ClassClaim qk_claim;
    qk_claim.kind = ClassKind::out(2);
    qk_claim.witness_a = qk;
    bool qk_ok = verify_claim(g, qk_claim).ok;
    out << "quasi_kernel: " << to_string(qk) << '\n';
    out << "quasi_kernel.verified: " << yes_no(qk_ok) << '\n';

    VertexSet qs = quasi_sink(g);
    ClassClaim qs_claim;
    qs_claim.kind = ClassKind::in(2);
    qs_claim.witness_a = qs;
    bool qs_ok = verify_claim(g, qs_claim).ok;
    out << "quasi_sink: " << to_string(qs) << '\n';
    out << "quasi_sink.verified: " << yes_no(qs_ok) << '\n';

    AbCover cover = ab_cover(g);
    bool ab_ok = check_ab_cover(g, cover);
    out << "ab_cover.a: " << to_string(cover.a) << '\n';
    out << "ab_cover.b: " << to_string(cover.b) << '\n';
    out << "ab_cover.verified: " << yes_no(ab_ok) << '\n';
    all_ok = qk_ok && qs_ok && ab_ok;

    OracleCaps caps = opt.caps();
    std::vector<ClassKind> kinds = {ClassKind::out(1),     ClassKind::out(2),
                                    ClassKind::out(3),     ClassKind::in(1),
                                    ClassKind::in(2),      ClassKind::in(3),
                                    ClassKind::inout(2, 2)};
    for (ClassKind kind : kinds) {
        out << "class." << kind.to_string() << ": ";
        try {
            auto claim = decide_class(g, kind, caps);
            if (!claim) {
                out << "absent\n";
            } else if (kind.family == ClassFamily::InOut) {
                out << "present out_part=" << to_string(claim->partition->first)
                    << " out=" << to_string(claim->witness_a)
                    << " in_part=" << to_string(claim->partition->second)
                    << " in=" << to_string(*claim->witness_b) << '\n';
            } else {
                out << "present " << to_string(claim->witness_a) << '\n';
            }
        } catch (const cap_error&) {
            out << "skipped (cap)\n";
        }
    }
    return all_ok ? 0 : 1;
}

int cmd_witness_line(const CliOptions& opt, std::ostream& out, bool sink) {
    GraphFile file = parse_graph_file(opt.file);
    const Digraph& g = file.graph();
    out << to_string(sink ? quasi_sink(g) : quasi_kernel(g)) << '\n';
    return 0;
}

int cmd_decide(const CliOptions& opt, std::ostream& out) {
    GraphFile file = parse_graph_file(opt.file);
    auto kind = parse_class_kind(opt.class_name);
    if (!kind) throw input_error("unknown class '" + opt.class_name + "'");
    out << "class: " << kind->to_string() << '\n';
    auto claim = decide_class(file.graph(), *kind, opt.caps());
    if (!claim) {
        out << "verdict: absent\n";
        return 1;
    }
    out << "verdict: present\n";
    if (kind->family == ClassFamily::InOut) {
        out << "witness: " << to_string(claim->witness_a) << '\n';
        out << "in_witness: " << to_string(*claim->witness_b) << '\n';
        out << "out_part: " << to_string(claim->partition->first) << '\n';
        out << "in_part: " << to_string(claim->partition->second) << '\n';
    } else {
        out << "witness: " << to_string(claim->witness_a) << '\n';
    }
    return 0;
}

int cmd_split(const CliOptions& opt, std::ostream& out) {
    GraphFile file = parse_graph_file(opt.file);
    const Digraph& g = file.graph();
    std::optional<Vertex> x;
    if (opt.x >= 0) x = opt.x;
    TournamentSplit split = tournament_split(g, x);
    bool ok = verify_claim(g, split.to_claim()).ok;
    if (!split.in_witness) {
        out << "variant: out2\n";
        out << "witness: "
            << (split.out2_witness ? to_string(VertexSet{*split.out2_witness})
                                   : std::string("{}"))
            << '\n';
    } else {
        out << "variant: split\n";
        out << "v_in: " << to_string(split.v_in) << '\n';
        out << "v_out: " << to_string(split.v_out) << '\n';
        out << "in_witness: " << to_string(VertexSet{*split.in_witness}) << '\n';
        out << "out_witness: " << to_string(VertexSet{*split.out_witness}) << '\n';
    }
    out << "verified: " << yes_no(ok) << '\n';
    return ok ? 0 : 1;
}

int cmd_knfree(const CliOptions& opt, std::ostream& out) {
    GraphFile file = parse_graph_file(opt.file);
    const Digraph& g = file.graph();
    ClassClaim claim = kn_free_partition(g, opt.n);
    bool ok = verify_claim(g, claim).ok;
    print_finite_claim(out, claim);
    out << "verified: " << yes_no(ok) << '\n';
    return ok ? 0 : 1;
}

int cmd_abcover(const CliOptions& opt, std::ostream& out) {
    GraphFile file = parse_graph_file(opt.file);
    const Digraph& g = file.graph();
    AbCover cover = ab_cover(g);
    bool ok = check_ab_cover(g, cover);
    out << "a: " << to_string(cover.a) << '\n';
    out << "b: " << to_string(cover.b) << '\n';
    out << "verified: " << yes_no(ok) << '\n';
    return ok ? 0 : 1;
}

int cmd_ginfty_classify(const CliOptions& opt, std::ostream& out) {
    GraphFile file = parse_graph_file(opt.file);
    const TerminatedDigraph& td = file.terminated_graph();
    GInfReport report = ginfty_classify(td);

    out << "cond_iii: " << yes_no(report.cond_iii.ok) << '\n';
    if (!report.cond_iii.ok) out << "cond_iii.violator: " << *report.cond_iii.violator << '\n';
    out << "out3: " << (report.out3 ? "present" : "absent") << '\n';
    if (report.out3) print_claim_lines(out, "out3", *report.out3);
    out << "tinf_hom: " << (report.hom ? "present" : "absent") << '\n';
    if (report.hom) out << "tinf_hom.violator: " << report.hom->violator << '\n';
    switch (report.out2) {
        case TriState::Yes:
            out << "out2: yes\n";
            out << "out2.witness: " << report.out2_witness->str() << '\n';
            break;
        case TriState::No:
            out << "out2: no\n";
            break;
        case TriState::Unknown:
            out << "out2: unknown\n";
            break;
    }
    if (report.n_independent) {
        out << "n_independent: " << report.n_independent->kind.to_string() << '\n';
        print_claim_lines(out, "n_independent", *report.n_independent);
    } else {
        out << "n_independent: none\n";
    }
    out << "inout22: present\n";
    print_claim_lines(out, "inout22", report.inout22);
    return 0;
}

int cmd_ginfty_materialize(const CliOptions& opt, std::ostream& out) {
    GraphFile file = parse_graph_file(opt.file);
    const TerminatedDigraph& td = file.terminated_graph();
    Materialization mat = materialize(td, opt.depth, opt.max_materialize);
    out << "depth: " << mat.depth << '\n';
    out << "vertices: " << mat.digraph.vertex_count() << '\n';
    out << "edges: " << mat.digraph.edge_count() << '\n';
    if (!opt.dot_path.empty()) {
        std::ofstream dot(opt.dot_path);
        if (!dot) throw input_error("cannot write DOT file '" + opt.dot_path + "'");
        dot << dot_export(mat);
        out << "dot: " << opt.dot_path << '\n';
    }
    return 0;
}

int report_verification(std::ostream& out, const std::string& name,
                        const VerifyReport& report) {
    out << "claim " << name << ": " << (report.ok ? "ok" : "fail") << '\n';
    size_t shown = 0;
    for (const VerifyFailure& failure : report.failures) {
        if (++shown > 5) {
            out << "  ... " << report.failures.size() - 5 << " more\n";
            break;
        }
        out << "  " << failure.subject << ": " << failure.reason << '\n';
    }
    return report.ok ? 0 : 1;
}

int cmd_ginfty_verify(const CliOptions& opt, std::ostream& out) {
    GraphFile file = parse_graph_file(opt.file);
    const TerminatedDigraph& td = file.terminated_graph();
    int failures = 0;

    if (!opt.claim_path.empty()) {
        std::ifstream in(opt.claim_path);
        if (!in) throw input_error("cannot open claim file '" + opt.claim_path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        LazyClaim claim = parse_lazy_claim(buffer.str());
        failures += report_verification(
            out, "replay",
            verify_truncated(td, claim, opt.depth, opt.margin, opt.max_materialize));
        return failures ? 1 : 0;
    }

    GInfReport report = ginfty_classify(td);
    if (report.out3)
        failures += report_verification(
            out, "out3",
            verify_truncated(td, *report.out3, opt.depth, opt.margin, opt.max_materialize));
    if (report.hom) {
        VerifyReport hom_report =
            verify_tinf_hom(td, *report.hom, opt.depth + opt.margin, opt.max_materialize);
        out << "hom tinf: " << (hom_report.ok ? "ok" : "fail") << '\n';
        if (!hom_report.ok) ++failures;
    }
    if (report.out2 == TriState::Yes) {
        LazyClaim out2_claim;
        out2_claim.kind = ClassKind::out(2);
        out2_claim.out_witness.push_back(LazySet::finite({*report.out2_witness}));
        failures += report_verification(
            out, "out2",
            verify_truncated(td, out2_claim, opt.depth, opt.margin, opt.max_materialize));
    }
    if (report.n_independent)
        failures += report_verification(out, "n_independent",
                                        verify_truncated(td, *report.n_independent, opt.depth,
                                                         opt.margin, opt.max_materialize));
    failures += report_verification(
        out, "inout22",
        verify_truncated(td, report.inout22, opt.depth, opt.margin, opt.max_materialize));
    return failures ? 1 : 0;
}

int cmd_gen(const CliOptions& opt, std::ostream& out) {
    if (opt.target != "t3") throw input_error("unknown generator target '" + opt.target + "'");
    GraphFile file;
    file.value = t3_prefix(opt.size);
    out << emit_graph(file);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quasi-kernel and quasi-sink analysis toolkit"};
    app.name("qdg");
    app.require_subcommand(1);
    CliOptions opt;

    auto* analyze = app.add_subcommand("analyze", "full report on a graph file");
    analyze->add_option("file", opt.file)->required();
    analyze->add_option("--max-vertices", opt.max_vertices, "oracle size cap");

    auto* qk = app.add_subcommand("qk", "quasi-kernel witness");
    qk->add_option("file", opt.file)->required();
    auto* qs = app.add_subcommand("qs", "quasi-sink witness");
    qs->add_option("file", opt.file)->required();

    auto* decide = app.add_subcommand("decide", "exhaustive class membership");
    decide->add_option("file", opt.file)->required();
    decide->add_option("--class", opt.class_name, "out<n>, in<n>, inout<m><k>, outinf, ...")
        ->required();
    decide->add_option("--max-vertices", opt.max_vertices, "oracle size cap");

    auto* split = app.add_subcommand("split", "tournament split around a probe vertex");
    split->add_option("file", opt.file)->required();
    split->add_option("--x", opt.x, "probe vertex (default 0)");

    auto* knfree = app.add_subcommand("knfree", "partition for clique-free complements");
    knfree->add_option("file", opt.file)->required();
    knfree->add_option("--n", opt.n, "forbidden complement clique size")->required();

    auto* abcover = app.add_subcommand("abcover", "two-sided cover pair");
    abcover->add_option("file", opt.file)->required();

    auto* ginfty = app.add_subcommand("ginfty", "generated infinite graph analysis");
    ginfty->require_subcommand(1);
    auto* classify = ginfty->add_subcommand("classify", "construct all witnesses");
    classify->add_option("file", opt.file)->required();
    auto* mat = ginfty->add_subcommand("materialize", "depth-bounded finite truncation");
    mat->add_option("file", opt.file)->required();
    mat->add_option("--depth", opt.depth)->required();
    mat->add_option("--dot", opt.dot_path, "write DOT to this path");
    mat->add_option("--max-materialize", opt.max_materialize, "vertex cap");
    auto* verify = ginfty->add_subcommand("verify", "verify witnesses on a truncation");
    verify->add_option("file", opt.file)->required();
    verify->add_option("--depth", opt.depth)->required();
    verify->add_option("--margin", opt.margin, "extra depth for covering paths");
    verify->add_option("--claim", opt.claim_path, "replay a claim file");
    verify->add_option("--max-materialize", opt.max_materialize, "vertex cap");

    auto* gen = app.add_subcommand("gen", "emit a generated family member");
    gen->add_option("--target", opt.target)->required();
    gen->add_option("--size", opt.size)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*analyze) return cmd_analyze(opt, out);
        if (*qk) return cmd_witness_line(opt, out, false);
        if (*qs) return cmd_witness_line(opt, out, true);
        if (*decide) return cmd_decide(opt, out);
        if (*split) return cmd_split(opt, out);
        if (*knfree) return cmd_knfree(opt, out);
        if (*abcover) return cmd_abcover(opt, out);
        if (*classify) return cmd_ginfty_classify(opt, out);
        if (*mat) return cmd_ginfty_materialize(opt, out);
        if (*verify) return cmd_ginfty_verify(opt, out);
        if (*gen) return cmd_gen(opt, out);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const cap_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const solver_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "error: no command\n";
    return 2;
}

}  // namespace qdg
