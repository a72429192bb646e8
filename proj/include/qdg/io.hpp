#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qdg/digraph.hpp"
#include "qdg/ginfty.hpp"
#include "qdg/ginfty_witness.hpp"

namespace qdg {

// Parsed graph file: plain digraph, or terminated digraph when any
// `terminal` line is present.
struct GraphFile {
    std::variant<Digraph, TerminatedDigraph> value;

    bool terminated() const { return value.index() == 1; }
    const Digraph& graph() const;
    const TerminatedDigraph& terminated_graph() const;
};

// Line format: `# comment`, `vertices <n>`, `edge <u> <v>`, `terminal <v>`.
// Duplicate edges and terminals are idempotent; loops are rejected.
GraphFile parse_graph(const std::string& text);
GraphFile parse_graph_file(const std::string& path);

std::string emit_graph(const GraphFile& file);

std::string dot_export(const Digraph& g);
std::string dot_export(const Materialization& mat);

// Replayable claim file: `kind out2` plus one `witness <list ...|pattern ...>`
// line per lazy set. Only one-sided kinds round-trip through text.
LazyClaim parse_lazy_claim(const std::string& text);
std::string emit_lazy_claim(const LazyClaim& claim);

// Command-line surface. Exit codes: 0 success / claim verified, 1 claim
// failed or class absent, 2 usage or parse error, 3 cap refusal.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdg
