#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdg/class_oracle.hpp"
#include "qdg/ginfty.hpp"

namespace qdg {

// One block of a prefix pattern: a run of entries drawn from a set, exactly
// one entry from a set, or one fixed entry.
struct PatternBlock {
    enum class Kind { Repeat, OneOf, Literal };
    Kind kind = Kind::Literal;
    VertexSet set;
    Vertex literal = -1;

    static PatternBlock repeat(VertexSet s) { return {Kind::Repeat, std::move(s), -1}; }
    static PatternBlock one_of(VertexSet s) { return {Kind::OneOf, std::move(s), -1}; }
    static PatternBlock lit(Vertex v) { return {Kind::Literal, {}, v}; }
};

// Decidable set of sequence vertices with a printable descriptor: an explicit
// finite list, a prefix pattern, or a named derived predicate.
class LazySet {
public:
    enum class Kind { Finite, Pattern, Predicate };

    static LazySet finite(std::vector<SeqVertex> items);
    static LazySet pattern(std::vector<PatternBlock> blocks);
    static LazySet predicate(std::string descriptor, std::function<bool(const SeqVertex&)> pred);

    Kind kind() const { return kind_; }
    bool contains(const SeqVertex& s) const;
    std::string describe() const;
    const std::vector<SeqVertex>& items() const { return items_; }
    const std::vector<PatternBlock>& blocks() const { return blocks_; }

private:
    Kind kind_ = Kind::Finite;
    std::vector<SeqVertex> items_;
    std::vector<PatternBlock> blocks_;
    std::string descriptor_;
    std::function<bool(const SeqVertex&)> pred_;
};

// Prints as "pattern (1,2)* . {3} . 0"; parse accepts the same syntax back.
std::string format_pattern(const std::vector<PatternBlock>& blocks);
std::vector<PatternBlock> parse_pattern(const std::string& text);

struct Inout22Context;

// Class claim over the generated infinite graph. Witness sides are unions of
// lazy sets; partition parts, when present, are complementary predicates.
struct LazyClaim {
    ClassKind kind;
    std::vector<LazySet> out_witness;
    std::vector<LazySet> in_witness;
    std::optional<std::pair<LazySet, LazySet>> partition;  // (out part, in part)
    std::shared_ptr<const Inout22Context> ctx;             // set by the two-sided builder
};

struct CondIii {
    bool ok = true;
    std::optional<Vertex> violator;  // least nonterminal with no in-neighbor
};

// Every nonterminal must have an in-neighbor for the generated graph to have
// any finite-step out-witness at all.
CondIii check_cond_iii(const TerminatedDigraph& td);

// OUT(3) witness: a quasi-kernel of the base graph, each nonterminal member
// extended by the least terminal. Requires check_cond_iii to hold.
LazyClaim out3_witness(const TerminatedDigraph& td);

// Level function collapsing the generated graph onto the TInf target when
// some nonterminal has no in-neighbor: the level of a sequence is the first
// position holding anything other than that vertex.
struct TinfHom {
    Vertex violator = -1;
    int level(const SeqVertex& s) const;
};

TinfHom tinf_hom(const TerminatedDigraph& td, Vertex violator);

// Checks the TInf edge rule (level never increases along an edge) on a
// materialization of the given depth.
VerifyReport verify_tinf_hom(const TerminatedDigraph& td, const TinfHom& hom, int depth,
                             int cap = kDefaultMaterializeCap);

// For a strict tournament base: the generated graph has a two-step witness
// exactly when some terminal two-step dominates the base graph. Returns that
// terminal as a one-entry sequence, or nothing.
std::optional<SeqVertex> out2_decision_tournament(const TerminatedDigraph& td);

// When the decision is negative, produces a concrete vertex outside the
// two-step out-closure of s: keep the nonterminal prefix of s, replace the
// final terminal by the least vertex its two-step closure misses.
SeqVertex out2_refuter(const TerminatedDigraph& td, const SeqVertex& s);

// Witness when the nonterminals are independent in the base graph. Resulting
// kind is OUT(2) or IN(2) for the whole generated graph.
LazyClaim n_independent_witness(const TerminatedDigraph& td);

// Construction data for the two-sided witness built around a nonterminal
// edge (x,y). Membership predicates for the partition live here.
struct Inout22Context {
    TerminatedDigraph td;
    Vertex x = -1, y = -1, t0 = -1;
    VertexSet a_set;      // one-step in/out neighborhood of {x,y}
    VertexSet b_n, b_t;   // quasi-kernel of the rest, split by terminal status

    bool in_v0(const SeqVertex& s) const;   // first entry outside the b_n run lies in a_set
    bool in_k0(const SeqVertex& s) const;   // b_n run, x, t0
    bool in_r(const SeqVertex& s) const;    // k0 or b_n run, y, x, t0
    bool in_s(const SeqVertex& s) const;    // b_n run, y, t0 or b_n run, x, y, t0
    bool r_prime(const SeqVertex& s) const;
    bool s_prime(const SeqVertex& s) const;
};

// Decides membership in the one-step out-neighborhood of R inside the first
// partition part, by bounded enumeration of candidate sources. Requires
// s to lie in the part (input_error otherwise).
bool r_prime_membership(const Inout22Context& ctx, const SeqVertex& s);

// Two-sided witness for any terminated digraph: the construction around the
// least nonterminal edge, or, when the nonterminals are independent, the
// one-sided witness wrapped with a trivial partition.
LazyClaim inout22_witness(const TerminatedDigraph& td);

// Finite certification: materializes to depth+margin and checks witness
// independence, coverage of every vertex with prefix length <= depth at the
// claimed bound (paths confined to the claimed part), and that partition
// predicates split the materialization exactly.
VerifyReport verify_truncated(const TerminatedDigraph& td, const LazyClaim& claim, int depth,
                              int margin = 2, int cap = kDefaultMaterializeCap);

enum class TriState { Yes, No, Unknown };

struct GInfReport {
    CondIii cond_iii;
    std::optional<LazyClaim> out3;          // present iff cond_iii holds
    std::optional<TinfHom> hom;             // present iff cond_iii fails
    TriState out2 = TriState::Unknown;      // decided for strict tournaments only
    std::optional<SeqVertex> out2_witness;
    std::optional<LazyClaim> n_independent; // present when nonterminals independent
    LazyClaim inout22;
};

GInfReport ginfty_classify(const TerminatedDigraph& td);

}  // namespace qdg
