#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdg/digraph.hpp"

namespace qdg {

enum class ClassFamily { Out, In, InOut };

// A graph class named by coverage bounds: OUT(n) asks for an independent set
// whose n-step out-closure is everything, IN(n) is the dual, and INOUT(m,k)
// asks for a bipartition whose parts carry an IN(m) and an OUT(k) witness
// inside their own induced subgraphs.
struct ClassKind {
    ClassFamily family = ClassFamily::Out;
    int in_hops = 0;
    int out_hops = 0;

    static ClassKind out(int n) { return {ClassFamily::Out, 0, n}; }
    static ClassKind in(int n) { return {ClassFamily::In, n, 0}; }
    static ClassKind inout(int m, int k) { return {ClassFamily::InOut, m, k}; }

    std::string to_string() const;
    bool operator==(const ClassKind&) const = default;
};

// Parses "out2", "in3", "outinf", "inout12", ... Returns nullopt on junk.
std::optional<ClassKind> parse_class_kind(const std::string& text);

// Claimed class membership with explicit witness sets. For OUT/IN kinds only
// witness_a is used. For INOUT, partition = (V_out, V_in) with
// witness_a inside V_out and witness_b inside V_in.
struct ClassClaim {
    ClassKind kind;
    VertexSet witness_a;
    std::optional<VertexSet> witness_b;
    std::optional<std::pair<VertexSet, VertexSet>> partition;
};

struct VerifyFailure {
    std::string subject;
    std::string reason;
};

struct VerifyReport {
    bool ok = true;
    std::vector<VerifyFailure> failures;

    void fail(std::string subject, std::string reason);
};

// Mechanical check of a claim against a graph. Malformed claims (overlapping
// partition, witness outside its part) are reported as failures, not thrown.
VerifyReport verify_claim(const Digraph& g, const ClassClaim& claim);

struct OracleCaps {
    int max_outin_vertices = 14;
    int max_inout_vertices = 10;
};

// Exhaustive decision procedure. Witnesses are enumerated by size ascending
// then lexicographically, so a returned witness has minimum cardinality.
// INOUT partitions are enumerated by bitmask ascending, bit v set meaning
// v lies in the In part.
std::optional<ClassClaim> decide_class(const Digraph& g, ClassKind kind,
                                       const OracleCaps& caps = {});

// Every loopless digraph on n vertices exactly once, keyed by an edge-set
// bitmask over ordered pairs (0,1),(0,2),...,(1,0),(1,2),... in that order.
// Refuses n > 4.
void decide_all_small(int n, ClassKind kind,
                      const std::function<void(unsigned long long mask, const Digraph& g,
                                               const std::optional<ClassClaim>& verdict)>& fn,
                      const OracleCaps& caps = {});

std::string to_string(const ClassClaim& claim);

}  // namespace qdg
