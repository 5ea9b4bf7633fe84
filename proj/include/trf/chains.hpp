#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trf/embedding.hpp"
#include "trf/family.hpp"

namespace trf {

// Partition of 2^[n] into C(n, floor(n/2)) symmetric chains.
struct ChainDecomposition {
    int n;
    std::vector<std::vector<Mask>> chains;  // each strictly nested, by size
};

ChainDecomposition symmetric_chain_decomposition(int n);
bool chain_decomposition_valid(const ChainDecomposition& cd);

// Exact rational (reduced, non-negative use only).
struct Rational {
    long long num = 0;
    long long den = 1;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};
Rational rational_add(Rational a, Rational b);
bool rational_le_one(Rational a);

// lambda(F) = sum over members of 1/C(n,|F|).
Rational lubell(const Family& fam);

// "antichain implies lambda <= 1" as a checked implication.
bool lym_check(const Family& fam);

bool is_antichain(const Family& fam);

// Height-partition extraction: an antichain of size >= |fam|/s from a
// family with no (s+1)-chain. Throws naming an (s+1)-chain otherwise.
struct ChainFound : std::runtime_error {
    std::vector<Mask> chain;
    explicit ChainFound(std::vector<Mask> c)
        : std::runtime_error("family contains a chain longer than allowed"),
          chain(std::move(c)) {}
};
Family mirsky_antichain(const Family& fam, int s);

// Longest chain (nested sequence) among the members.
std::vector<Mask> longest_member_chain(const Family& fam);

struct LabeledEdge {
    int u, v;          // 1-based ground-set elements, u < v
    int label;         // |C| for the smallest qualifying chain member C
    int multiplicity;  // number of qualifying chain members
};

struct LabeledChainGraph {
    int n;
    int chain_id;
    std::vector<LabeledEdge> edges;
};

// Edge {u,v} present iff some C in the chain satisfies C n {u,v} = 0 and
// C u {u,v} in fam. Label = smallest such |C|.
LabeledChainGraph chain_graph(const Family& fam, const ChainDecomposition& cd,
                              int chain_id);

struct CycleViolation {
    // consecutive edge indices e1..e4 into graph.edges, with e1 carrying
    // the minimum label and e3 the maximum (e1, e3 non-adjacent)
    int e[4];
};

// nullopt = every 4-cycle satisfies the min/max-adjacent label rule.
std::optional<CycleViolation> find_cycle_label_violation(const LabeledChainGraph& g);
bool check_cycle_label_condition(const LabeledChainGraph& g);

// Replays a violating 4-cycle: the traces of the four witnessing family
// members on [n] \ e1 must form a diamond. Returns the 4-member trace
// family (over [n]) for independent checking.
Family replay_cycle_violation(const Family& fam, const ChainDecomposition& cd,
                              int chain_id, const CycleViolation& v);

std::optional<std::pair<std::vector<int>, std::vector<int>>>
contains_complete_bipartite(const std::vector<std::uint64_t>& adj, int a, int b);

struct MonotoneResult {
    int length;
    std::vector<int> indices;
};
MonotoneResult longest_monotone_subsequence(const std::vector<double>& seq);

}  // namespace trf
