#pragma once

#include <optional>
#include <vector>

#include "trf/family.hpp"
#include "trf/poset.hpp"

namespace trf {

// Injective assignment poset element -> family member such that every
// strict poset relation maps to strict set inclusion (non-induced).
struct EmbeddingWitness {
    std::vector<Mask> map;  // map[poset element] = member mask
};

// Replays a witness against a family and poset.
bool witness_valid(const EmbeddingWitness& w, const Family& fam, const Poset& p);

std::optional<EmbeddingWitness> find_copy(const Family& fam, const Poset& p);

// A copy that must use `forced` as one of its sets.
std::optional<EmbeddingWitness> find_copy_using(const Family& fam, const Poset& p,
                                                Mask forced);

bool is_p_free(const Family& fam, const Poset& p);

struct TraceViolation {
    Mask L;                   // offending l-subset
    EmbeddingWitness witness; // copy inside trace_family(fam, L)
    std::vector<Mask> preimages;  // members of fam whose traces form the copy
};

// Exact sweep over all l-subsets; on failure reports the lexicographically
// smallest violating L (lex on sorted element lists).
std::optional<TraceViolation> find_l_trace_violation(const Family& fam,
                                                     const Poset& p, int l);
bool is_l_trace_p_free(const Family& fam, const Poset& p, int l);

// Equivalent to checking every l <= n; implemented over l <= min(n, E(P)).
bool is_trace_p_free(const Family& fam, const Poset& p);
// Reference predicate, full sweep over every l <= n.
bool is_trace_p_free_naive(const Family& fam, const Poset& p);

std::optional<Mask> find_shattered_set(const Family& fam, int k);
int vc_dim(const Family& fam);

}  // namespace trf
