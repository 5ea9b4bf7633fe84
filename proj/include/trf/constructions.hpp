#pragma once

#include <string>
#include <vector>

#include "trf/embedding.hpp"
#include "trf/family.hpp"
#include "trf/poset.hpp"

namespace trf {

// Union of the k consecutive levels j+1 .. j+k of [n].
Family consecutive_levels(int n, int j, int k);

// Empty set, all singletons, floor(n/2) pairwise disjoint 2-sets:
// size floor(3n/2) + 1, downward closed, trace-butterfly-free.
Family butterfly_lower(int n);

// Partition of the middle level by the sum of elements mod n; class i
// holds the sets with sum = i (mod n), i = 1..n (i = n means residue 0).
std::vector<Family> mod_sum_classes(int n);

// Union of the s largest classes (ties prefer smaller residue index).
Family top_classes(int n, int s);

// Sets meeting each block of an m-part almost-equal partition of [n]
// in at most one element; size is the product of (block size + 1).
Family p_m_family(int n, int m);
long long p_m_family_size_formula(int n, int m);

enum class Predicate {
    PFree,
    TraceFree,
    LTraceFree,
    DownwardClosed,
};

struct ConstructionReport {
    Family family;
    long long claimed_size;
    bool size_ok;
    std::string predicate;
    bool predicate_ok;
    std::string violation;  // human-readable, empty on pass
    bool pass() const { return size_ok && predicate_ok; }
};

// Runs the named predicate from the embedding module plus the size
// formula; never trusts the generator.
ConstructionReport verify_construction(const Family& fam, long long claimed_size,
                                       Predicate pred, const Poset* poset = nullptr,
                                       int l = 0);

}  // namespace trf
