#pragma once

#include <functional>
#include <optional>
#include <string>

#include "trf/embedding.hpp"
#include "trf/family.hpp"
#include "trf/poset.hpp"

namespace trf {

struct SearchBudget {
    double time_limit_s = 0;   // 0 = unlimited
    long long node_limit = 0;  // 0 = unlimited
    int workers = 1;
    enum class Symmetry { Exact, Heuristic, Off } symmetry = Symmetry::Exact;
    std::uint64_t seed = 0;    // branch exploration order
};

struct ExtremalResult {
    std::string kind;  // "la" | "la_d" | "la_u" | "tr" | "tr_l"
    int n = 0;
    std::optional<int> l;
    std::string poset_id;
    long long value = 0;
    std::string status;  // "exact" | "lower_bound_only"
    Family witness{1};
    long long nodes = 0;
    std::vector<std::string> bounds_used;  // pruning bounds active, for audit
    bool exact() const { return status == "exact"; }
};

// Maximum P-free family in 2^[n]. Exact for n <= 7 (documented envelope).
ExtremalResult solve_la(int n, const Poset& p, const SearchBudget& budget = {});

// Maximum P-free downward (upward) closed family, by downset enumeration.
ExtremalResult solve_la_closed(int n, const Poset& p, bool downward,
                               const SearchBudget& budget = {});

// Maximum trace P-free / l-trace P-free family.
ExtremalResult solve_tr(int n, const Poset& p, const SearchBudget& budget = {});
ExtremalResult solve_tr_l(int n, int l, const Poset& p,
                          const SearchBudget& budget = {});

// Downward-closed family enumeration. Visit returns false to stop early.
// With up_to_symmetry, one representative per S_n-orbit is emitted.
void enumerate_downsets(int n, std::optional<int> exact_size, bool up_to_symmetry,
                        const std::function<bool(const Family&)>& visit);

// Independent counting routes (both equal the Dedekind number M(n)).
long long count_downsets_direct(int n);
long long count_downsets_antichain(int n);

// Number of distinct images of `fam` under ground-set permutations.
long long orbit_size(const Family& fam);

struct ArrowResult {
    bool holds = false;
    bool vacuous = false;  // no family of size m exists
    std::optional<Family> counterexample;  // downset, canonically minimized
    long long nodes = 0;
    bool budget_exhausted = false;
};

// (n,m) -> (k,l): every size-m family over [n] has a k-set X with
// |F|_X| >= l. Decided through downward closed families.
ArrowResult arrow(int n, int m, int k, int l, const SearchBudget& budget = {});

// (n, 1 + sum_{i<k} C(n,i)) -> (k, 2^k).
ArrowResult sauer_arrow_suite(int n, int k);

}  // namespace trf
