#include "trf/constructions.hpp"

#include <algorithm>
#include <numeric>

namespace trf {

Family consecutive_levels(int n, int j, int k) {
    check_ground_set(n);
    if (j < 0 || k < 1 || j + 1 > n) throw UsageError("bad level band parameters");
    std::vector<Mask> ms;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        int sz = popcount(m);
        if (sz > j && sz <= j + k) ms.push_back(m);
    }
    return Family(n, std::move(ms));
}

Family butterfly_lower(int n) {
    check_ground_set(n);
    std::vector<Mask> ms{0};
    for (int i = 0; i < n; ++i) ms.push_back(Mask{1} << i);
    for (int i = 0; i + 1 < n; i += 2)
        ms.push_back((Mask{1} << i) | (Mask{1} << (i + 1)));
    return Family(n, std::move(ms));
}

std::vector<Family> mod_sum_classes(int n) {
    check_ground_set(n);
    if (n < 2) throw UsageError("mod_sum_classes needs n >= 2");
    std::vector<std::vector<Mask>> cls(n);
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        if (popcount(m) != n / 2) continue;
        int sum = 0;
        for (int j = 0; j < n; ++j)
            if (m & (Mask{1} << j)) sum += j + 1;
        int i = sum % n;           // class index i in 1..n, i = n <-> residue 0
        if (i == 0) i = n;
        cls[i - 1].push_back(m);
    }
    std::vector<Family> out;
    out.reserve(n);
    for (auto& c : cls) out.emplace_back(n, std::move(c));
    return out;
}

Family top_classes(int n, int s) {
    if (s < 1 || s > n) throw UsageError("top_classes needs 1 <= s <= n");
    auto cls = mod_sum_classes(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return cls[a].size() > cls[b].size();  // stable: ties keep smaller index
    });
    std::vector<Mask> ms;
    for (int i = 0; i < s; ++i)
        for (Mask m : cls[order[i]].members()) ms.push_back(m);
    return Family(n, std::move(ms));
}

namespace {

// Blocks of sizes ceil/floor, larger blocks first, consecutive elements.
std::vector<Mask> partition_blocks(int n, int m) {
    std::vector<Mask> blocks;
    int rem = n % m, base = n / m, at = 0;
    for (int b = 0; b < m; ++b) {
        int sz = base + (b < rem ? 1 : 0);
        Mask blk = 0;
        for (int i = 0; i < sz; ++i) blk |= Mask{1} << (at + i);
        at += sz;
        blocks.push_back(blk);
    }
    return blocks;
}

}  // namespace

long long p_m_family_size_formula(int n, int m) {
    long long prod = 1;
    int rem = n % m, base = n / m;
    for (int b = 0; b < m; ++b) prod *= base + (b < rem ? 1 : 0) + 1;
    return prod;
}

Family p_m_family(int n, int m) {
    check_ground_set(n);
    if (m < 1 || m > n) throw UsageError("p_m_family needs 1 <= m <= n");
    auto blocks = partition_blocks(n, m);
    std::vector<Mask> ms;
    for (Mask x = 0; x < (Mask{1} << n); ++x) {
        bool ok = true;
        for (Mask blk : blocks)
            if (popcount(x & blk) > 1) {
                ok = false;
                break;
            }
        if (ok) ms.push_back(x);
    }
    return Family(n, std::move(ms));
}

ConstructionReport verify_construction(const Family& fam, long long claimed_size,
                                       Predicate pred, const Poset* poset, int l) {
    ConstructionReport rep{fam, claimed_size,
                           static_cast<long long>(fam.size()) == claimed_size,
                           "", true, ""};
    switch (pred) {
        case Predicate::PFree: {
            rep.predicate = "p_free";
            if (!poset) throw UsageError("predicate needs a poset");
            if (auto w = find_copy(fam, *poset)) {
                rep.predicate_ok = false;
                rep.violation = "copy found: " +
                                family_to_string(Family(fam.n(), w->map));
            }
            break;
        }
        case Predicate::TraceFree: {
            rep.predicate = "trace_p_free";
            if (!poset) throw UsageError("predicate needs a poset");
            if (!is_trace_p_free(fam, *poset)) {
                rep.predicate_ok = false;
                rep.violation = "trace copy found";
            }
            break;
        }
        case Predicate::LTraceFree: {
            rep.predicate = std::to_string(l) + "-trace_p_free";
            if (!poset) throw UsageError("predicate needs a poset");
            if (auto v = find_l_trace_violation(fam, *poset, l)) {
                rep.predicate_ok = false;
                rep.violation = "copy in trace on " + set_to_string(v->L);
            }
            break;
        }
        case Predicate::DownwardClosed: {
            rep.predicate = "downward_closed";
            if (!is_downward_closed(fam)) {
                rep.predicate_ok = false;
                rep.violation = "not downward closed";
            }
            break;
        }
    }
    if (!rep.size_ok && rep.violation.empty())
        rep.violation = "size mismatch: got " + std::to_string(fam.size());
    return rep;
}

}  // namespace trf
