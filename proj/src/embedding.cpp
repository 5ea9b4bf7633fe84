#include "trf/embedding.hpp"

#include <algorithm>
#include <numeric>

namespace trf {

namespace {

inline bool strict_subset(Mask a, Mask b) { return a != b && (a & ~b) == 0; }

struct CopySearch {
    const std::vector<Mask>& members;
    const Poset& p;
    std::vector<int> order;       // poset elements, most-constrained first
    std::vector<Mask> assigned;   // by poset element
    std::vector<bool> used;       // by member index
    int forced_pos = -1;          // position in `order` pinned to `forced`
    Mask forced = 0;

    CopySearch(const Family& fam, const Poset& poset)
        : members(fam.members()), p(poset), assigned(poset.size(), 0),
          used(fam.size(), false) {
        order.resize(p.size());
        std::iota(order.begin(), order.end(), 0);
        // place highly related elements early
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return popcount(p.strictly_above(a)) + popcount(p.strictly_below(a)) >
                   popcount(p.strictly_above(b)) + popcount(p.strictly_below(b));
        });
    }

    bool consistent(int elem, Mask m, int upto) const {
        for (int pos = 0; pos < upto; ++pos) {
            int q = order[pos];
            if (p.less(q, elem) && !strict_subset(assigned[q], m)) return false;
            if (p.less(elem, q) && !strict_subset(m, assigned[q])) return false;
        }
        return true;
    }

    bool extend(int pos) {
        if (pos == p.size()) return true;
        int elem = order[pos];
        if (pos == forced_pos) {
            if (!consistent(elem, forced, pos)) return false;
            assigned[elem] = forced;
            return extend(pos + 1);
        }
        for (std::size_t idx = 0; idx < members.size(); ++idx) {
            if (used[idx]) continue;
            Mask m = members[idx];
            if (forced_pos >= 0 && m == forced) continue;
            if (!consistent(elem, m, pos)) continue;
            used[idx] = true;
            assigned[elem] = m;
            if (extend(pos + 1)) return true;
            used[idx] = false;
        }
        return false;
    }
};

std::optional<EmbeddingWitness> find_copy_impl(const Family& fam, const Poset& p,
                                               const Mask* forced) {
    if (static_cast<int>(fam.size()) < p.size()) return std::nullopt;
    CopySearch s(fam, p);
    if (forced) {
        s.forced = *forced;
        // the forced set may play any role in the poset
        for (int pos = 0; pos < p.size(); ++pos) {
            s.forced_pos = pos;
            std::fill(s.used.begin(), s.used.end(), false);
            if (s.extend(0)) return EmbeddingWitness{s.assigned};
        }
        return std::nullopt;
    }
    if (s.extend(0)) return EmbeddingWitness{s.assigned};
    return std::nullopt;
}

}  // namespace

bool witness_valid(const EmbeddingWitness& w, const Family& fam, const Poset& p) {
    if (static_cast<int>(w.map.size()) != p.size()) return false;
    for (int i = 0; i < p.size(); ++i) {
        if (!fam.contains(w.map[i])) return false;
        for (int j = 0; j < p.size(); ++j) {
            if (i != j && w.map[i] == w.map[j]) return false;
            if (p.less(i, j) && !strict_subset(w.map[i], w.map[j])) return false;
        }
    }
    return true;
}

std::optional<EmbeddingWitness> find_copy(const Family& fam, const Poset& p) {
    return find_copy_impl(fam, p, nullptr);
}

std::optional<EmbeddingWitness> find_copy_using(const Family& fam, const Poset& p,
                                                Mask forced) {
    return find_copy_impl(fam, p, &forced);
}

bool is_p_free(const Family& fam, const Poset& p) {
    return !find_copy(fam, p).has_value();
}

namespace {

// Visit all l-subsets of [n] in lex order of their sorted element lists.
template <typename F>
void for_each_subset_lex(int n, int l, F&& visit) {
    if (l < 0 || l > n) return;
    std::vector<int> c(l);
    std::iota(c.begin(), c.end(), 1);
    while (true) {
        Mask m = 0;
        for (int e : c) m |= Mask{1} << (e - 1);
        if (visit(m)) return;
        int i = l - 1;
        while (i >= 0 && c[i] == n - (l - 1 - i)) --i;
        if (i < 0) return;
        ++c[i];
        for (int j = i + 1; j < l; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace

std::optional<TraceViolation> find_l_trace_violation(const Family& fam,
                                                     const Poset& p, int l) {
    if (l < 0 || l > fam.n()) throw UsageError("trace size out of range");
    std::optional<TraceViolation> out;
    for_each_subset_lex(fam.n(), l, [&](Mask L) {
        Family tr = trace_family(fam, L);
        auto w = find_copy(tr, p);
        if (!w) return false;
        TraceViolation v;
        v.L = L;
        v.witness = *w;
        for (Mask t : w->map)
            for (Mask m : fam.members())
                if ((m & L) == t) {
                    v.preimages.push_back(m);
                    break;
                }
        out = std::move(v);
        return true;  // lex-first violation wins
    });
    return out;
}

bool is_l_trace_p_free(const Family& fam, const Poset& p, int l) {
    return !find_l_trace_violation(fam, p, l).has_value();
}

bool is_trace_p_free_naive(const Family& fam, const Poset& p) {
    for (int l = fam.n(); l >= 1; --l)
        if (!is_l_trace_p_free(fam, p, l)) return false;
    return true;
}

bool is_trace_p_free(const Family& fam, const Poset& p) {
    int ep = edge_count(p);
    if (ep == 0) return is_trace_p_free_naive(fam, p);  // no separators to shrink by
    int lmax = std::min(fam.n(), ep);
    for (int l = lmax; l >= 1; --l)
        if (!is_l_trace_p_free(fam, p, l)) return false;
    return true;
}

std::optional<Mask> find_shattered_set(const Family& fam, int k) {
    if (k < 0 || k > fam.n()) throw UsageError("shatter size out of range");
    if (k == 0) return fam.empty() ? std::nullopt : std::optional<Mask>(0);
    std::optional<Mask> out;
    for_each_subset_lex(fam.n(), k, [&](Mask X) {
        std::vector<int> bits;
        for (int j = 0; j < fam.n(); ++j)
            if (X & (Mask{1} << j)) bits.push_back(j);
        std::vector<bool> seen(std::size_t{1} << k, false);
        std::size_t distinct = 0;
        for (Mask m : fam.members()) {
            std::size_t idx = 0;
            for (std::size_t b = 0; b < bits.size(); ++b)
                if (m & (Mask{1} << bits[b])) idx |= std::size_t{1} << b;
            if (!seen[idx]) {
                seen[idx] = true;
                if (++distinct == (std::size_t{1} << k)) break;
            }
        }
        if (distinct == (std::size_t{1} << k)) {
            out = X;
            return true;
        }
        return false;
    });
    return out;
}

int vc_dim(const Family& fam) {
    if (fam.empty()) return -1;
    int best = 0;
    for (int k = 1; k <= fam.n(); ++k) {
        if ((std::size_t{1} << k) > fam.size()) break;
        if (find_shattered_set(fam, k))
            best = k;
        else
            break;  // shattering is monotone: a shattered k-set shatters below
    }
    return best;
}

}  // namespace trf
