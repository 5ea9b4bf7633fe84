#include "trf/chains.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace trf {

namespace {

// Bracket view of a mask: i in A reads ')', i not in A reads '('.
// Returns the positions (0-based) left unmatched, in increasing order;
// unmatched ')' positions always precede unmatched '(' ones.
std::vector<int> unmatched_positions(Mask a, int n) {
    std::vector<int> stack, out_closed;
    for (int i = 0; i < n; ++i) {
        if (a & (Mask{1} << i)) {
            if (!stack.empty())
                stack.pop_back();
            else
                out_closed.push_back(i);
        } else {
            stack.push_back(i);
        }
    }
    for (int i : stack) out_closed.push_back(i);
    return out_closed;
}

}  // namespace

ChainDecomposition symmetric_chain_decomposition(int n) {
    check_ground_set(n);
    ChainDecomposition cd;
    cd.n = n;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        auto un = unmatched_positions(m, n);
        Mask minimum = m;
        for (int q : un) minimum &= ~(Mask{1} << q);
        if (minimum != m) continue;  // not the chain minimum
        std::vector<Mask> chain{m};
        Mask cur = m;
        for (int q : un) {
            cur |= Mask{1} << q;
            chain.push_back(cur);
        }
        cd.chains.push_back(std::move(chain));
    }
    return cd;
}

bool chain_decomposition_valid(const ChainDecomposition& cd) {
    const int n = cd.n;
    if (static_cast<long long>(cd.chains.size()) != binomial(n, n / 2)) return false;
    std::vector<bool> seen(std::size_t{1} << n, false);
    for (const auto& chain : cd.chains) {
        if (chain.empty()) return false;
        int lo = popcount(chain.front()), hi = popcount(chain.back());
        if (lo + hi != n) return false;  // symmetric
        if (static_cast<int>(chain.size()) != hi - lo + 1) return false;
        for (std::size_t i = 0; i < chain.size(); ++i) {
            if (seen[chain[i]]) return false;
            seen[chain[i]] = true;
            if (popcount(chain[i]) != lo + static_cast<int>(i)) return false;
            if (i && (chain[i - 1] & ~chain[i])) return false;  // nested
        }
    }
    for (Mask m = 0; m < (Mask{1} << n); ++m)
        if (!seen[m]) return false;
    return true;
}

namespace {
long long gcd_ll(long long a, long long b) {
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}
}  // namespace

Rational rational_add(Rational a, Rational b) {
    __int128 num = static_cast<__int128>(a.num) * b.den +
                   static_cast<__int128>(b.num) * a.den;
    __int128 den = static_cast<__int128>(a.den) * b.den;
    __int128 g = gcd_ll(static_cast<long long>(num < 0 ? -num : num),
                        static_cast<long long>(den));
    if (g == 0) g = 1;
    num /= g;
    den /= g;
    if (num > INT64_MAX || den > INT64_MAX)
        throw std::overflow_error("rational overflow");
    return {static_cast<long long>(num), static_cast<long long>(den)};
}

bool rational_le_one(Rational a) { return a.num <= a.den; }

Rational lubell(const Family& fam) {
    Rational sum{0, 1};
    for (Mask m : fam.members())
        sum = rational_add(sum, Rational{1, binomial(fam.n(), popcount(m))});
    return sum;
}

bool is_antichain(const Family& fam) {
    const auto& ms = fam.members();
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = 0; j < ms.size(); ++j)
            if (i != j && (ms[i] & ~ms[j]) == 0) return false;
    return true;
}

bool lym_check(const Family& fam) {
    if (!is_antichain(fam)) return true;
    return rational_le_one(lubell(fam));
}

namespace {

// Height of each member (longest nested sequence ending there) plus a
// parent pointer for chain reconstruction.
struct Heights {
    std::vector<int> h;
    std::vector<int> parent;  // index into members, -1 at bottoms
};

Heights member_heights(const Family& fam) {
    const auto& ms = fam.members();
    std::vector<std::size_t> order(ms.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return popcount(ms[a]) < popcount(ms[b]);
    });
    Heights out{std::vector<int>(ms.size(), 1), std::vector<int>(ms.size(), -1)};
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        std::size_t i = order[oi];
        for (std::size_t oj = 0; oj < oi; ++oj) {
            std::size_t j = order[oj];
            if (ms[j] != ms[i] && (ms[j] & ~ms[i]) == 0 && out.h[j] + 1 > out.h[i]) {
                out.h[i] = out.h[j] + 1;
                out.parent[i] = static_cast<int>(j);
            }
        }
    }
    return out;
}

}  // namespace

std::vector<Mask> longest_member_chain(const Family& fam) {
    if (fam.empty()) return {};
    Heights hs = member_heights(fam);
    std::size_t top = std::max_element(hs.h.begin(), hs.h.end()) - hs.h.begin();
    std::vector<Mask> chain;
    for (int i = static_cast<int>(top); i >= 0; i = hs.parent[i])
        chain.push_back(fam.members()[i]);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

Family mirsky_antichain(const Family& fam, int s) {
    if (s < 1) throw UsageError("mirsky_antichain needs s >= 1");
    if (fam.empty()) return fam;
    Heights hs = member_heights(fam);
    int maxh = *std::max_element(hs.h.begin(), hs.h.end());
    if (maxh > s) throw ChainFound(longest_member_chain(fam));
    std::vector<std::vector<Mask>> classes(maxh + 1);
    for (std::size_t i = 0; i < fam.size(); ++i)
        classes[hs.h[i]].push_back(fam.members()[i]);
    std::size_t best = 1;
    for (int h = 1; h <= maxh; ++h)
        if (classes[h].size() > classes[best].size()) best = h;
    return Family(fam.n(), classes[best]);
}

LabeledChainGraph chain_graph(const Family& fam, const ChainDecomposition& cd,
                              int chain_id) {
    if (fam.n() != cd.n) throw UsageError("family and decomposition ground sets differ");
    if (chain_id < 0 || chain_id >= static_cast<int>(cd.chains.size()))
        throw UsageError("chain id out of range");
    LabeledChainGraph g{cd.n, chain_id, {}};
    std::map<std::pair<int, int>, std::pair<int, int>> acc;  // edge -> (min|C|, count)
    for (Mask c : cd.chains[chain_id]) {
        for (int u = 0; u < cd.n; ++u) {
            if (c & (Mask{1} << u)) continue;
            for (int v = u + 1; v < cd.n; ++v) {
                if (c & (Mask{1} << v)) continue;
                Mask e = (Mask{1} << u) | (Mask{1} << v);
                if (!fam.contains(c | e)) continue;
                auto key = std::make_pair(u + 1, v + 1);
                auto it = acc.find(key);
                int sz = popcount(c);
                if (it == acc.end())
                    acc[key] = {sz, 1};
                else {
                    it->second.first = std::min(it->second.first, sz);
                    it->second.second++;
                }
            }
        }
    }
    for (const auto& [key, val] : acc)
        g.edges.push_back({key.first, key.second, val.first, val.second});
    return g;
}

namespace {

bool edges_adjacent(const LabeledEdge& a, const LabeledEdge& b) {
    return a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
}

}  // namespace

std::optional<CycleViolation> find_cycle_label_violation(const LabeledChainGraph& g) {
    const int n = g.n;
    std::vector<std::vector<int>> eid(n + 1, std::vector<int>(n + 1, -1));
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        eid[g.edges[i].u][g.edges[i].v] = static_cast<int>(i);
        eid[g.edges[i].v][g.edges[i].u] = static_cast<int>(i);
    }
    // 4-cycles: x,y with two common neighbors w,z give x-w-y-z-x
    for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y) {
            std::vector<int> common;
            for (int w = 1; w <= n; ++w)
                if (w != x && w != y && eid[x][w] >= 0 && eid[y][w] >= 0)
                    common.push_back(w);
            for (std::size_t a = 0; a < common.size(); ++a)
                for (std::size_t b = a + 1; b < common.size(); ++b) {
                    int w = common[a], z = common[b];
                    int cyc[4] = {eid[x][w], eid[w][y], eid[y][z], eid[z][x]};
                    int lo = cyc[0], hi = cyc[0];
                    for (int e : cyc) {
                        if (g.edges[e].label < g.edges[lo].label) lo = e;
                        if (g.edges[e].label > g.edges[hi].label) hi = e;
                    }
                    for (int e1 : cyc)
                        for (int e3 : cyc) {
                            if (g.edges[e1].label != g.edges[lo].label) continue;
                            if (g.edges[e3].label != g.edges[hi].label) continue;
                            if (e1 == e3) continue;
                            if (edges_adjacent(g.edges[e1], g.edges[e3])) continue;
                            // e1 and e3 are opposite; the other two connect them
                            CycleViolation v;
                            v.e[0] = e1;
                            v.e[2] = e3;
                            int k = 1;
                            for (int e : cyc)
                                if (e != e1 && e != e3) v.e[k == 1 ? 1 : 3] = e, k = 3;
                            return v;
                        }
                }
        }
    return std::nullopt;
}

bool check_cycle_label_condition(const LabeledChainGraph& g) {
    return !find_cycle_label_violation(g).has_value();
}

Family replay_cycle_violation(const Family& fam, const ChainDecomposition& cd,
                              int chain_id, const CycleViolation& v) {
    const auto& chain = cd.chains.at(chain_id);
    auto smallest_c = [&](const LabeledEdge& e) -> Mask {
        Mask em = (Mask{1} << (e.u - 1)) | (Mask{1} << (e.v - 1));
        for (Mask c : chain)  // chain sorted by size
            if ((c & em) == 0 && fam.contains(c | em)) return c;
        throw UsageError("violation does not replay against this family");
    };
    // C1 from the min-labeled edge; trace everything on [n] \ e1.
    LabeledChainGraph g = chain_graph(fam, cd, chain_id);
    Mask e1m = (Mask{1} << (g.edges[v.e[0]].u - 1)) | (Mask{1} << (g.edges[v.e[0]].v - 1));
    Mask x = full_mask(fam.n()) & ~e1m;
    std::vector<Mask> traces;
    for (int i = 0; i < 4; ++i) {
        const LabeledEdge& e = g.edges[v.e[i]];
        Mask em = (Mask{1} << (e.u - 1)) | (Mask{1} << (e.v - 1));
        Mask f = smallest_c(e) | em;
        traces.push_back(f & x);
    }
    return Family(fam.n(), std::move(traces));
}

std::optional<std::pair<std::vector<int>, std::vector<int>>>
contains_complete_bipartite(const std::vector<std::uint64_t>& adj, int a, int b) {
    const int n = static_cast<int>(adj.size());
    if (a < 1 || b < a) throw UsageError("bad bipartite part sizes");
    std::vector<int> part;
    std::uint64_t common = ~std::uint64_t{0};

    std::function<std::optional<std::pair<std::vector<int>, std::vector<int>>>(int)>
        rec = [&](int start) -> std::optional<std::pair<std::vector<int>, std::vector<int>>> {
        if (static_cast<int>(part.size()) == a) {
            std::uint64_t cands = common;
            for (int v : part) cands &= ~(std::uint64_t{1} << v);
            if (__builtin_popcountll(cands) >= b) {
                std::vector<int> other;
                for (int v = 0; v < n && static_cast<int>(other.size()) < b; ++v)
                    if (cands & (std::uint64_t{1} << v)) other.push_back(v);
                return std::make_pair(part, other);
            }
            return std::nullopt;
        }
        for (int v = start; v < n; ++v) {
            std::uint64_t next = common & adj[v];
            if (__builtin_popcountll(next) < b) continue;
            std::uint64_t saved = common;
            common = next;
            part.push_back(v);
            if (auto r = rec(v + 1)) return r;
            part.pop_back();
            common = saved;
        }
        return std::nullopt;
    };
    return rec(0);
}

MonotoneResult longest_monotone_subsequence(const std::vector<double>& seq) {
    const int m = static_cast<int>(seq.size());
    MonotoneResult best{0, {}};
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<int> len(m, 1), prev(m, -1);
        int arg = m ? 0 : -1;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < i; ++j) {
                bool ok = dir == 0 ? seq[j] <= seq[i] : seq[j] >= seq[i];
                if (ok && len[j] + 1 > len[i]) {
                    len[i] = len[j] + 1;
                    prev[i] = j;
                }
            }
            if (len[i] > len[arg]) arg = i;
        }
        if (m && len[arg] > best.length) {
            best.length = len[arg];
            best.indices.clear();
            for (int i = arg; i >= 0; i = prev[i]) best.indices.push_back(i);
            std::reverse(best.indices.begin(), best.indices.end());
        }
    }
    return best;
}

}  // namespace trf
