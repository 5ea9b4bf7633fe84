#include "trf/poset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace trf {

namespace {
constexpr int kMaxPoset = 32;
}

Poset::Poset(int p) : p_(p), above_(p, 0), below_(p, 0) {
    if (p < 1 || p > kMaxPoset)
        throw UsageError("poset size must satisfy 1 <= p <= 32");
}

Poset::Poset(int p, const std::vector<std::pair<int, int>>& relations) : Poset(p) {
    for (auto [i, j] : relations) {
        if (i < 0 || i >= p || j < 0 || j >= p)
            throw UsageError("relation element out of range");
        above_[i] |= std::uint32_t{1} << j;
    }
    close_and_check();
}

void Poset::close_and_check() {
    // Transitive closure (Floyd-Warshall on bit rows).
    for (int k = 0; k < p_; ++k)
        for (int i = 0; i < p_; ++i)
            if ((above_[i] >> k) & 1u) above_[i] |= above_[k];
    for (int i = 0; i < p_; ++i) {
        if ((above_[i] >> i) & 1u)
            throw UsageError("relation is not a strict order (cycle through " +
                             std::to_string(i) + ")");
    }
    below_.assign(p_, 0);
    for (int i = 0; i < p_; ++i)
        for (int j = 0; j < p_; ++j)
            if (less(i, j)) below_[j] |= std::uint32_t{1} << i;
}

HasseDiagram hasse(const Poset& p) {
    HasseDiagram h;
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j) {
            if (!p.less(i, j)) continue;
            // covered iff nothing strictly between
            if ((p.strictly_above(i) & p.strictly_below(j)) == 0)
                h.edges.emplace_back(i, j);
        }
    return h;
}

int edge_count(const Poset& p) { return static_cast<int>(hasse(p).edges.size()); }

int height(const Poset& p) {
    std::vector<int> h(p.size(), 1);
    // process in an order compatible with the relation
    std::vector<int> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return popcount(p.strictly_below(a)) < popcount(p.strictly_below(b));
    });
    int best = 1;
    for (int j : order) {
        for (int i = 0; i < p.size(); ++i)
            if (p.less(i, j)) h[j] = std::max(h[j], h[i] + 1);
        best = std::max(best, h[j]);
    }
    return best;
}

Poset dual(const Poset& p) {
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j)
            if (p.less(i, j)) rel.emplace_back(j, i);
    return Poset(p.size(), rel);
}

bool has_unique_max(const Poset& p) {
    for (int m = 0; m < p.size(); ++m)
        if (popcount(p.strictly_below(m)) == p.size() - 1) return true;
    return false;
}

bool is_tree_poset(const Poset& p) {
    auto h = hasse(p);
    if (static_cast<int>(h.edges.size()) != p.size() - 1) return false;
    // connectivity of the underlying undirected graph
    std::vector<std::uint32_t> adj(p.size(), 0);
    for (auto [i, j] : h.edges) {
        adj[i] |= std::uint32_t{1} << j;
        adj[j] |= std::uint32_t{1} << i;
    }
    std::uint32_t seen = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < p.size(); ++w)
            if ((adj[v] >> w) & 1u && !((seen >> w) & 1u)) {
                seen |= std::uint32_t{1} << w;
                stack.push_back(w);
            }
    }
    return seen == ((p.size() == 32) ? ~std::uint32_t{0}
                                     : ((std::uint32_t{1} << p.size()) - 1));
}

namespace {

bool iso_extend(const Poset& a, const Poset& b, std::vector<int>& map,
                std::vector<bool>& used, int next) {
    if (next == a.size()) return true;
    for (int cand = 0; cand < b.size(); ++cand) {
        if (used[cand]) continue;
        if (popcount(a.strictly_above(next)) != popcount(b.strictly_above(cand)) ||
            popcount(a.strictly_below(next)) != popcount(b.strictly_below(cand)))
            continue;
        bool ok = true;
        for (int prev = 0; prev < next && ok; ++prev) {
            if (a.less(prev, next) != b.less(map[prev], cand)) ok = false;
            if (a.less(next, prev) != b.less(cand, map[prev])) ok = false;
        }
        if (!ok) continue;
        map[next] = cand;
        used[cand] = true;
        if (iso_extend(a, b, map, used, next + 1)) return true;
        used[cand] = false;
    }
    return false;
}

}  // namespace

bool isomorphic(const Poset& a, const Poset& b) {
    if (a.size() != b.size()) return false;
    std::vector<int> map(a.size(), -1);
    std::vector<bool> used(b.size(), false);
    return iso_extend(a, b, map, used, 0);
}

Poset chain(int k) {
    if (k < 1) throw UsageError("chain length must be >= 1");
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i + 1 < k; ++i) rel.emplace_back(i, i + 1);
    return Poset(k, rel);
}

Poset k_rs(int r, int s) {
    if (r < 1 || s < 1) throw UsageError("K_{r,s} needs r,s >= 1");
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < s; ++j) rel.emplace_back(i, r + j);
    return Poset(r + s, rel);
}

Poset vee(int s) { return k_rs(1, s); }
Poset wedge(int r) { return k_rs(r, 1); }
Poset butterfly() { return k_rs(2, 2); }

Poset diamond() {
    return Poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

Poset k_r1s(int r, int s) {
    if (r < 1 || s < 1) throw UsageError("K_{r,1,s} needs r,s >= 1");
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < r; ++i) rel.emplace_back(i, r);
    for (int j = 0; j < s; ++j) rel.emplace_back(r, r + 1 + j);
    return Poset(r + 1 + s, rel);
}

Poset p_m_gadget(int m) {
    if (m < 1) throw UsageError("P_m gadget needs m >= 1");
    long long nb = (1LL << m) + 1;
    long long nc = nb * (nb - 1) / 2;
    long long total = 1 + nb + nc;
    if (total > kMaxPoset)
        throw UsageError("P_m gadget has " + std::to_string(total) +
                         " elements; only m <= 2 fits the 32-element cap");
    std::vector<std::pair<int, int>> rel;
    for (int i = 1; i <= nb; ++i) rel.emplace_back(0, i);
    int c = 1 + static_cast<int>(nb);
    for (int k = 1; k <= nb; ++k)
        for (int l = k + 1; l <= nb; ++l) {
            rel.emplace_back(k, c);
            rel.emplace_back(l, c);
            ++c;
        }
    return Poset(static_cast<int>(total), rel);
}

Poset tree_from_hasse(int p, const std::vector<std::pair<int, int>>& covers) {
    Poset out(p, covers);
    if (!is_tree_poset(out)) throw UsageError("cover relation is not a tree poset");
    return out;
}

namespace {

int unique_max_of(const Poset& t) {
    for (int m = 0; m < t.size(); ++m)
        if (popcount(t.strictly_below(m)) == t.size() - 1) return m;
    throw UsageError("poset has no unique maximum element");
}

}  // namespace

Poset t_power(const Poset& t, int k) {
    if (k < 1) throw UsageError("T^k needs k >= 1");
    if (!is_tree_poset(t)) throw UsageError("T^k needs a tree poset");
    int m = unique_max_of(t);
    int base = t.size() - 1;
    if (base + k > kMaxPoset) throw UsageError("T^k exceeds the 32-element cap");
    // compacted labels for T \ {m}, then the k new tops
    std::vector<int> relab(t.size(), -1);
    int next = 0;
    for (int i = 0; i < t.size(); ++i)
        if (i != m) relab[i] = next++;
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < t.size(); ++i)
        for (int j = 0; j < t.size(); ++j)
            if (i != m && j != m && t.less(i, j)) rel.emplace_back(relab[i], relab[j]);
    for (int i = 0; i < t.size(); ++i)
        if (i != m)
            for (int q = 0; q < k; ++q) rel.emplace_back(relab[i], base + q);
    return Poset(base + k, rel);
}

Poset t_otimes(const Poset& t, int r) {
    if (r < 1) throw UsageError("T^{(x)r} needs r >= 1");
    if (!is_tree_poset(t)) throw UsageError("T^{(x)r} needs a tree poset");
    if (t.size() == 1) return t;
    int m = unique_max_of(t);
    auto h = hasse(t);
    std::vector<int> children;
    for (auto [i, j] : h.edges)
        if (j == m) children.push_back(i);

    // induced subposet on the down-closure of one child
    auto subtree = [&](int child) {
        std::vector<int> elems;
        for (int i = 0; i < t.size(); ++i)
            if (i == child || t.less(i, child)) elems.push_back(i);
        std::vector<int> relab(t.size(), -1);
        for (std::size_t idx = 0; idx < elems.size(); ++idx) relab[elems[idx]] = (int)idx;
        std::vector<std::pair<int, int>> rel;
        for (int i : elems)
            for (int j : elems)
                if (t.less(i, j)) rel.emplace_back(relab[i], relab[j]);
        return Poset(static_cast<int>(elems.size()), rel);
    };

    std::vector<Poset> blown;
    for (int c : children) blown.push_back(t_otimes(subtree(c), r));

    long long total = 1;
    for (const auto& b : blown) total += static_cast<long long>(b.size()) * r;
    if (total > kMaxPoset) throw UsageError("T^{(x)r} exceeds the 32-element cap");

    std::vector<std::pair<int, int>> rel;
    int offset = 0;
    int top = static_cast<int>(total) - 1;
    for (const auto& b : blown) {
        for (int copy = 0; copy < r; ++copy) {
            for (int i = 0; i < b.size(); ++i) {
                for (int j = 0; j < b.size(); ++j)
                    if (b.less(i, j)) rel.emplace_back(offset + i, offset + j);
                rel.emplace_back(offset + i, top);
            }
            offset += b.size();
        }
    }
    return Poset(static_cast<int>(total), rel);
}

Poset build_named(const std::string& name, const std::vector<long long>& params) {
    auto need = [&](std::size_t k) {
        if (params.size() != k)
            throw UsageError("poset \"" + name + "\" needs " + std::to_string(k) +
                             " parameter(s)");
    };
    if (name == "chain") { need(1); return chain((int)params[0]); }
    if (name == "vee") { need(1); return vee((int)params[0]); }
    if (name == "wedge") { need(1); return wedge((int)params[0]); }
    if (name == "butterfly") { need(0); return butterfly(); }
    if (name == "diamond") { need(0); return diamond(); }
    if (name == "k_rs") { need(2); return k_rs((int)params[0], (int)params[1]); }
    if (name == "k_r1s") { need(2); return k_r1s((int)params[0], (int)params[1]); }
    if (name == "p_m") { need(1); return p_m_gadget((int)params[0]); }
    throw UsageError("unknown poset name \"" + name + "\"");
}

std::string poset_to_json(const Poset& p) {
    nlohmann::json j;
    j["p"] = p.size();
    auto& lt = j["lt"] = nlohmann::json::array();
    for (int i = 0; i < p.size(); ++i)
        for (int k = 0; k < p.size(); ++k)
            if (p.less(i, k)) lt.push_back({i, k});
    return j.dump();
}

Poset poset_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.contains("name")) {
        std::vector<long long> params;
        if (j.contains("params"))
            for (const auto& v : j.at("params")) params.push_back(v.get<long long>());
        return build_named(j.at("name").get<std::string>(), params);
    }
    int p = j.at("p").get<int>();
    std::vector<std::pair<int, int>> rel;
    for (const auto& e : j.at("lt")) rel.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Poset(p, rel);
}

namespace {

std::uint64_t fnv1a(const void* data, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= b[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<std::uint32_t> relabeled_rows(const Poset& p, const std::vector<int>& perm) {
    // perm[i] = new label of old element i
    std::vector<std::uint32_t> rows(p.size(), 0);
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j)
            if (p.less(i, j)) rows[perm[i]] |= std::uint32_t{1} << perm[j];
    return rows;
}

}  // namespace

std::string poset_canonical_id(const Poset& p) {
    std::vector<int> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint32_t> best;
    bool exact = p.size() <= 8;
    if (exact) {
        best = relabeled_rows(p, perm);
        while (std::next_permutation(perm.begin(), perm.end())) {
            auto cand = relabeled_rows(p, perm);
            if (cand < best) best = std::move(cand);
        }
    } else {
        // refinement heuristic: sort by (downset size, upset size) signature
        std::vector<int> order(p.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            auto ka = std::make_pair(popcount(p.strictly_below(a)),
                                     popcount(p.strictly_above(a)));
            auto kb = std::make_pair(popcount(p.strictly_below(b)),
                                     popcount(p.strictly_above(b)));
            return ka < kb;
        });
        for (int k = 0; k < p.size(); ++k) perm[order[k]] = k;
        best = relabeled_rows(p, perm);
    }
    std::uint64_t h = fnv1a(best.data(), best.size() * sizeof(std::uint32_t));
    std::ostringstream os;
    os << "p" << p.size() << "-" << std::hex << h;
    if (!exact) os << "-heuristic";
    return os.str();
}

}  // namespace trf
