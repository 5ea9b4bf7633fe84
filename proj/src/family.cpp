#include "trf/family.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace trf {

void check_ground_set(int n) {
    if (n < 1 || n > kMaxGroundSet)
        throw UsageError("ground-set size must satisfy 1 <= n <= 30, got " +
                         std::to_string(n));
}

Family::Family(int n, std::vector<Mask> members) : n_(n), members_(std::move(members)) {
    check_ground_set(n);
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (Mask m : members_)
        if (m & ~full_mask(n_))
            throw UsageError("set exceeds ground set [" + std::to_string(n_) + "]");
}

Family Family::from_sets(int n, const std::vector<std::vector<int>>& sets) {
    std::vector<Mask> ms;
    ms.reserve(sets.size());
    for (const auto& s : sets) {
        Mask m = 0;
        for (int e : s) {
            if (e < 1 || e > n)
                throw UsageError("element " + std::to_string(e) + " out of [1," +
                                 std::to_string(n) + "]");
            m |= Mask{1} << (e - 1);
        }
        ms.push_back(m);
    }
    return Family(n, std::move(ms));
}

bool Family::contains(Mask m) const {
    return std::binary_search(members_.begin(), members_.end(), m);
}

bool Family::operator<(const Family& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return members_ < o.members_;
}

std::vector<int> Family::set_elements(std::size_t idx) const {
    std::vector<int> out;
    Mask m = members_.at(idx);
    for (int j = 0; j < n_; ++j)
        if (m & (Mask{1} << j)) out.push_back(j + 1);
    return out;
}

Family trace_family(const Family& fam, Mask x) {
    if (x & ~full_mask(fam.n()))
        throw UsageError("trace set exceeds ground set");
    std::vector<Mask> ms;
    ms.reserve(fam.size());
    for (Mask m : fam.members()) ms.push_back(m & x);
    return Family(fam.n(), std::move(ms));
}

Family down_compress(const Family& fam, int i) {
    if (i < 1 || i > fam.n()) throw UsageError("compression element out of range");
    const Mask bit = Mask{1} << (i - 1);
    std::vector<Mask> ms;
    ms.reserve(fam.size());
    for (Mask m : fam.members()) {
        if (!(m & bit)) {
            ms.push_back(m);
        } else if (fam.contains(m & ~bit)) {
            ms.push_back(m);
        } else {
            ms.push_back(m & ~bit);
        }
    }
    return Family(fam.n(), std::move(ms));
}

Family down_compress_fixpoint(const Family& fam) {
    Family cur = fam;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 1; i <= fam.n(); ++i) {
            Family next = down_compress(cur, i);
            if (next != cur) {
                cur = std::move(next);
                changed = true;
            }
        }
    }
    return cur;
}

bool is_downward_closed(const Family& fam) {
    for (Mask m : fam.members())
        for (int j = 0; j < fam.n(); ++j) {
            Mask bit = Mask{1} << j;
            if ((m & bit) && !fam.contains(m & ~bit)) return false;
        }
    return true;
}

bool is_upward_closed(const Family& fam) {
    const Mask full = full_mask(fam.n());
    for (Mask m : fam.members())
        for (int j = 0; j < fam.n(); ++j) {
            Mask bit = Mask{1} << j;
            if (!(m & bit) && !fam.contains(m | bit)) return false;
        }
    (void)full;
    return true;
}

Family closure_down(const Family& fam) {
    std::vector<Mask> stack(fam.members());
    std::vector<bool> seen(std::size_t{1} << fam.n(), false);
    for (Mask m : stack) seen[m] = true;
    while (!stack.empty()) {
        Mask m = stack.back();
        stack.pop_back();
        for (int j = 0; j < fam.n(); ++j) {
            Mask bit = Mask{1} << j;
            if ((m & bit) && !seen[m & ~bit]) {
                seen[m & ~bit] = true;
                stack.push_back(m & ~bit);
            }
        }
    }
    std::vector<Mask> ms;
    for (Mask m = 0; m < (Mask{1} << fam.n()); ++m)
        if (seen[m]) ms.push_back(m);
    return Family(fam.n(), std::move(ms));
}

Family closure_up(const Family& fam) {
    return complement_family(closure_down(complement_family(fam)));
}

Family shadow(const Family& fam) {
    std::vector<Mask> ms;
    for (Mask m : fam.members())
        for (int j = 0; j < fam.n(); ++j) {
            Mask bit = Mask{1} << j;
            if (m & bit) ms.push_back(m & ~bit);
        }
    return Family(fam.n(), std::move(ms));
}

Family complement_family(const Family& fam) {
    const Mask full = full_mask(fam.n());
    std::vector<Mask> ms;
    ms.reserve(fam.size());
    for (Mask m : fam.members()) ms.push_back(full & ~m);
    return Family(fam.n(), std::move(ms));
}

Mask apply_permutation(Mask m, const std::vector<int>& perm) {
    Mask out = 0;
    for (std::size_t j = 0; j < perm.size(); ++j)
        if (m & (Mask{1} << j)) out |= Mask{1} << perm[j];
    return out;
}

Family apply_permutation(const Family& fam, const std::vector<int>& perm) {
    std::vector<Mask> ms;
    ms.reserve(fam.size());
    for (Mask m : fam.members()) ms.push_back(apply_permutation(m, perm));
    return Family(fam.n(), std::move(ms));
}

namespace {

// Permuted-and-sorted member list, for lex comparison against a candidate.
std::vector<Mask> permuted_sorted(const std::vector<Mask>& ms,
                                  const std::vector<int>& perm) {
    std::vector<Mask> out;
    out.reserve(ms.size());
    for (Mask m : ms) out.push_back(apply_permutation(m, perm));
    std::sort(out.begin(), out.end());
    return out;
}

// Heuristic relabeling: sort elements by their per-level membership counts.
std::vector<int> refinement_order(const Family& fam) {
    int n = fam.n();
    std::vector<std::vector<int>> sig(n, std::vector<int>(n + 1, 0));
    for (Mask m : fam.members()) {
        int sz = popcount(m);
        for (int j = 0; j < n; ++j)
            if (m & (Mask{1} << j)) sig[j][sz]++;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sig[a] > sig[b]; });
    // order[k] is the old label that becomes new label k
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k) perm[order[k]] = k;
    return perm;
}

}  // namespace

CanonicalResult canonical_form_ex(const Family& fam) {
    const int n = fam.n();
    if (n <= 8) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<Mask> best = fam.members();
        do {
            std::vector<Mask> cand = permuted_sorted(fam.members(), perm);
            if (cand < best) best = std::move(cand);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return {Family(n, std::move(best)), true};
    }
    return {apply_permutation(fam, refinement_order(fam)), false};
}

Family canonical_form(const Family& fam) { return canonical_form_ex(fam).family; }

bool is_canonical(const Family& fam) {
    const int n = fam.n();
    if (n > 8) return canonical_form(fam) == fam;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    const auto& ms = fam.members();
    do {
        if (permuted_sorted(ms, perm) < ms) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

Family level_family(int n, int k) {
    check_ground_set(n);
    if (k < 0 || k > n) throw UsageError("level out of range");
    std::vector<Mask> ms;
    for (Mask m = 0; m < (Mask{1} << n); ++m)
        if (popcount(m) == k) ms.push_back(m);
    return Family(n, std::move(ms));
}

Family levels_at_most(int n, int k) {
    check_ground_set(n);
    if (k < 0 || k > n) throw UsageError("level out of range");
    std::vector<Mask> ms;
    for (Mask m = 0; m < (Mask{1} << n); ++m)
        if (popcount(m) <= k) ms.push_back(m);
    return Family(n, std::move(ms));
}

Family levels_at_least(int n, int k) {
    check_ground_set(n);
    if (k < 0 || k > n) throw UsageError("level out of range");
    std::vector<Mask> ms;
    for (Mask m = 0; m < (Mask{1} << n); ++m)
        if (popcount(m) >= k) ms.push_back(m);
    return Family(n, std::move(ms));
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::string family_to_json(const Family& fam) {
    nlohmann::json j;
    j["n"] = fam.n();
    auto& sets = j["sets"] = nlohmann::json::array();
    for (std::size_t i = 0; i < fam.size(); ++i) sets.push_back(fam.set_elements(i));
    return j.dump();
}

Family family_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("n")) throw UsageError("family JSON missing \"n\"");
    int n = j.at("n").get<int>();
    if (j.contains("sets")) {
        std::vector<std::vector<int>> sets =
            j.at("sets").get<std::vector<std::vector<int>>>();
        return Family::from_sets(n, sets);
    }
    if (j.contains("masks")) {
        std::vector<Mask> ms;
        for (const auto& h : j.at("masks"))
            ms.push_back(static_cast<Mask>(std::stoul(h.get<std::string>(), nullptr, 16)));
        return Family(n, std::move(ms));
    }
    throw UsageError("family JSON needs \"sets\" or \"masks\"");
}

std::string set_to_string(Mask m) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int j = 0; j < kMaxGroundSet; ++j)
        if (m & (Mask{1} << j)) {
            if (!first) os << ',';
            os << (j + 1);
            first = false;
        }
    os << '}';
    return os.str();
}

std::string family_to_string(const Family& fam) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (i) os << ", ";
        os << set_to_string(fam.members()[i]);
    }
    os << '}';
    return os.str();
}

}  // namespace trf
