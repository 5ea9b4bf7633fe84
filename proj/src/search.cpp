#include "trf/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "trf/chains.hpp"

namespace trf {

namespace {

using Clock = std::chrono::steady_clock;

void validate_budget(const SearchBudget& b) {
    if (b.time_limit_s < 0 || b.node_limit < 0 || b.workers < 1)
        throw UsageError("search budget limits must be positive");
}

struct Limiter {
    Clock::time_point deadline{};
    bool has_deadline = false;
    long long node_limit = 0;
    std::atomic<long long> nodes{0};
    std::atomic<bool> stopped{false};

    void init(const SearchBudget& b) {
        if (b.time_limit_s > 0) {
            deadline = Clock::now() +
                       std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(b.time_limit_s));
            has_deadline = true;
        }
        node_limit = b.node_limit;
    }
    bool tick() {
        long long c = nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (stopped.load(std::memory_order_relaxed)) return false;
        if (node_limit > 0 && c > node_limit) {
            stopped.store(true);
            return false;
        }
        if (has_deadline && (c & 1023) == 0 && Clock::now() > deadline) {
            stopped.store(true);
            return false;
        }
        return true;
    }
    bool ok() const { return !stopped.load(std::memory_order_relaxed); }
};

std::vector<std::vector<int>> permutations_of(int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<int> transposition(int n, int a, int b) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[a], perm[b]);
    return perm;
}

// table[mask] = image of mask under perm
std::vector<Mask> perm_table(int n, const std::vector<int>& perm) {
    std::vector<Mask> t(std::size_t{1} << n);
    for (Mask m = 0; m < (Mask{1} << n); ++m) t[m] = apply_permutation(m, perm);
    return t;
}

enum class Mode { La, Tr, TrL };

struct SharedCtx {
    int n = 0;
    const Poset* P = nullptr;
    Mode mode = Mode::La;
    int l = 0;     // TrL only
    int lmax = 0;  // deepest trace size checked incrementally

    std::vector<Mask> order;  // exploration order (rank-ascending)
    std::vector<int> rank;    // rank[mask]

    // symmetry: permutation tables (identity excluded). Rejection against
    // any subset of S_n is sound; "exact" uses all of S_n for n <= 8,
    // "heuristic" (and exact beyond 8) uses the transpositions.
    std::vector<std::vector<Mask>> perms;

    bool chain_bound = false;  // family provably P-free at every node
    std::vector<int> chain_of;
    int nchains = 0;
    int chain_cap = 0;

    long long stop_cap = -1;  // proven upper bound; best == cap ends the search
    std::vector<long long> tr_cache;  // tr_cache[k] = Tr(k,P), -1 unknown

    bool shuffle = false;
    std::uint64_t seed = 0;

    Limiter lim;
    std::atomic<long long> best{0};
    std::mutex mu;
    std::vector<Mask> best_fam;
    std::vector<std::string> bounds_used;
};

struct LState {
    Mask L = 0;
    std::vector<int> bits;
    std::vector<std::uint16_t> cnt;  // members hitting each trace of L
    std::vector<Mask> traces;        // distinct traces, unsorted

    int compress(Mask t) const {
        int idx = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if ((t >> bits[i]) & 1u) idx |= 1 << i;
        return idx;
    }
};

struct Worker {
    SharedCtx* C;
    std::vector<LState> ls;
    std::vector<Mask> cur;  // rank-ascending along the DFS path
    std::vector<int> chain_scratch;
    std::mt19937_64 rng;

    explicit Worker(SharedCtx* ctx, std::uint64_t salt) : C(ctx) {
        if (C->mode != Mode::La) {
            int lo = (C->mode == Mode::TrL) ? C->l : 1;
            int hi = (C->mode == Mode::TrL) ? C->l : C->lmax;
            for (Mask L = 1; L < (Mask{1} << C->n); ++L) {
                int sz = popcount(L);
                if (sz < lo || sz > hi) continue;
                LState s;
                s.L = L;
                for (int b = 0; b < C->n; ++b)
                    if ((L >> b) & 1u) s.bits.push_back(b);
                s.cnt.assign(std::size_t{1} << sz, 0);
                ls.push_back(std::move(s));
            }
        }
        chain_scratch.assign(std::max(1, C->nchains), 0);
        rng.seed(C->seed * 0x9e3779b97f4a7c15ull + salt + 1);
    }

    bool can_add(Mask m) {
        if (C->mode == Mode::La) {
            std::vector<Mask> ms = cur;
            ms.push_back(m);
            return !find_copy_using(Family(C->n, std::move(ms)), *C->P, m);
        }
        for (const LState& s : ls) {
            Mask t = m & s.L;
            if (s.cnt[s.compress(t)] > 0) continue;  // trace already present
            int sz = static_cast<int>(s.bits.size());
            long long cap = (sz < static_cast<int>(C->tr_cache.size()))
                                ? C->tr_cache[sz]
                                : -1;
            if (cap >= 0 && static_cast<long long>(s.traces.size()) + 1 > cap)
                return false;
            std::vector<Mask> tf = s.traces;
            tf.push_back(t);
            if (find_copy_using(Family(C->n, std::move(tf)), *C->P, t))
                return false;
        }
        return true;
    }

    void add(Mask m) {
        cur.push_back(m);
        for (LState& s : ls) {
            Mask t = m & s.L;
            if (s.cnt[s.compress(t)]++ == 0) s.traces.push_back(t);
        }
    }

    void drop(Mask m) {
        cur.pop_back();
        for (LState& s : ls) {
            Mask t = m & s.L;
            if (--s.cnt[s.compress(t)] == 0) {
                auto it = std::find(s.traces.begin(), s.traces.end(), t);
                *it = s.traces.back();
                s.traces.pop_back();
            }
        }
    }

    // Is cur the rank-lex least member of its S_n-orbit (w.r.t. the tested
    // permutations)? Rejection is sound: the true orbit minimum survives,
    // and a minimum's every rank-prefix is again an orbit minimum.
    bool canonical() {
        std::vector<int> fr(cur.size()), pr(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) fr[i] = C->rank[cur[i]];
        for (const auto& t : C->perms) {
            for (std::size_t i = 0; i < cur.size(); ++i)
                pr[i] = C->rank[t[cur[i]]];
            std::sort(pr.begin(), pr.end());
            if (std::lexicographical_compare(pr.begin(), pr.end(), fr.begin(),
                                             fr.end()))
                return false;
        }
        return true;
    }

    long long bound(const std::vector<Mask>& cands, std::size_t from) {
        long long ub =
            static_cast<long long>(cur.size()) + (cands.size() - from);
        if (!C->chain_bound) return ub;
        std::fill(chain_scratch.begin(), chain_scratch.end(), 0);
        for (Mask m : cur) chain_scratch[C->chain_of[m]]++;
        for (std::size_t i = from; i < cands.size(); ++i)
            chain_scratch[C->chain_of[cands[i]]]++;
        long long cb = 0;
        for (int c : chain_scratch) cb += std::min(c, C->chain_cap);
        return std::min(ub, cb);
    }

    void report() {
        long long sz = static_cast<long long>(cur.size());
        if (sz <= C->best.load(std::memory_order_relaxed)) return;
        std::lock_guard<std::mutex> lk(C->mu);
        if (sz > C->best.load(std::memory_order_relaxed)) {
            C->best.store(sz);
            C->best_fam = cur;
        }
    }

    bool done() const {
        return C->stop_cap >= 0 &&
               C->best.load(std::memory_order_relaxed) >= C->stop_cap;
    }

    void dfs(const std::vector<Mask>& cands) {
        if (!C->lim.tick()) return;
        std::vector<std::size_t> expl(cands.size());
        std::iota(expl.begin(), expl.end(), std::size_t{0});
        if (C->shuffle) std::shuffle(expl.begin(), expl.end(), rng);
        for (std::size_t pos : expl) {
            if (!C->lim.ok() || done()) return;
            Mask m = cands[pos];
            add(m);
            report();
            if (!C->perms.empty() && !canonical()) {
                drop(m);
                continue;
            }
            std::vector<Mask> cc;
            for (std::size_t j = pos + 1; j < cands.size(); ++j)
                if (can_add(cands[j])) cc.push_back(cands[j]);
            if (bound(cc, 0) > C->best.load(std::memory_order_relaxed))
                dfs(cc);
            drop(m);
        }
    }
};

void run_search(SharedCtx& C, int workers) {
    Worker probe(&C, 0);
    std::vector<Mask> roots;
    for (Mask m : C.order)
        if (probe.can_add(m)) roots.push_back(m);

    probe.report();  // empty family is always feasible
    long long root_ub = probe.bound(roots, 0);
    if (C.stop_cap < 0 || root_ub < C.stop_cap) C.stop_cap = root_ub;

    std::atomic<std::size_t> next{0};
    auto task = [&](std::uint64_t id) {
        Worker w(&C, id);
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= roots.size() || !C.lim.ok() || w.done()) break;
            Mask m = roots[i];
            w.add(m);
            w.report();
            if (C.perms.empty() || w.canonical()) {
                std::vector<Mask> cc;
                for (std::size_t j = i + 1; j < roots.size(); ++j)
                    if (w.can_add(roots[j])) cc.push_back(roots[j]);
                if (w.bound(cc, 0) > C.best.load(std::memory_order_relaxed))
                    w.dfs(cc);
            }
            w.drop(m);
        }
    };

    if (workers <= 1) {
        task(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(task, t);
        for (auto& th : pool) th.join();
    }
}

void setup_order(SharedCtx& C) {
    Mask top = full_mask(C.n);
    C.order.resize(std::size_t{top} + 1);
    std::iota(C.order.begin(), C.order.end(), Mask{0});
    if (C.mode == Mode::La) {
        // middle levels first, so the greedy descent meets the chain bound
        std::stable_sort(C.order.begin(), C.order.end(), [&](Mask a, Mask b) {
            int da = std::abs(2 * popcount(a) - C.n);
            int db = std::abs(2 * popcount(b) - C.n);
            return da != db ? da < db : a < b;
        });
    }
    // Tr / Tr_l keep colex (= numeric) order
    C.rank.assign(C.order.size(), 0);
    for (std::size_t i = 0; i < C.order.size(); ++i) C.rank[C.order[i]] = i;
}

void setup_symmetry(SharedCtx& C, SearchBudget::Symmetry sym) {
    if (sym == SearchBudget::Symmetry::Off || C.n < 2) return;
    if (sym == SearchBudget::Symmetry::Exact && C.n <= 8) {
        for (const auto& perm : permutations_of(C.n)) {
            bool ident = true;
            for (int i = 0; i < C.n; ++i)
                if (perm[i] != i) ident = false;
            if (!ident) C.perms.push_back(perm_table(C.n, perm));
        }
        C.bounds_used.push_back("canonical_prefix_exact");
    } else {
        for (int a = 0; a < C.n; ++a)
            for (int b = a + 1; b < C.n; ++b)
                C.perms.push_back(perm_table(C.n, transposition(C.n, a, b)));
        C.bounds_used.push_back("canonical_prefix_transpositions");
    }
}

void setup_chain_bound(SharedCtx& C) {
    int E = edge_count(*C.P);
    // Tr_l certifies P-freeness of every node only when l >= E(P) >= 1
    // (an antichain copy can collapse under further restriction) or l = n
    C.chain_bound = (C.mode != Mode::TrL) || (E >= 1 && C.l >= E) ||
                    (C.l == C.n);
    if (!C.chain_bound) return;
    ChainDecomposition cd = symmetric_chain_decomposition(C.n);
    C.nchains = static_cast<int>(cd.chains.size());
    C.chain_of.assign(std::size_t{1} << C.n, 0);
    for (int c = 0; c < C.nchains; ++c)
        for (Mask m : cd.chains[c]) C.chain_of[m] = c;
    C.chain_cap = C.P->size() - 1;
    C.bounds_used.push_back("erdos_chain_bound");
}

ExtremalResult solve_tr_impl(int n, const Poset& p, const SearchBudget& budget,
                             bool with_caches);

ExtremalResult finish(SharedCtx& C, const std::string& kind,
                      std::optional<int> l) {
    ExtremalResult r;
    r.kind = kind;
    r.n = C.n;
    r.l = l;
    r.poset_id = poset_canonical_id(*C.P);
    r.value = C.best.load();
    r.nodes = C.lim.nodes.load();
    r.status = C.lim.ok() ? "exact" : "lower_bound_only";
    r.witness = canonical_form(Family(C.n, C.best_fam));
    r.bounds_used = C.bounds_used;
    return r;
}

void init_ctx(SharedCtx& C, int n, const Poset& p, Mode mode, int l,
              const SearchBudget& budget) {
    check_ground_set(n);
    validate_budget(budget);
    if (n > 16) throw UsageError("search envelope: n <= 16");
    C.n = n;
    C.P = &p;
    C.mode = mode;
    C.l = l;
    int E = edge_count(p);
    // E(P) = 0 (antichain posets) gets no trace-size reduction
    C.lmax = (mode == Mode::Tr) ? (E == 0 ? n : std::min(n, E)) : l;
    setup_order(C);
    setup_symmetry(C, budget.symmetry);
    setup_chain_bound(C);
    C.shuffle = budget.seed != 0;
    C.seed = budget.seed;
    C.lim.init(budget);
    C.bounds_used.push_back("candidate_count_bound");
}

}  // namespace

ExtremalResult solve_la(int n, const Poset& p, const SearchBudget& budget) {
    SharedCtx C;
    init_ctx(C, n, p, Mode::La, 0, budget);
    run_search(C, budget.workers);
    return finish(C, "la", std::nullopt);
}

namespace {

ExtremalResult solve_tr_impl(int n, const Poset& p, const SearchBudget& budget,
                             bool with_caches) {
    SharedCtx C;
    init_ctx(C, n, p, Mode::Tr, 0, budget);
    try {
        int y = param_y(p, std::min(8, n));
        long long cap = 0;
        for (int i = 0; i <= y; ++i) cap += binomial(n, i);
        C.stop_cap = cap;
        C.bounds_used.push_back("sauer_cap");
    } catch (const CapExceeded&) {
        // 2^[n] itself may be P-free; no useful cap
    }
    if (with_caches) {
        C.tr_cache.assign(n + 1, -1);
        bool any = false;
        for (int k = 2; k <= std::min(C.lmax, n - 1); ++k) {
            ExtremalResult sub = solve_tr_impl(k, p, SearchBudget{}, k > 2);
            if (sub.exact()) {
                C.tr_cache[k] = sub.value;
                any = true;
            }
        }
        if (any) C.bounds_used.push_back("tr_cache_cut");
    }
    run_search(C, budget.workers);
    return finish(C, "tr", std::nullopt);
}

}  // namespace

ExtremalResult solve_tr(int n, const Poset& p, const SearchBudget& budget) {
    return solve_tr_impl(n, p, budget, n >= 3);
}

ExtremalResult solve_tr_l(int n, int l, const Poset& p,
                          const SearchBudget& budget) {
    if (l < 1 || l > n) throw UsageError("solve_tr_l needs 1 <= l <= n");
    SharedCtx C;
    init_ctx(C, n, p, Mode::TrL, l, budget);
    run_search(C, budget.workers);
    return finish(C, "tr_l", l);
}

ExtremalResult solve_la_closed(int n, const Poset& p, bool downward,
                               const SearchBudget& budget) {
    check_ground_set(n);
    validate_budget(budget);
    if (n > 6)
        throw UsageError("downset enumeration envelope: n <= 6");
    if (!downward) {
        ExtremalResult r = solve_la_closed(n, dual(p), true, budget);
        r.kind = "la_u";
        r.poset_id = poset_canonical_id(p);
        r.witness = canonical_form(complement_family(r.witness));
        return r;
    }

    Limiter lim;
    lim.init(budget);
    Mask top = full_mask(n);
    std::vector<char> in(std::size_t{top} + 1, 0);
    std::vector<Mask> cov, chosen;
    long long best = 0;
    std::vector<Mask> best_fam;

    auto rec = [&](auto&& self, Mask start) -> void {
        if (!lim.tick()) return;
        if (static_cast<long long>(cov.size()) > best) {
            best = static_cast<long long>(cov.size());
            best_fam = cov;
        }
        for (Mask m = start; m <= top; ++m) {
            if (!lim.ok()) return;
            if (in[m]) continue;  // below a chosen maximal set
            bool above = false;
            for (Mask c : chosen)
                if ((c & m) == c) {
                    above = true;
                    break;
                }
            if (above) continue;
            std::vector<Mask> fresh;
            for (Mask s = m;; s = (s - 1) & m) {
                if (!in[s]) {
                    in[s] = 1;
                    cov.push_back(s);
                    fresh.push_back(s);
                }
                if (s == 0) break;
            }
            bool free = true;
            {
                Family f(n, cov);
                for (Mask x : fresh)
                    if (find_copy_using(f, p, x)) {
                        free = false;
                        break;
                    }
            }
            if (free) {
                chosen.push_back(m);
                self(self, m + 1);
                chosen.pop_back();
            }
            for (Mask s : fresh) in[s] = 0;
            cov.resize(cov.size() - fresh.size());
        }
    };
    rec(rec, 0);

    ExtremalResult r;
    r.kind = "la_d";
    r.n = n;
    r.poset_id = poset_canonical_id(p);
    r.value = best;
    r.nodes = lim.nodes.load();
    r.status = lim.ok() ? "exact" : "lower_bound_only";
    r.witness = canonical_form(Family(n, best_fam));
    r.bounds_used = {"downset_antichain_enumeration"};
    return r;
}

void enumerate_downsets(int n, std::optional<int> exact_size,
                        bool up_to_symmetry,
                        const std::function<bool(const Family&)>& visit) {
    check_ground_set(n);
    if (n > 7 || (n == 7 && !exact_size))
        throw UsageError("downset enumeration envelope: n <= 6 (7 filtered)");
    Mask top = full_mask(n);
    std::vector<char> in(std::size_t{top} + 1, 0);
    std::vector<Mask> cov, chosen;
    bool stop = false;

    auto emit = [&]() -> bool {
        if (exact_size && static_cast<int>(cov.size()) != *exact_size)
            return true;
        Family f(n, cov);
        if (up_to_symmetry && !is_canonical(f)) return true;
        return visit(f);
    };

    auto rec = [&](auto&& self, Mask start) -> void {
        if (stop) return;
        if (!emit()) {
            stop = true;
            return;
        }
        for (Mask m = start; m <= top && !stop; ++m) {
            if (in[m]) continue;
            bool above = false;
            for (Mask c : chosen)
                if ((c & m) == c) {
                    above = true;
                    break;
                }
            if (above) continue;
            std::vector<Mask> fresh;
            for (Mask s = m;; s = (s - 1) & m) {
                if (!in[s]) {
                    in[s] = 1;
                    cov.push_back(s);
                    fresh.push_back(s);
                }
                if (s == 0) break;
            }
            if (!exact_size || static_cast<int>(cov.size()) <= *exact_size) {
                chosen.push_back(m);
                self(self, m + 1);
                chosen.pop_back();
            }
            for (Mask s : fresh) in[s] = 0;
            cov.resize(cov.size() - fresh.size());
        }
    };
    rec(rec, 0);
}

long long count_downsets_direct(int n) {
    check_ground_set(n);
    if (n > 6) throw UsageError("direct downset counting envelope: n <= 6");
    Mask end = full_mask(n) + 1;  // one past the last mask
    std::vector<char> in(end, 0);
    long long count = 0;

    // Scan masks in numeric order; a mask missing a one-bit-deleted subset
    // is forced out. At each admissible q, recurse for the exclude branch
    // and keep q in the running frame, so every frame end is one downset.
    std::vector<Mask> included;
    auto rec = [&](auto&& self, Mask pos) -> void {
        std::size_t mark = included.size();
        for (Mask q = pos; q < end; ++q) {
            bool can = true;
            Mask rest = q;
            while (rest) {
                Mask bit = rest & (0u - rest);
                rest ^= bit;
                if (!in[q ^ bit]) {
                    can = false;
                    break;
                }
            }
            if (!can) continue;
            self(self, q + 1);  // exclude q
            in[q] = 1;          // include q, keep scanning in this frame
            included.push_back(q);
        }
        ++count;
        while (included.size() > mark) {
            in[included.back()] = 0;
            included.pop_back();
        }
    };
    rec(rec, 0);
    return count;
}

long long count_downsets_antichain(int n) {
    check_ground_set(n);
    if (n > 6) throw UsageError("antichain counting envelope: n <= 6");
    int nm = 1 << n;
    std::vector<std::uint64_t> comp(nm, 0);  // comparable-or-equal masks
    for (int a = 0; a < nm; ++a)
        for (int b = 0; b < nm; ++b)
            if ((a & b) == a || (a & b) == b) comp[a] |= std::uint64_t{1} << b;
    long long count = 0;
    auto rec = [&](auto&& self, std::uint64_t avail) -> void {
        ++count;  // the antichain chosen so far = one downset
        while (avail) {
            int q = std::countr_zero(avail);
            avail &= avail - 1;  // later candidates only (ascending)
            self(self, avail & ~comp[q]);
        }
    };
    std::uint64_t all = (nm == 64) ? ~std::uint64_t{0}
                                   : ((std::uint64_t{1} << nm) - 1);
    rec(rec, all);
    return count;
}

long long orbit_size(const Family& fam) {
    if (fam.n() > 8) throw UsageError("orbit_size envelope: n <= 8");
    std::set<std::vector<Mask>> images;
    for (const auto& perm : permutations_of(fam.n()))
        images.insert(apply_permutation(fam, perm).members());
    return static_cast<long long>(images.size());
}

ArrowResult arrow(int n, int m, int k, int l, const SearchBudget& budget) {
    check_ground_set(n);
    validate_budget(budget);
    if (n > 12) throw UsageError("arrow envelope: n <= 12");
    if (k < 1 || k > n || m < 1 || l < 1) throw UsageError("arrow parameters");

    ArrowResult r;
    long long total = 1LL << n;
    if (m > total) {  // no family of size m exists: vacuously true
        r.holds = true;
        r.vacuous = true;
        return r;
    }
    if (l > (1 << k)) {  // no k-set trace can reach l
        std::vector<Mask> ms;
        for (Mask q = 0; q < static_cast<Mask>(m); ++q) ms.push_back(q);
        r.holds = false;
        r.counterexample = canonical_form(Family(n, ms));
        return r;
    }

    Limiter lim;
    lim.init(budget);

    // Theorem-2.3 reduction: decide over downward closed families. A
    // member of size >= k puts a full k-cube below it, so counterexample
    // members have at most k-1 elements.
    std::vector<Mask> elig;
    for (Mask q = 0; q < (Mask{1} << n); ++q)
        if (popcount(q) <= k - 1) elig.push_back(q);

    std::vector<Mask> xs;
    for (Mask x = 0; x < (Mask{1} << n); ++x)
        if (popcount(x) == k) xs.push_back(x);
    std::vector<std::vector<int>> xlist(elig.size());
    for (std::size_t i = 0; i < elig.size(); ++i)
        for (std::size_t xi = 0; xi < xs.size(); ++xi)
            if ((elig[i] & xs[xi]) == elig[i])
                xlist[i].push_back(static_cast<int>(xi));

    std::vector<int> cnt(xs.size(), 0);
    std::vector<char> in(std::size_t{1} << n, 0);
    std::vector<Mask> cur;
    bool found = false;
    std::vector<Mask> cex;

    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (found || !lim.ok()) return;
        if (static_cast<int>(cur.size()) == m) {
            found = true;
            cex = cur;
            return;
        }
        if (i == elig.size()) return;
        if (static_cast<long long>(cur.size()) +
                static_cast<long long>(elig.size() - i) <
            m)
            return;  // not enough eligible masks left
        if (!lim.tick()) return;
        Mask q = elig[i];
        bool can = true;
        if (popcount(q) == 1) {
            // closure needs the empty set; support symmetry makes the
            // singletons a prefix of [n]
            int b = std::countr_zero(q);
            can = in[0] && ((b == 0) || in[Mask{1} << (b - 1)]);
        } else if (q != 0) {
            Mask rest = q;
            while (rest) {
                Mask bit = rest & (0u - rest);
                rest ^= bit;
                if (!in[q ^ bit]) {
                    can = false;
                    break;
                }
            }
        }
        if (can) {
            bool room = true;
            for (int xi : xlist[i])
                if (++cnt[xi] >= l) room = false;
            if (room) {  // counterexamples keep every k-set trace below l
                in[q] = 1;
                cur.push_back(q);
                self(self, i + 1);
                cur.pop_back();
                in[q] = 0;
            }
            for (int xi : xlist[i]) --cnt[xi];
            if (found) return;
        }
        self(self, i + 1);
    };
    rec(rec, 0);

    r.nodes = lim.nodes.load();
    if (found) {
        r.holds = false;
        r.counterexample = canonical_form(Family(n, cex));
    } else {
        r.holds = true;
        r.budget_exhausted = !lim.ok();
    }
    return r;
}

ArrowResult sauer_arrow_suite(int n, int k) {
    if (k < 1 || k > n) throw UsageError("sauer_arrow_suite needs 1 <= k <= n");
    long long m = 1;
    for (int i = 0; i < k; ++i) m += binomial(n, i);
    return arrow(n, static_cast<int>(m), k, 1 << k);
}

}  // namespace trf
