#include "trf/embedding.hpp"
#include "trf/poset.hpp"

namespace trf {

namespace {

Family full_cube(int m) { return levels_at_most(m, m); }

// Union of the k levels j+1 .. j+k of [n] (levels above n are empty).
Family level_band(int n, int j, int k) {
    std::vector<Mask> ms;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        int sz = popcount(m);
        if (sz > j && sz <= j + k) ms.push_back(m);
    }
    return Family(n, std::move(ms));
}

}  // namespace

int param_y(const Poset& p, int cap) {
    if (cap < 1 || cap > 12) throw UsageError("param_y cap must be in [1,12]");
    // 2^[0] = {emptyset}: contains P iff P is a single element
    if (p.size() == 1) throw UsageError("y(P) undefined for the one-element poset");
    int y = 0;
    for (int m = 1; m <= cap; ++m) {
        if (!is_p_free(full_cube(m), p)) return y;
        y = m;
    }
    throw CapExceeded(y);
}

int param_x(const Poset& p, int n) {
    check_ground_set(n);
    int x = -1;
    for (int k = 0; k <= n; ++k) {
        if (!is_p_free(levels_at_most(n, k), p)) break;
        x = k;
    }
    if (x < 0) throw UsageError("x(n,P) undefined: {emptyset} already contains P");
    return x;
}

StabilizedValue param_x_limit(const Poset& p, int n_lo, int n_hi) {
    if (n_lo < 1 || n_hi < n_lo) throw UsageError("bad n range for x(P)");
    StabilizedValue out{0, true, n_lo, n_hi};
    int prev = -1;
    for (int n = n_lo; n <= n_hi; ++n) {
        int v = param_x(p, n);
        if (prev >= 0 && v != prev) out.stabilized = false;
        prev = v;
        out.value = v;
    }
    return out;
}

BandReport param_e(const Poset& p, int j_hi, int n_hi) {
    if (n_hi < 2 || n_hi > 12 || j_hi < 0) throw UsageError("bad ranges for e(P)");
    BandReport rep{0, j_hi, n_hi};
    for (int k = 1; k <= n_hi; ++k) {
        bool all_free = true;
        for (int n = 1; n <= n_hi && all_free; ++n)
            for (int j = 0; j <= std::min(j_hi, n - 1) && all_free; ++j)
                if (!is_p_free(level_band(n, j, k), p)) all_free = false;
        if (!all_free) break;
        rep.value = k;
    }
    return rep;
}

}  // namespace trf
