#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trf/family.hpp"

namespace trf {

// Finite strict partial order on elements 0..p-1. At most 32 elements
// (the P_m gadget needs 16 at m=2; m >= 3 is out of reach anyway).
class Poset {
  public:
    explicit Poset(int p);
    // `relations` lists (i,j) pairs meaning i < j; the transitive closure
    // is taken and the poset axioms re-checked.
    Poset(int p, const std::vector<std::pair<int, int>>& relations);

    int size() const { return p_; }
    bool less(int i, int j) const { return (above_[i] >> j) & 1u; }
    std::uint32_t strictly_above(int i) const { return above_[i]; }
    std::uint32_t strictly_below(int i) const { return below_[i]; }

    bool operator==(const Poset& o) const {
        return p_ == o.p_ && above_ == o.above_;
    }

  private:
    void close_and_check();
    int p_;
    std::vector<std::uint32_t> above_;  // above_[i] bit j: i < j
    std::vector<std::uint32_t> below_;
};

struct HasseDiagram {
    std::vector<std::pair<int, int>> edges;  // (i, j): i covered by j
};

HasseDiagram hasse(const Poset& p);
int edge_count(const Poset& p);
int height(const Poset& p);  // longest chain, counted in elements
Poset dual(const Poset& p);
bool has_unique_max(const Poset& p);
bool is_tree_poset(const Poset& p);
bool isomorphic(const Poset& a, const Poset& b);

// Named constructors.
Poset chain(int k);
Poset vee(int s);    // K_{1,s}
Poset wedge(int r);  // K_{r,1}
Poset butterfly();   // K_{2,2}
Poset diamond();
Poset k_rs(int r, int s);
Poset k_r1s(int r, int s);
Poset p_m_gadget(int m);
Poset tree_from_hasse(int p, const std::vector<std::pair<int, int>>& covers);

// Replace the unique maximum of a tree poset by an antichain of size k.
Poset t_power(const Poset& t, int k);
// Recursive r-fold blow-up of a unique-max tree poset (height preserved).
Poset t_otimes(const Poset& t, int r);

// Build a poset from a CLI name ("butterfly", "diamond", "chain", "vee",
// "wedge", "k_rs", "k_r1s", "p_m", "tree").
Poset build_named(const std::string& name,
                  const std::vector<long long>& params);

// Largest m <= cap with 2^[m] P-free. Throws CapExceeded when 2^[cap]
// is still P-free, carrying the certified lower bound.
struct CapExceeded : std::runtime_error {
    int lower_bound;
    explicit CapExceeded(int lb)
        : std::runtime_error("value not certified within cap; y >= " +
                             std::to_string(lb)),
          lower_bound(lb) {}
};
int param_y(const Poset& p, int cap = 8);

// Largest x with C([n], <= x) P-free.
int param_x(const Poset& p, int n);

struct StabilizedValue {
    int value;        // value at the top of the tested range
    bool stabilized;  // constant over the whole tested range
    int n_lo, n_hi;   // tested envelope
};
StabilizedValue param_x_limit(const Poset& p, int n_lo, int n_hi);

// Largest k such that every tested band of k consecutive levels is
// P-free; a finite certificate over the reported envelope, not a proof.
struct BandReport {
    int value;
    int j_hi, n_hi;  // tested j in [0, j_hi], n in [k+1, n_hi]
};
BandReport param_e(const Poset& p, int j_hi, int n_hi);

// JSON interchange: {"name":..., "params": [...]} or {"p":int, "lt":[[i,j],...]}.
std::string poset_to_json(const Poset& p);
Poset poset_from_json(const std::string& text);

// Canonical identifier: canonical form of the relation under element
// permutation, hashed. Exhaustive for p <= 8, refinement heuristic above.
std::string poset_canonical_id(const Poset& p);

}  // namespace trf
